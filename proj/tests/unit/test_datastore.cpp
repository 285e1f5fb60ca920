#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

#include "botscore/datastore.hpp"
#include "botscore/errors.hpp"
#include "support.hpp"

using namespace botscore;

namespace {

ScoreStoreEntry entry(const std::string& name, double overall, Timestamp at = 1000) {
    ScoreStoreEntry e;
    e.account_key = name;
    e.scores.values.fill(overall);
    e.model_version = "m1";
    e.timestamp = at;
    return e;
}

}  // namespace

TEST_CASE("record and read latest") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    CHECK(store.empty());
    CHECK_FALSE(store.read_latest("bob"));
    store.record(entry("Bob", 0.2, 10));
    store.record(entry("bob", 0.7, 20));
    auto got = store.read_latest("BOB");
    REQUIRE(got);
    CHECK(got->account_key == "bob");
    CHECK(got->scores.overall() == 0.7);
    CHECK(store.record_count() == 2);
    CHECK(store.unique_accounts() == 1);
}

TEST_CASE("timestamps never go backwards") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    store.record(entry("a", 0.1, 500));
    store.record(entry("b", 0.1, 100));
    CHECK(store.read_latest("b")->timestamp == 500);
}

TEST_CASE("cumulative fraction example") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    std::vector<double> v{0.2, 0.4, 0.4, 0.9};
    for (std::size_t i = 0; i < v.size(); ++i) store.record(entry("u" + std::to_string(i), v[i]));
    CHECK(store.cumulative_fraction(0.4) == 0.75);
    CHECK(store.cumulative_fraction(0.1) == 0.0);
    CHECK(store.cumulative_fraction(1.0) == 1.0);
}

TEST_CASE("unique accounts match an independent count") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    CounterRng rng(10000, 0);
    std::set<std::string> seen;
    std::map<std::string, double> latest;
    for (int i = 0; i < 10000; ++i) {
        std::string name = "user" + std::to_string(rng.uniform(3000));
        if (rng.uniform(2)) std::transform(name.begin(), name.end(), name.begin(), ::toupper);
        double score = rng.unit();
        store.record(entry(name, score, i));
        std::string key = name;
        std::transform(key.begin(), key.end(), key.begin(), ::tolower);
        seen.insert(key);
        latest[key] = score;
    }
    CHECK(store.unique_accounts() == seen.size());
    auto scores = store.unique_account_scores();
    CHECK(scores == latest);

    ScoreStore reopened(dir / "s.log");
    CHECK(reopened.unique_accounts() == seen.size());
    CHECK(reopened.record_count() == 10000);
}

TEST_CASE("cdf of uniform scores") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    CHECK_THROWS_AS(store.score_cdf(10), EmptyStore);
    CounterRng rng(3, 0);
    for (int i = 0; i < 5000; ++i) store.record(entry("a" + std::to_string(i), rng.unit()));
    auto cdf = store.score_cdf(20);
    REQUIRE(cdf.size() == 21);
    for (std::size_t i = 0; i < cdf.size(); ++i) {
        CHECK(cdf[i].threshold == doctest::Approx(i / 20.0));
        CHECK(std::abs(cdf[i].fraction - cdf[i].threshold) <= 0.05);
        if (i) CHECK(cdf[i].fraction >= cdf[i - 1].fraction);
    }
    CHECK(cdf.back().fraction == 1.0);
}

TEST_CASE("torn tail recovers the longest valid prefix") {
    testing::TempDir dir;
    auto path = dir / "s.log";
    std::vector<std::uintmax_t> boundaries;
    {
        ScoreStore store(path);
        boundaries.push_back(std::filesystem::file_size(path));
        for (int i = 0; i < 5; ++i) {
            store.record(entry("u" + std::to_string(i), 0.1 * i, 100 + i));
            boundaries.push_back(std::filesystem::file_size(path));
        }
    }
    std::string full = testing::slurp(path);
    for (std::size_t cut = boundaries.front(); cut <= full.size(); ++cut) {
        auto torn = dir / "torn.log";
        std::ofstream(torn, std::ios::binary | std::ios::trunc) << full.substr(0, cut);
        ScoreStore store(torn);
        std::size_t complete = 0;
        while (complete + 1 < boundaries.size() && boundaries[complete + 1] <= cut) ++complete;
        CHECK(store.record_count() == complete);
        CHECK(store.recovered_bytes() == cut - boundaries[complete]);
        CHECK(std::filesystem::file_size(torn) == boundaries[complete]);
        store.record(entry("after", 0.5, 999));
        ScoreStore again(torn);
        CHECK(again.record_count() == complete + 1);
    }
}

TEST_CASE("corrupt record checksum truncates from that record") {
    testing::TempDir dir;
    auto path = dir / "s.log";
    std::uintmax_t first_end = 0;
    {
        ScoreStore store(path);
        store.record(entry("a", 0.1));
        first_end = std::filesystem::file_size(path);
        store.record(entry("b", 0.2));
    }
    std::string bytes = testing::slurp(path);
    bytes[bytes.size() - 3] ^= 0x5a;
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
    ScoreStore store(path);
    CHECK(store.record_count() == 1);
    CHECK(std::filesystem::file_size(path) == first_end);
}

TEST_CASE("bad header is a storage error") {
    testing::TempDir dir;
    std::ofstream(dir / "bad.log", std::ios::binary) << "NOPE0000";
    CHECK_THROWS_AS(ScoreStore(dir / "bad.log"), StorageError);
}

TEST_CASE("compaction keeps the latest entry per account") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    for (int i = 0; i < 30; ++i) store.record(entry("u" + std::to_string(i % 7), i / 30.0, i));
    auto before = store.unique_account_scores();
    store.compact();
    CHECK(store.record_count() == 7);
    CHECK(store.unique_account_scores() == before);
    store.record(entry("u0", 0.99, 100));
    ScoreStore reopened(dir / "s.log");
    CHECK(reopened.record_count() == 8);
    CHECK(reopened.read_latest("u0")->scores.overall() == 0.99);
}

TEST_CASE("stored entries carry only account, scores, model and time") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    store.record(entry("Alice", 0.3, 42));
    auto all = store.entries();
    REQUIRE(all.size() == 1);
    CHECK(all[0].account_key == "alice");
    CHECK(all[0].model_version == "m1");
    CHECK(all[0].timestamp == 42);
}

TEST_CASE("concurrent appends are all kept") {
    testing::TempDir dir;
    ScoreStore store(dir / "s.log");
    std::vector<std::jthread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&, t] {
            for (int i = 0; i < 100; ++i) store.record(entry("t" + std::to_string(t) + "_" + std::to_string(i), 0.5));
        });
    workers.clear();
    CHECK(store.record_count() == 400);
    ScoreStore reopened(dir / "s.log");
    CHECK(reopened.unique_accounts() == 400);
}
