#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <unistd.h>

#include "botscore/account.hpp"
#include "botscore/forest.hpp"
#include "botscore/lexicons.hpp"

namespace testing {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(BOTSCORE_FIXTURE_DIR) / name;
}

inline std::filesystem::path test_file(const std::string& name) {
    return std::filesystem::path(BOTSCORE_TEST_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const botscore::Lexicons& lexicons() {
    static const botscore::Lexicons lex = botscore::load_lexicons(botscore::default_lexicon_dir());
    return lex;
}

inline botscore::AccountSnapshot load_fixture(const std::string& name) {
    return botscore::parse_snapshot(slurp(fixture(name)));
}

// Captured 2015-12-11T12:00:00Z, account created one year earlier.
inline nlohmann::json minimal_snapshot_json() {
    return {{"captured_at", "2015-12-11T12:00:00Z"},
            {"user",
             {{"user_id", "u1"},
              {"screen_name", "someone"},
              {"created_at", "2014-12-11T12:00:00Z"},
              {"followers_count", 10},
              {"friends_count", 20},
              {"statuses_count", 30}}},
            {"tweets", nlohmann::json::array()},
            {"mentions", nlohmann::json::array()}};
}

inline botscore::AccountSnapshot minimal_snapshot() {
    return botscore::snapshot_from_json(minimal_snapshot_json());
}

inline botscore::Tweet own_tweet(const botscore::AccountSnapshot& s, const std::string& id, botscore::Timestamp at,
                                 std::string text = "hello world") {
    botscore::Tweet t;
    t.tweet_id = id;
    t.author_id = s.user.user_id;
    t.created_at = at;
    t.text = std::move(text);
    return t;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("botscore_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace testing

#include "botscore/features.hpp"
#include "botscore/synth.hpp"

namespace testing {

struct Featurized {
    botscore::LabeledCorpus corpus;
    std::vector<botscore::FeatureVector> x;
};

// Seeded synthetic corpus with extracted features, built once per (bots, humans).
inline const Featurized& small_featurized(int bots = 60, int humans = 60) {
    static std::map<std::pair<int, int>, Featurized> cache;
    auto key = std::make_pair(bots, humans);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    botscore::SynthParams p;
    p.seed = 42;
    p.bots = bots;
    p.humans = humans;
    Featurized f;
    f.corpus = botscore::generate_corpus(p);
    for (const auto& a : f.corpus.accounts)
        f.x.push_back(botscore::extract_all(a, botscore::default_registry(), lexicons()));
    return cache.emplace(key, std::move(f)).first->second;
}

}  // namespace testing
