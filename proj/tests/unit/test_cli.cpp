#include <doctest.h>

#include <sstream>

#include "botscore/cli.hpp"
#include "botscore/features.hpp"
#include "support.hpp"

using namespace botscore;

namespace {

struct Result {
    int code;
    std::string out, err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("synth, train, crossval and score through the cli") {
    testing::TempDir dir;
    auto corpus = (dir / "corpus").string(), model = (dir / "model.bin").string();
    auto s = run({"synth", "--seed", "3", "--bots", "40", "--humans", "40", "--out", corpus});
    REQUIRE(s.code == cli::kExitOk);
    CHECK(s.json()["seed"] == 3);
    auto digest = s.json()["dataset_digest"];

    auto t = run({"train", "--corpus", corpus, "--model", model, "--trees", "20", "--seed", "4"});
    REQUIRE(t.code == cli::kExitOk);
    CHECK(t.json()["dataset_digest"] == digest);
    CHECK(std::filesystem::exists(model));

    auto cv = run({"crossval", "--corpus", corpus, "--k", "10", "--trees", "10", "--seed", "5", "--roc-csv",
                   (dir / "roc.csv").string()});
    REQUIRE(cv.code == cli::kExitOk);
    CHECK(cv.json()["fold_auc"].size() == 10);
    CHECK(testing::slurp(dir / "roc.csv").rfind("fpr,tpr", 0) == 0);

    auto sc = run({"score", "--model", model, "--snapshot", testing::fixture("alice.json").string()});
    REQUIRE(sc.code == cli::kExitOk);
    CHECK(sc.json()["scores"].size() == 7);
    CHECK(sc.json()["seed"] == 4);
    auto by_name = run({"score", "--model", model, "--name", "alice", "--fixtures", BOTSCORE_FIXTURE_DIR});
    CHECK(by_name.json()["scores"] == sc.json()["scores"]);

    auto text = run({"score", "--model", model, "--snapshot", testing::fixture("alice.json").string(), "--format",
                     "text"});
    CHECK(text.code == cli::kExitOk);
    CHECK(text.out.find("overall") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    testing::TempDir dir;
    auto missing = (dir / "missing.json").string();
    auto r = run({"features", "--snapshot", missing});
    CHECK(r.code == cli::kExitData);
    CHECK(r.err.find("missing.json") != std::string::npos);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"synth"}).code == cli::kExitUsage);
    CHECK(run({"synth", "--out", (dir / "c").string(), "--crossover", "2"}).code != cli::kExitOk);
    CHECK(run({"score", "--model", (dir / "none.bin").string(), "--snapshot", testing::fixture("alice.json").string()})
              .code == cli::kExitData);
    CHECK(run({"stats", "cdf", "--store", (dir / "empty.log").string()}).code == cli::kExitData);
}

TEST_CASE("features output follows the manifest") {
    auto r = run({"features", "--snapshot", testing::fixture("acct_mixed.json").string()});
    REQUIRE(r.code == cli::kExitOk);
    auto j = r.json();
    CHECK(j["registry_digest"] == default_registry().digest());
    REQUIRE(j["features"].size() == default_registry().size());
    for (std::size_t i = 0; i < default_registry().size(); ++i)
        CHECK(j["features"][i]["name"] == default_registry().at(i).name);

    auto m = run({"manifest"});
    REQUIRE(m.code == cli::kExitOk);
    CHECK(m.json()["digest"] == default_registry().digest());
}
