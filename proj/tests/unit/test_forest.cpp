#include <doctest.h>

#include <cmath>
#include <numeric>
#include <optional>

#include "botscore/errors.hpp"
#include "botscore/forest.hpp"
#include "botscore/suite.hpp"
#include "support.hpp"

using namespace botscore;

namespace {

std::vector<FeatureVector> vectors(const std::vector<std::vector<double>>& rows, const std::string& digest = "toy") {
    std::vector<FeatureVector> out;
    for (const auto& r : rows) out.push_back({digest, r});
    return out;
}

double training_accuracy(const ForestModel& m, const std::vector<FeatureVector>& x, const std::vector<int>& y) {
    double ok = 0;
    for (std::size_t i = 0; i < x.size(); ++i) ok += ((predict_score(m, x[i]) >= 0.5 ? 1 : 0) == y[i]) ? 1 : 0;
    return ok / static_cast<double>(x.size());
}

// Exhaustive (feature, midpoint) scan with its own Gini arithmetic.
std::optional<Split> brute_force_split(const Matrix& x, const std::vector<int>& y, int min_leaf) {
    auto gini = [](double p, double n) {
        double t = p + n;
        return 1.0 - (p / t) * (p / t) - (n / t) * (n / t);
    };
    double total_pos = 0;
    for (int v : y) total_pos += v;
    double n = static_cast<double>(y.size());
    double parent = gini(total_pos, n - total_pos);
    std::optional<Split> best;
    for (std::size_t f = 0; f < x.cols; ++f) {
        std::vector<double> values;
        for (std::size_t r = 0; r < x.rows; ++r) values.push_back(x.at(r, f));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t k = 0; k + 1 < values.size(); ++k) {
            double thr = values[k] + (values[k + 1] - values[k]) / 2.0;
            double lp = 0, ln = 0, rp = 0, rn = 0;
            for (std::size_t r = 0; r < x.rows; ++r) {
                bool left = x.at(r, f) <= thr;
                (left ? (y[r] ? lp : ln) : (y[r] ? rp : rn)) += 1;
            }
            if (lp + ln < min_leaf || rp + rn < min_leaf) continue;
            double dec = parent - (lp + ln) / n * gini(lp, ln) - (rp + rn) / n * gini(rp, rn);
            if (dec <= 1e-12) continue;
            if (!best || dec > best->decrease + 1e-12) best = Split{f, thr, dec};
        }
    }
    return best;
}

}  // namespace

TEST_CASE("gini impurity") {
    CHECK(gini_impurity(10, 0) == 0.0);
    CHECK(gini_impurity(5, 5) == 0.5);
    CHECK(gini_impurity(3, 1) == 0.375);
    CHECK_THROWS_AS(gini_impurity(0, 0), EmptyNode);
}

TEST_CASE("best_split examples") {
    Matrix x{4, 1, {1, 2, 3, 4}};
    std::vector<int> y{0, 0, 1, 1};
    std::vector<std::size_t> rows{0, 1, 2, 3}, cand{0};
    auto s = best_split(x, y, rows, cand);
    REQUIRE(s);
    CHECK(s->threshold == 2.5);
    CHECK(s->decrease == doctest::Approx(0.5));

    std::vector<int> same{1, 1, 1, 1};
    CHECK_FALSE(best_split(x, same, rows, cand));

    Matrix dup{2, 2, {1, 7, 1, 7}};
    std::vector<int> y2{0, 1};
    std::vector<std::size_t> r2{0, 1}, c2{0, 1};
    CHECK_FALSE(best_split(dup, y2, r2, c2));
}

TEST_CASE("best_split matches brute force on random instances") {
    CounterRng rng(77, 0);
    for (int round = 0; round < 400; ++round) {
        std::size_t n = 2 + rng.uniform(49), d = 1 + rng.uniform(5);
        Matrix x{n, d, {}};
        int levels = 2 + static_cast<int>(rng.uniform(8));
        for (std::size_t i = 0; i < n * d; ++i) x.data.push_back(static_cast<double>(rng.uniform(levels)) * 0.5);
        std::vector<int> y;
        for (std::size_t i = 0; i < n; ++i) y.push_back(static_cast<int>(rng.uniform(2)));
        int min_leaf = 1 + static_cast<int>(rng.uniform(3));
        std::vector<std::size_t> rows(n), cand(d);
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cand.begin(), cand.end(), 0);
        auto got = best_split(x, y, rows, cand, min_leaf);
        auto want = brute_force_split(x, y, min_leaf);
        REQUIRE(got.has_value() == want.has_value());
        if (!got) continue;
        CHECK(got->feature == want->feature);
        CHECK(got->threshold == want->threshold);
        CHECK(std::abs(got->decrease - want->decrease) <= 1e-12);
    }
}

TEST_CASE("separable toy set is fit exactly") {
    std::vector<std::vector<double>> rows;
    std::vector<int> y;
    for (int i = -10; i <= 10; ++i) {
        if (i == 0) continue;
        rows.push_back({static_cast<double>(i)});
        y.push_back(i > 0 ? 1 : 0);
    }
    auto x = vectors(rows);
    ForestParams p;
    p.n_trees = 10;
    p.rng_seed = 3;
    auto m = train_forest(x, y, p);
    CHECK(m.trees.size() == 10);
    CHECK(training_accuracy(m, x, y) == 1.0);
}

TEST_CASE("single unrestricted tree memorizes consistent data") {
    ForestParams p;
    p.n_trees = 1;
    p.bootstrap = false;
    p.max_features = 1000;
    // XOR needs a zero-gain first split.
    auto xor_x = vectors({{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    std::vector<int> xor_y{0, 1, 1, 0};
    CHECK(training_accuracy(train_forest(xor_x, xor_y, p), xor_x, xor_y) == 1.0);

    CounterRng rng(12, 0);
    for (int round = 0; round < 40; ++round) {
        std::size_t n = 4 + rng.uniform(80), d = 1 + rng.uniform(6);
        std::map<std::vector<double>, int> seen;
        std::vector<std::vector<double>> rows;
        std::vector<int> y;
        while (rows.size() < n) {
            std::vector<double> r;
            for (std::size_t j = 0; j < d; ++j) r.push_back(static_cast<double>(rng.uniform(4)));
            int label = static_cast<int>(rng.uniform(2));
            auto [it, fresh] = seen.emplace(r, label);
            rows.push_back(r);
            y.push_back(it->second);  // duplicates keep a consistent label
        }
        if (std::count(y.begin(), y.end(), 1) == 0 || std::count(y.begin(), y.end(), 0) == 0) continue;
        p.rng_seed = static_cast<std::uint64_t>(round);
        auto x = vectors(rows);
        CHECK(training_accuracy(train_forest(x, y, p), x, y) == 1.0);
    }
}

TEST_CASE("training is deterministic and serialization round-trips") {
    const auto& f = testing::small_featurized();
    ForestParams p;
    p.n_trees = 15;
    p.rng_seed = 99;
    auto a = train_forest(f.x, f.corpus.labels, p);
    auto b = train_forest(f.x, f.corpus.labels, p);
    auto bytes = serialize_forest(a);
    CHECK(bytes == serialize_forest(b));
    auto back = deserialize_forest(bytes);
    CHECK(serialize_forest(back) == bytes);
    for (const auto& v : f.x) CHECK(predict_score(back, v) == predict_score(a, v));

    p.rng_seed = 100;
    CHECK(serialize_forest(train_forest(f.x, f.corpus.labels, p)) != bytes);

    CHECK_THROWS_AS(deserialize_forest(bytes.substr(0, bytes.size() / 2)), ModelFormatError);
    CHECK_THROWS_AS(deserialize_forest("XXXX" + bytes.substr(4)), ModelFormatError);
    CHECK_THROWS_AS(deserialize_forest(""), ModelFormatError);
}

TEST_CASE("training errors") {
    auto x = vectors({{1}, {2}, {3}});
    ForestParams p;
    CHECK_THROWS_AS(train_forest(x, std::vector<int>{1, 1, 1}, p), SingleClassError);
    auto mixed = x;
    mixed[1].registry_digest = "other";
    CHECK_THROWS_AS(train_forest(mixed, std::vector<int>{0, 1, 1}, p), RegistryMismatch);
    auto m = train_forest(x, std::vector<int>{0, 1, 1}, p);
    CHECK_THROWS_AS(predict_score(m, FeatureVector{"other", {1}}), RegistryMismatch);
}

TEST_CASE("predict_score averages leaf fractions") {
    ForestModel m;
    m.registry_digest = "toy";
    m.registry_size = 1;
    m.feature_subset = {0};
    m.imputation = {0.0};
    m.trees = {DecisionTree{{TreeNode{-1, 0, -1, -1, 1.0, 3}}}, DecisionTree{{TreeNode{-1, 0, -1, -1, 1.0, 2}}}};
    CHECK(predict_score(m, FeatureVector{"toy", {5}}) == 1.0);
    m.trees[1].nodes[0].positive_fraction = 0.0;
    CHECK(predict_score(m, FeatureVector{"toy", {5}}) == 0.5);
    CHECK(predict_score(m, FeatureVector{"toy", {kMissing}}) == 0.5);
}

TEST_CASE("missing values are imputed with training medians") {
    auto x = vectors({{1, kMissing}, {2, 10}, {3, 20}, {4, kMissing}, {5, 30}});
    ForestParams p;
    p.n_trees = 3;
    auto m = train_forest(x, std::vector<int>{0, 0, 1, 1, 1}, p);
    CHECK(m.imputation == std::vector<double>{3, 20});
    auto row = impute_subset(m, std::vector<double>{kMissing, 7});
    CHECK(row == std::vector<double>{3, 7});
}

TEST_CASE("out-of-bag accuracy on the seeded synthetic set") {
    const auto& f = testing::small_featurized(150, 150);
    ForestParams p;
    p.rng_seed = 42;
    auto m = train_forest(f.x, f.corpus.labels, p);
    CHECK(m.oob_accuracy >= 0.9);
    CHECK(m.oob_accuracy == doctest::Approx(278.0 / 300.0));  // frozen
}

TEST_CASE("suite returns seven scores in range") {
    const auto& f = testing::small_featurized();
    ForestParams p;
    p.n_trees = 20;
    p.rng_seed = 5;
    auto suite = train_suite(f.x, f.corpus.labels, p, default_registry(), {f.corpus.digest, 0, 0});
    CHECK(suite.metadata.training_samples == f.x.size());
    for (std::size_t c = 0; c < kFeatureClassCount; ++c) {
        CHECK(suite.per_class[c].params.rng_seed == 5 + 1 + c);
        CHECK(suite.per_class[c].feature_subset == default_registry().class_indices(kAllFeatureClasses[c]));
    }
    auto check_scores = [&](const FeatureVector& v) {
        auto s = score_suite(suite, v);
        CHECK(s.values.size() == 7);
        for (double x : s.values) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        return s;
    };
    check_scores(extract_all(testing::minimal_snapshot(), default_registry(), testing::lexicons()));
    auto mixed = check_scores(extract_all(testing::load_fixture("acct_mixed.json"), default_registry(), testing::lexicons()));
    CHECK(mixed.overall() == doctest::Approx(7.0 / 20.0));  // frozen golden score

    // Sentiment block forced to missing still scores through imputation.
    auto v = f.x[0];
    for (std::size_t i : default_registry().class_indices(FeatureClass::sentiment)) v.values[i] = kMissing;
    check_scores(v);

    // Per-class scores ignore features outside their block.
    CounterRng rng(6, 6);
    for (std::size_t c = 0; c < kFeatureClassCount; ++c) {
        auto base = f.x[rng.uniform(f.x.size())];
        auto perturbed = base;
        auto own = default_registry().class_indices(kAllFeatureClasses[c]);
        for (std::size_t i = 0; i < perturbed.values.size(); ++i)
            if (!std::binary_search(own.begin(), own.end(), i)) perturbed.values[i] = rng.unit() * 1e6;
        CHECK(predict_score(suite.per_class[c], base) == predict_score(suite.per_class[c], perturbed));
    }

    auto bytes = serialize_suite(suite);
    auto back = deserialize_suite(bytes);
    CHECK(serialize_suite(back) == bytes);
    CHECK(back.version_digest() == suite.version_digest());
    CHECK(back.metadata.dataset_digest == f.corpus.digest);

    // trained_at does not enter the version digest.
    auto again = train_suite(f.x, f.corpus.labels, p, default_registry(), {f.corpus.digest, 12345, 0});
    CHECK(again.version_digest() == suite.version_digest());
}

TEST_CASE("suite save and load") {
    testing::TempDir dir;
    const auto& f = testing::small_featurized();
    ForestParams p;
    p.n_trees = 5;
    auto suite = train_suite(f.x, f.corpus.labels, p, default_registry());
    save_suite(suite, dir / "m.bin");
    CHECK(load_suite(dir / "m.bin").version_digest() == suite.version_digest());
    CHECK_THROWS_AS(load_suite(dir / "absent.bin"), MissingFile);
    std::ofstream(dir / "junk.bin") << "not a model";
    CHECK_THROWS_AS(load_suite(dir / "junk.bin"), ModelFormatError);
}
