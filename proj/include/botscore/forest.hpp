#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "botscore/registry.hpp"

namespace botscore {

// Counter-based generator: the stream is a pure function of (key, counter),
// so per-tree streams are reproducible regardless of scheduling.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);
    std::uint64_t next();
    // Uniform on [0, n); n >= 1.
    std::uint64_t uniform(std::uint64_t n);
    double unit();  // [0, 1)

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

struct ForestParams {
    int n_trees = 100;
    int max_features = 0;  // 0 selects floor(sqrt(d)); values above d are clamped
    int min_samples_leaf = 1;
    int max_depth = 0;  // 0 = unlimited
    bool bootstrap = true;
    std::uint64_t rng_seed = 0;

    bool operator==(const ForestParams&) const = default;
};

// Row-major dense matrix of imputed training values.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

// 1 - p+^2 - p-^2. Throws EmptyNode when pos + neg == 0.
double gini_impurity(long pos, long neg);

struct Split {
    std::size_t feature = 0;
    double threshold = 0.0;  // x <= threshold goes left
    double decrease = 0.0;   // weighted Gini decrease

    bool operator==(const Split&) const = default;
};

// Exhaustive scan over `candidates` and midpoints of consecutive distinct
// values among `rows`. Ties break to the lowest feature, then the lowest
// threshold. Splits leaving fewer than `min_samples_leaf` rows on a side are
// skipped. nullopt when no split strictly decreases impurity.
std::optional<Split> best_split(const Matrix& x, std::span<const int> labels, std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidates, int min_samples_leaf = 1);

struct TreeNode {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    double positive_fraction = 0.0;
    std::uint32_t sample_count = 0;

    bool is_leaf() const noexcept { return feature < 0; }
    bool operator==(const TreeNode&) const = default;
};

// Flattened CART tree; node 0 is the root.
struct DecisionTree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> x) const;
    std::size_t depth() const;
    bool operator==(const DecisionTree&) const = default;
};

struct ForestModel {
    ForestParams params;
    std::string registry_digest;
    std::size_t registry_size = 0;
    std::vector<std::size_t> feature_subset;  // registry positions this model reads
    std::vector<double> imputation;           // training median per subset feature
    std::vector<DecisionTree> trees;
    double oob_accuracy = 0.0;  // NaN when no sample was ever out of bag
};

// Labels are 1 (bot) / 0 (human). `feature_subset` empty means every feature.
// Throws SingleClassError, RegistryMismatch, Error (bad params/shapes).
ForestModel train_forest(std::span<const FeatureVector> x, std::span<const int> labels, const ForestParams& params,
                         std::vector<std::size_t> feature_subset = {});

// Mean leaf positive-fraction over trees, after imputation. Throws RegistryMismatch.
double predict_score(const ForestModel& model, const FeatureVector& x);

// Subset values with missing entries replaced from the imputation table.
std::vector<double> impute_subset(const ForestModel& model, std::span<const double> values);

std::string serialize_forest(const ForestModel& model);
// Throws ModelFormatError.
ForestModel deserialize_forest(std::string_view bytes);

}  // namespace botscore
