#include "botscore/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "botscore/binary_io.hpp"
#include "botscore/errors.hpp"
#include "botscore/stats.hpp"

namespace botscore {

namespace {

constexpr double kMinDecrease = 1e-12;
constexpr double kTieEpsilon = 1e-12;
constexpr std::string_view kForestMagic = "BSRF";
constexpr std::uint32_t kForestVersion = 1;

double midpoint(double a, double b) {
    double m = a + (b - a) / 2.0;
    return m < b ? m : a;
}

// Shared scan behind best_split; `allow_zero` also accepts splits that leave
// impurity unchanged (used to keep splitting impure but separable nodes).
std::optional<Split> scan_splits(const Matrix& x, std::span<const int> labels, std::span<const std::size_t> rows,
                                 std::span<const std::size_t> candidates, int min_samples_leaf, bool allow_zero) {
    const std::size_t n = rows.size();
    if (n < 2) return std::nullopt;
    long pos = 0;
    for (std::size_t r : rows) pos += labels[r];
    long neg = static_cast<long>(n) - pos;
    if (pos == 0 || neg == 0) return std::nullopt;
    const double parent = gini_impurity(pos, neg);
    const double dn = static_cast<double>(n);
    const std::size_t min_leaf = static_cast<std::size_t>(std::max(1, min_samples_leaf));

    std::vector<std::size_t> features(candidates.begin(), candidates.end());
    std::sort(features.begin(), features.end());
    features.erase(std::unique(features.begin(), features.end()), features.end());

    std::optional<Split> best;
    std::vector<std::pair<double, int>> column(n);
    for (std::size_t f : features) {
        for (std::size_t i = 0; i < n; ++i) column[i] = {x.at(rows[i], f), labels[rows[i]]};
        std::sort(column.begin(), column.end());
        long lp = 0, ln = 0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            (column[i].second ? lp : ln) += 1;
            if (column[i].first == column[i + 1].first) continue;
            std::size_t nl = i + 1, nr = n - nl;
            if (nl < min_leaf || nr < min_leaf) continue;
            long rp = pos - lp, rn = neg - ln;
            double decrease = parent - (static_cast<double>(nl) / dn) * gini_impurity(lp, ln) -
                              (static_cast<double>(nr) / dn) * gini_impurity(rp, rn);
            bool acceptable = allow_zero ? decrease >= -kTieEpsilon : decrease > kMinDecrease;
            if (!acceptable) continue;
            if (!best || decrease > best->decrease + kTieEpsilon)
                best = Split{f, midpoint(column[i].first, column[i + 1].first), decrease};
        }
    }
    return best;
}

struct GrownTree {
    DecisionTree tree;
    std::vector<bool> in_bag;
};

GrownTree grow_tree(const Matrix& x, std::span<const int> labels, const ForestParams& params, int max_features,
                    std::uint64_t tree_index) {
    CounterRng rng(params.rng_seed, tree_index);
    const std::size_t n = x.rows, d = x.cols;
    GrownTree out;
    out.in_bag.assign(n, !params.bootstrap);

    std::vector<std::size_t> root_rows(n);
    if (params.bootstrap) {
        for (std::size_t i = 0; i < n; ++i) {
            root_rows[i] = static_cast<std::size_t>(rng.uniform(n));
            out.in_bag[root_rows[i]] = true;
        }
    } else {
        std::iota(root_rows.begin(), root_rows.end(), std::size_t{0});
    }

    std::vector<std::size_t> all_features(d);
    std::iota(all_features.begin(), all_features.end(), std::size_t{0});
    std::vector<std::size_t> pool = all_features;

    struct Pending {
        std::size_t node;
        std::vector<std::size_t> rows;
        int depth;
    };
    auto& nodes = out.tree.nodes;
    nodes.emplace_back();
    std::vector<Pending> stack;
    stack.push_back({0, std::move(root_rows), 0});

    while (!stack.empty()) {
        Pending work = std::move(stack.back());
        stack.pop_back();
        long pos = 0;
        for (std::size_t r : work.rows) pos += labels[r];
        const std::size_t count = work.rows.size();
        nodes[work.node].positive_fraction = static_cast<double>(pos) / static_cast<double>(count);
        nodes[work.node].sample_count = static_cast<std::uint32_t>(count);

        bool pure = pos == 0 || pos == static_cast<long>(count);
        bool depth_reached = params.max_depth > 0 && work.depth >= params.max_depth;
        if (pure || depth_reached || count < 2 * static_cast<std::size_t>(params.min_samples_leaf)) continue;

        // Partial Fisher-Yates over the feature pool.
        for (int k = 0; k < max_features; ++k) {
            std::size_t j = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng.uniform(d - k));
            std::swap(pool[static_cast<std::size_t>(k)], pool[j]);
        }
        std::span<const std::size_t> candidates(pool.data(), static_cast<std::size_t>(max_features));

        auto split = scan_splits(x, labels, work.rows, candidates, params.min_samples_leaf, false);
        if (!split) split = scan_splits(x, labels, work.rows, all_features, params.min_samples_leaf, true);
        if (!split) continue;

        std::vector<std::size_t> left, right;
        for (std::size_t r : work.rows) (x.at(r, split->feature) <= split->threshold ? left : right).push_back(r);

        auto left_index = static_cast<std::int32_t>(nodes.size());
        nodes.emplace_back();
        nodes.emplace_back();
        TreeNode& parent = nodes[work.node];
        parent.feature = static_cast<std::int32_t>(split->feature);
        parent.threshold = split->threshold;
        parent.left = left_index;
        parent.right = left_index + 1;
        stack.push_back({static_cast<std::size_t>(left_index + 1), std::move(right), work.depth + 1});
        stack.push_back({static_cast<std::size_t>(left_index), std::move(left), work.depth + 1});
    }
    return out;
}

void write_params(BinaryWriter& w, const ForestParams& p) {
    w.u32(static_cast<std::uint32_t>(p.n_trees));
    w.u32(static_cast<std::uint32_t>(p.max_features));
    w.u32(static_cast<std::uint32_t>(p.min_samples_leaf));
    w.u32(static_cast<std::uint32_t>(p.max_depth));
    w.u8(p.bootstrap ? 1 : 0);
    w.u64(p.rng_seed);
}

ForestParams read_params(BinaryReader& r) {
    ForestParams p;
    p.n_trees = static_cast<int>(r.u32());
    p.max_features = static_cast<int>(r.u32());
    p.min_samples_leaf = static_cast<int>(r.u32());
    p.max_depth = static_cast<int>(r.u32());
    p.bootstrap = r.u8() != 0;
    p.rng_seed = r.u64();
    return p;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed) ^ splitmix64(stream ^ 0x5851f42d4c957f2dULL)) {}

std::uint64_t CounterRng::next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

std::uint64_t CounterRng::uniform(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v;
    do v = next();
    while (v >= limit);
    return v % n;
}

double CounterRng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double gini_impurity(long pos, long neg) {
    if (pos < 0 || neg < 0) throw Error("gini_impurity: negative count");
    if (pos + neg == 0) throw EmptyNode("gini_impurity of an empty node");
    double n = static_cast<double>(pos + neg);
    double p = static_cast<double>(pos) / n, q = static_cast<double>(neg) / n;
    return 1.0 - p * p - q * q;
}

std::optional<Split> best_split(const Matrix& x, std::span<const int> labels, std::span<const std::size_t> rows,
                                std::span<const std::size_t> candidates, int min_samples_leaf) {
    return scan_splits(x, labels, rows, candidates, min_samples_leaf, false);
}

double DecisionTree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf())
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(nodes[i].feature)] <= nodes[i].threshold
                                         ? nodes[i].left
                                         : nodes[i].right);
    return nodes[i].positive_fraction;
}

std::size_t DecisionTree::depth() const {
    std::vector<std::size_t> level(nodes.size(), 0);
    std::size_t deepest = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        deepest = std::max(deepest, level[i]);
        if (!nodes[i].is_leaf()) {
            level[static_cast<std::size_t>(nodes[i].left)] = level[i] + 1;
            level[static_cast<std::size_t>(nodes[i].right)] = level[i] + 1;
        }
    }
    return deepest;
}

ForestModel train_forest(std::span<const FeatureVector> x, std::span<const int> labels, const ForestParams& params,
                         std::vector<std::size_t> feature_subset) {
    if (x.size() != labels.size()) throw Error("train_forest: feature and label counts differ");
    if (x.size() < 2) throw Error("train_forest: need at least two samples");
    if (params.n_trees < 1) throw Error("train_forest: n_trees must be >= 1");
    if (params.min_samples_leaf < 1) throw Error("train_forest: min_samples_leaf must be >= 1");
    if (params.max_features < 0 || params.max_depth < 0) throw Error("train_forest: negative parameter");
    long pos = 0;
    for (int y : labels) {
        if (y != 0 && y != 1) throw Error("train_forest: labels must be 0 or 1");
        pos += y;
    }
    if (pos == 0 || pos == static_cast<long>(labels.size()))
        throw SingleClassError("training data contains a single class");

    const std::string& digest = x[0].registry_digest;
    const std::size_t width = x[0].values.size();
    for (const auto& v : x)
        if (v.registry_digest != digest || v.values.size() != width)
            throw RegistryMismatch("training vectors come from different feature registries");
    if (feature_subset.empty()) {
        feature_subset.resize(width);
        std::iota(feature_subset.begin(), feature_subset.end(), std::size_t{0});
    }
    for (std::size_t f : feature_subset)
        if (f >= width) throw Error("train_forest: feature index out of range");

    ForestModel model;
    model.params = params;
    model.registry_digest = digest;
    model.registry_size = width;
    model.feature_subset = std::move(feature_subset);

    const std::size_t n = x.size(), d = model.feature_subset.size();
    model.imputation.resize(d);
    std::vector<double> column;
    for (std::size_t j = 0; j < d; ++j) {
        column.clear();
        for (const auto& v : x) {
            double value = v.values[model.feature_subset[j]];
            if (!is_missing(value)) column.push_back(value);
        }
        model.imputation[j] = column.empty() ? 0.0 : median_of(column);
    }

    Matrix m{n, d, std::vector<double>(n * d)};
    for (std::size_t i = 0; i < n; ++i) {
        auto row = impute_subset(model, x[i].values);
        std::copy(row.begin(), row.end(), m.data.begin() + static_cast<std::ptrdiff_t>(i * d));
    }

    int max_features = params.max_features == 0
                           ? static_cast<int>(std::floor(std::sqrt(static_cast<double>(d))))
                           : std::min(params.max_features, static_cast<int>(d));
    max_features = std::max(1, max_features);

    const auto n_trees = static_cast<std::size_t>(params.n_trees);
    std::vector<GrownTree> grown(n_trees);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t t = next++; t < n_trees; t = next++)
            grown[t] = grow_tree(m, labels, params, max_features, static_cast<std::uint64_t>(t));
    };
    unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                      static_cast<unsigned>(n_trees)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    std::vector<double> oob_sum(n, 0.0), oob_count(n, 0.0);
    for (auto& g : grown) {
        for (std::size_t i = 0; i < n; ++i) {
            if (g.in_bag[i]) continue;
            oob_sum[i] += g.tree.predict(m.row(i));
            oob_count[i] += 1.0;
        }
        model.trees.push_back(std::move(g.tree));
    }
    double correct = 0.0, seen = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (oob_count[i] == 0.0) continue;
        int predicted = oob_sum[i] / oob_count[i] >= 0.5 ? 1 : 0;
        correct += predicted == labels[i] ? 1.0 : 0.0;
        seen += 1.0;
    }
    model.oob_accuracy = seen == 0.0 ? std::numeric_limits<double>::quiet_NaN() : correct / seen;
    return model;
}

std::vector<double> impute_subset(const ForestModel& model, std::span<const double> values) {
    std::vector<double> out(model.feature_subset.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        double v = values[model.feature_subset[j]];
        out[j] = is_missing(v) ? model.imputation[j] : v;
    }
    return out;
}

double predict_score(const ForestModel& model, const FeatureVector& x) {
    if (x.registry_digest != model.registry_digest || x.values.size() != model.registry_size)
        throw RegistryMismatch("feature vector registry " + x.registry_digest + " does not match model registry " +
                               model.registry_digest);
    auto row = impute_subset(model, x.values);
    double sum = 0.0;
    for (const auto& tree : model.trees) sum += tree.predict(row);
    return std::clamp(sum / static_cast<double>(model.trees.size()), 0.0, 1.0);
}

std::string serialize_forest(const ForestModel& model) {
    BinaryWriter w;
    w.bytes(kForestMagic);
    w.u32(kForestVersion);
    write_params(w, model.params);
    w.str(model.registry_digest);
    w.u64(model.registry_size);
    w.u32(static_cast<std::uint32_t>(model.feature_subset.size()));
    for (std::size_t f : model.feature_subset) w.u64(f);
    for (double v : model.imputation) w.f64(v);
    w.f64(model.oob_accuracy);
    w.u32(static_cast<std::uint32_t>(model.trees.size()));
    for (const auto& tree : model.trees) {
        w.u32(static_cast<std::uint32_t>(tree.nodes.size()));
        for (const auto& node : tree.nodes) {
            w.i32(node.feature);
            w.f64(node.threshold);
            w.i32(node.left);
            w.i32(node.right);
            w.f64(node.positive_fraction);
            w.u32(node.sample_count);
        }
    }
    return w.take();
}

ForestModel deserialize_forest(std::string_view bytes) {
    BinaryReader r(bytes);
    if (r.bytes(4) != kForestMagic) throw ModelFormatError("not a forest model (bad magic)");
    if (auto v = r.u32(); v != kForestVersion)
        throw ModelFormatError("unsupported forest format version " + std::to_string(v));
    ForestModel m;
    m.params = read_params(r);
    m.registry_digest = r.str();
    m.registry_size = r.u64();
    std::uint32_t d = r.u32();
    m.feature_subset.resize(d);
    for (auto& f : m.feature_subset) {
        f = r.u64();
        if (f >= m.registry_size) throw ModelFormatError("feature index out of range");
    }
    m.imputation.resize(d);
    for (auto& v : m.imputation) v = r.f64();
    m.oob_accuracy = r.f64();
    std::uint32_t n_trees = r.u32();
    if (n_trees == 0) throw ModelFormatError("forest has no trees");
    m.trees.resize(n_trees);
    for (auto& tree : m.trees) {
        std::uint32_t n_nodes = r.u32();
        if (n_nodes == 0) throw ModelFormatError("empty tree");
        tree.nodes.resize(n_nodes);
        for (auto& node : tree.nodes) {
            node.feature = r.i32();
            node.threshold = r.f64();
            node.left = r.i32();
            node.right = r.i32();
            node.positive_fraction = r.f64();
            node.sample_count = r.u32();
        }
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
            const auto& node = tree.nodes[i];
            if (node.is_leaf()) {
                if (!(node.positive_fraction >= 0.0 && node.positive_fraction <= 1.0))
                    throw ModelFormatError("leaf fraction outside [0,1]");
                continue;
            }
            auto valid_child = [&](std::int32_t c) {
                return c > static_cast<std::int32_t>(i) && c < static_cast<std::int32_t>(n_nodes);
            };
            if (static_cast<std::uint32_t>(node.feature) >= d || !valid_child(node.left) || !valid_child(node.right))
                throw ModelFormatError("malformed tree node");
        }
    }
    return m;
}

}  // namespace botscore
