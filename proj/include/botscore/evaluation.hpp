#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "botscore/forest.hpp"
#include "botscore/registry.hpp"
#include "botscore/suite.hpp"

namespace botscore {

// k disjoint folds covering every index; each label's members are spread
// round-robin after a seeded shuffle. Throws TooFewSamples when k < 2 or a
// label has fewer than k members.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed);

// Mann-Whitney AUC with average ranks (ties earn half credit).
// Throws SingleClassError unless both labels are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
    bool operator==(const RocPoint&) const = default;
};

// One point per distinct threshold, from (0,0) to (1,1).
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels);

double trapezoid_area(std::span<const RocPoint> curve);

struct CVReport {
    int k = 0;
    std::uint64_t seed = 0;
    ForestParams params;
    std::string dataset_digest;
    std::vector<double> fold_auc;  // overall model, one per fold
    double mean_auc = 0.0;
    double std_auc = 0.0;           // population std over folds
    std::array<std::vector<double>, kFeatureClassCount> class_fold_auc;
    std::array<double, kFeatureClassCount> class_mean_auc{};
    // Out-of-fold overall scores aligned to the input order (for ROC export).
    std::vector<double> out_of_fold_scores;
    std::vector<int> labels;
};

CVReport cross_validate(std::span<const FeatureVector> x, std::span<const int> labels, const FeatureRegistry& registry,
                        const ForestParams& params, int k, std::uint64_t seed, std::string dataset_digest = "");

nlohmann::json cv_report_to_json(const CVReport& report);

// `fpr,tpr` header plus one line per point.
std::string roc_curve_csv(std::span<const RocPoint> curve);

}  // namespace botscore
