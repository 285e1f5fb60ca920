#include "botscore/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "botscore/errors.hpp"

namespace botscore {

namespace {

void require_both_classes(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) throw Error("scores and labels differ in length");
    bool pos = false, neg = false;
    for (int y : labels) (y ? pos : neg) = true;
    if (!pos || !neg) throw SingleClassError("ROC analysis needs both classes");
}

double mean_of(const std::vector<double>& v) {
    return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double pop_std(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double m = mean_of(v), s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed) {
    if (k < 2) throw TooFewSamples("k-fold needs k >= 2");
    std::map<int, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);
    for (const auto& [label, members] : by_label)
        if (members.size() < static_cast<std::size_t>(k))
            throw TooFewSamples("label " + std::to_string(label) + " has " + std::to_string(members.size()) +
                                " members, fewer than k = " + std::to_string(k));

    std::vector<std::vector<std::size_t>> folds(static_cast<std::size_t>(k));
    std::size_t offset = 0;
    for (auto& [label, members] : by_label) {
        CounterRng rng(seed, static_cast<std::uint64_t>(label) + 0x10000);
        for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.uniform(i)]);
        for (std::size_t i = 0; i < members.size(); ++i)
            folds[(offset + i) % static_cast<std::size_t>(k)].push_back(members[i]);
        offset = (offset + members.size()) % static_cast<std::size_t>(k);
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    require_both_classes(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Ranks doubled so tied averages stay integral.
    double rank_sum_x2 = 0.0;
    double n_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        double avg_rank_x2 = static_cast<double>(i + 1 + j);  // 2 * mean of ranks i+1 .. j
        for (std::size_t t = i; t < j; ++t)
            if (labels[order[t]]) {
                rank_sum_x2 += avg_rank_x2;
                n_pos += 1.0;
            }
        i = j;
    }
    double n_neg = static_cast<double>(n) - n_pos;
    double u_x2 = rank_sum_x2 - n_pos * (n_pos + 1.0);
    return u_x2 / (2.0 * n_pos * n_neg);
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
    require_both_classes(scores, labels);
    const std::size_t n = scores.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    double pos = 0.0, neg = 0.0;
    for (int y : labels) (y ? pos : neg) += 1.0;

    std::vector<RocPoint> curve{{0.0, 0.0}};
    double tp = 0.0, fp = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) {
            (labels[order[j]] ? tp : fp) += 1.0;
            ++j;
        }
        curve.push_back({fp / neg, tp / pos});
        i = j;
    }
    return curve;
}

double trapezoid_area(std::span<const RocPoint> curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) / 2.0;
    return area;
}

CVReport cross_validate(std::span<const FeatureVector> x, std::span<const int> labels, const FeatureRegistry& registry,
                        const ForestParams& params, int k, std::uint64_t seed, std::string dataset_digest) {
    if (x.size() != labels.size()) throw Error("cross_validate: feature and label counts differ");
    CVReport report;
    report.k = k;
    report.seed = seed;
    report.params = params;
    report.dataset_digest = std::move(dataset_digest);
    report.labels.assign(labels.begin(), labels.end());
    report.out_of_fold_scores.assign(x.size(), 0.0);

    auto folds = stratified_kfold(labels, k, seed);
    for (const auto& test : folds) {
        std::vector<bool> held_out(x.size(), false);
        for (std::size_t i : test) held_out[i] = true;
        std::vector<FeatureVector> train_x;
        std::vector<int> train_y;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (!held_out[i]) {
                train_x.push_back(x[i]);
                train_y.push_back(labels[i]);
            }
        ScoreSuiteModel suite = train_suite(train_x, train_y, params, registry);

        std::array<std::vector<double>, kScoreCount> fold_scores;
        std::vector<int> fold_labels;
        for (std::size_t i : test) {
            SuiteScores s = score_suite(suite, x[i]);
            for (std::size_t slot = 0; slot < kScoreCount; ++slot) fold_scores[slot].push_back(s.values[slot]);
            fold_labels.push_back(labels[i]);
            report.out_of_fold_scores[i] = s.overall();
        }
        report.fold_auc.push_back(roc_auc(fold_scores[0], fold_labels));
        for (std::size_t c = 0; c < kFeatureClassCount; ++c)
            report.class_fold_auc[c].push_back(roc_auc(fold_scores[c + 1], fold_labels));
    }
    report.mean_auc = mean_of(report.fold_auc);
    report.std_auc = pop_std(report.fold_auc);
    for (std::size_t c = 0; c < kFeatureClassCount; ++c) report.class_mean_auc[c] = mean_of(report.class_fold_auc[c]);
    return report;
}

nlohmann::json cv_report_to_json(const CVReport& r) {
    nlohmann::json per_class = nlohmann::json::object();
    nlohmann::json per_class_folds = nlohmann::json::object();
    for (std::size_t c = 0; c < kFeatureClassCount; ++c) {
        per_class[feature_class_name(kAllFeatureClasses[c])] = r.class_mean_auc[c];
        per_class_folds[feature_class_name(kAllFeatureClasses[c])] = r.class_fold_auc[c];
    }
    return {{"k", r.k},
            {"seed", r.seed},
            {"params", params_to_json(r.params)},
            {"dataset_digest", r.dataset_digest},
            {"samples", r.labels.size()},
            {"fold_auc", r.fold_auc},
            {"mean_auc", r.mean_auc},
            {"std_auc", r.std_auc},
            {"class_mean_auc", std::move(per_class)},
            {"class_fold_auc", std::move(per_class_folds)}};
}

std::string roc_curve_csv(std::span<const RocPoint> curve) {
    std::ostringstream out;
    out.precision(17);
    out << "fpr,tpr\n";
    for (const auto& p : curve) out << p.fpr << ',' << p.tpr << '\n';
    return out.str();
}

}  // namespace botscore
