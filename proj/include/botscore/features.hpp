#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "botscore/account.hpp"
#include "botscore/graph.hpp"
#include "botscore/lexicons.hpp"
#include "botscore/registry.hpp"
#include "botscore/stats.hpp"

namespace botscore {

// Named values produced by one class extractor. Names and their order do not
// depend on the input, which is what lets the registry be derived from the
// extractors themselves.
class FeatureBlock {
public:
    explicit FeatureBlock(FeatureClass c) : class_(c) {}

    FeatureClass feature_class() const noexcept { return class_; }
    const std::vector<FeatureSpec>& specs() const noexcept { return specs_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }

    // Throws Error if the name is absent.
    double at(std::string_view name) const;

    void add(std::string name, double value, std::string extractor, std::string description,
             std::string parameters = "");
    // Appends count/min/max/mean/median/std/skewness/kurtosis/entropy as
    // `<prefix>.<stat>`.
    void add_stats(const std::string& prefix, std::span<const double> values, const std::string& quantity,
                   BinScale scale, int bins = kDefaultEntropyBins);

private:
    FeatureClass class_;
    std::vector<FeatureSpec> specs_;
    std::vector<double> values_;
};

FeatureBlock network_features(const InteractionGraphs& graphs);
FeatureBlock user_features(const UserMeta& meta, Timestamp captured_at);
FeatureBlock friends_features(const std::vector<ContactMeta>& contacts, Timestamp captured_at);
// `tweets` and `mentions` newest first.
FeatureBlock temporal_features(const std::vector<Tweet>& tweets, const std::vector<Tweet>& mentions,
                               Timestamp captured_at);
FeatureBlock content_features(const std::vector<Tweet>& tweets, const Lexicons& lexicons);
FeatureBlock sentiment_features(const std::vector<Tweet>& tweets, const Lexicons& lexicons);

// All six blocks in class order.
std::array<FeatureBlock, kFeatureClassCount> extract_blocks(const AccountSnapshot& snapshot,
                                                             const Lexicons& lexicons);

// The shipped registry: every name the six extractors emit, in class order.
const FeatureRegistry& default_registry();

// Values placed in registry order. Throws RegistryMismatch if the registry
// names a feature no extractor produces.
FeatureVector extract_all(const AccountSnapshot& snapshot, const FeatureRegistry& registry,
                          const Lexicons& lexicons);

// Inter-tweet intervals in seconds for a newest-first timeline.
std::vector<double> inter_arrival_seconds(const std::vector<Tweet>& timeline);

// Tweets per UTC hour of day.
std::array<double, 24> hour_of_day_counts(const std::vector<Tweet>& timeline);

// Stable bucket for a language code (FNV-1a mod 64); kMissing for "".
double language_bucket(std::string_view language);

}  // namespace botscore
