#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "botscore/forest.hpp"
#include "botscore/registry.hpp"
#include "botscore/time.hpp"

namespace botscore {

// Score slots: overall first, then the six classes in registry class order.
inline constexpr std::size_t kScoreCount = 1 + kFeatureClassCount;
inline constexpr std::array<const char*, kScoreCount> kScoreNames = {
    "overall", "network", "user", "friends", "temporal", "content", "sentiment"};

struct SuiteScores {
    std::array<double, kScoreCount> values{};

    double overall() const { return values[0]; }
    double of(FeatureClass c) const { return values[1 + static_cast<std::size_t>(c)]; }
};

struct SuiteMetadata {
    std::string dataset_digest;
    Timestamp trained_at = 0;
    std::size_t training_samples = 0;
};

// Seven forests sharing one registry: one over every feature, one per class block.
struct ScoreSuiteModel {
    std::string registry_digest;
    ForestModel overall;
    std::array<ForestModel, kFeatureClassCount> per_class;
    SuiteMetadata metadata;

    const ForestModel& model(std::size_t slot) const { return slot == 0 ? overall : per_class[slot - 1]; }

    // Digest of the seven serialized forests; identifies the scoring behaviour
    // independent of training metadata.
    std::string version_digest() const;
};

// Overall model uses params.rng_seed; class c uses rng_seed + 1 + index(c).
ScoreSuiteModel train_suite(std::span<const FeatureVector> x, std::span<const int> labels, const ForestParams& params,
                            const FeatureRegistry& registry, SuiteMetadata metadata = {});

SuiteScores score_suite(const ScoreSuiteModel& suite, const FeatureVector& x);

std::string serialize_suite(const ScoreSuiteModel& suite);
ScoreSuiteModel deserialize_suite(std::string_view bytes);

void save_suite(const ScoreSuiteModel& suite, const std::filesystem::path& path);
// Throws MissingFile or ModelFormatError.
ScoreSuiteModel load_suite(const std::filesystem::path& path);

nlohmann::json params_to_json(const ForestParams& p);

}  // namespace botscore
