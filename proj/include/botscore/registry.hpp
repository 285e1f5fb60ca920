#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace botscore {

enum class FeatureClass { network, user, friends, temporal, content, sentiment };

inline constexpr std::size_t kFeatureClassCount = 6;
inline constexpr std::array<FeatureClass, kFeatureClassCount> kAllFeatureClasses = {
    FeatureClass::network,  FeatureClass::user,    FeatureClass::friends,
    FeatureClass::temporal, FeatureClass::content, FeatureClass::sentiment};

const char* feature_class_name(FeatureClass c);
// Throws Error on unknown names.
FeatureClass feature_class_from_name(std::string_view name);

struct FeatureSpec {
    std::string name;
    FeatureClass feature_class = FeatureClass::network;
    std::string extractor;   // e.g. "graph.density", "describe"
    std::string parameters;  // e.g. "bins=10;scale=log"
    std::string description;
};

// Ordered, immutable catalog of features. The digest binds feature vectors
// and trained models to one exact ordering.
class FeatureRegistry {
public:
    // Throws Error on duplicate names.
    explicit FeatureRegistry(std::vector<FeatureSpec> specs);

    std::size_t size() const noexcept { return specs_.size(); }
    const FeatureSpec& at(std::size_t i) const { return specs_.at(i); }
    const std::vector<FeatureSpec>& specs() const noexcept { return specs_; }
    const std::string& digest() const noexcept { return digest_; }

    // npos when absent.
    std::size_t index_of(std::string_view name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // Registry positions of one class block, ascending.
    std::vector<std::size_t> class_indices(FeatureClass c) const;

    // Tab-separated `name class extractor parameters description`, one per line,
    // preceded by a commented header with the digest.
    std::string manifest_text() const;
    nlohmann::json manifest_json() const;

private:
    std::vector<FeatureSpec> specs_;
    std::unordered_map<std::string, std::size_t> index_;
    std::string digest_;
};

// Values aligned positionally to a registry; kMissing marks absent values.
struct FeatureVector {
    std::string registry_digest;
    std::vector<double> values;

    bool operator==(const FeatureVector& other) const;  // NaN-aware, bitwise on doubles
};

}  // namespace botscore
