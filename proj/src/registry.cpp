#include "botscore/registry.hpp"

#include <cstring>

#include "botscore/digest.hpp"
#include "botscore/errors.hpp"

namespace botscore {

namespace {
constexpr std::array<const char*, kFeatureClassCount> kClassNames = {
    "network", "user", "friends", "temporal", "content", "sentiment"};
constexpr std::string_view kRegistryFormat = "botscore-registry-v1";
}  // namespace

const char* feature_class_name(FeatureClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

FeatureClass feature_class_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kClassNames.size(); ++i)
        if (name == kClassNames[i]) return static_cast<FeatureClass>(i);
    throw Error("unknown feature class '" + std::string(name) + "'");
}

FeatureRegistry::FeatureRegistry(std::vector<FeatureSpec> specs) : specs_(std::move(specs)) {
    Digest d;
    d.update(kRegistryFormat);
    for (std::size_t i = 0; i < specs_.size(); ++i) {
        const auto& s = specs_[i];
        if (!index_.emplace(s.name, i).second) throw Error("duplicate feature name '" + s.name + "'");
        d.update(s.name).update("\t").update(feature_class_name(s.feature_class)).update("\t");
        d.update(s.extractor).update("\t").update(s.parameters).update("\n");
    }
    digest_ = d.hex();
}

std::size_t FeatureRegistry::index_of(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? npos : it->second;
}

std::vector<std::size_t> FeatureRegistry::class_indices(FeatureClass c) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (specs_[i].feature_class == c) out.push_back(i);
    return out;
}

std::string FeatureRegistry::manifest_text() const {
    std::string out = "# feature registry " + digest_ + " (" + std::to_string(specs_.size()) + " features)\n";
    out += "# name\tclass\textractor\tparameters\tdescription\n";
    for (const auto& s : specs_) {
        out += s.name + "\t" + feature_class_name(s.feature_class) + "\t" + s.extractor + "\t" + s.parameters +
               "\t" + s.description + "\n";
    }
    return out;
}

nlohmann::json FeatureRegistry::manifest_json() const {
    nlohmann::json features = nlohmann::json::array();
    for (const auto& s : specs_)
        features.push_back({{"name", s.name},
                            {"class", feature_class_name(s.feature_class)},
                            {"extractor", s.extractor},
                            {"parameters", s.parameters},
                            {"description", s.description}});
    return {{"digest", digest_}, {"size", specs_.size()}, {"features", std::move(features)}};
}

bool FeatureVector::operator==(const FeatureVector& other) const {
    if (registry_digest != other.registry_digest || values.size() != other.values.size()) return false;
    return values.empty() || std::memcmp(values.data(), other.values.data(), values.size() * sizeof(double)) == 0;
}

}  // namespace botscore
