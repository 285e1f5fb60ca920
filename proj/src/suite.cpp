#include "botscore/suite.hpp"

#include <fstream>
#include <sstream>

#include "botscore/binary_io.hpp"
#include "botscore/digest.hpp"
#include "botscore/errors.hpp"

namespace botscore {

namespace {
constexpr std::string_view kSuiteMagic = "BSSM";
constexpr std::uint32_t kSuiteVersion = 1;
}  // namespace

std::string ScoreSuiteModel::version_digest() const {
    Digest d;
    d.update(registry_digest);
    for (std::size_t slot = 0; slot < kScoreCount; ++slot) d.update(serialize_forest(model(slot)));
    return d.hex();
}

ScoreSuiteModel train_suite(std::span<const FeatureVector> x, std::span<const int> labels, const ForestParams& params,
                            const FeatureRegistry& registry, SuiteMetadata metadata) {
    for (const auto& v : x)
        if (v.registry_digest != registry.digest())
            throw RegistryMismatch("training vector registry " + v.registry_digest + " is not " + registry.digest());
    ScoreSuiteModel suite;
    suite.registry_digest = registry.digest();
    metadata.training_samples = x.size();
    suite.metadata = std::move(metadata);
    suite.overall = train_forest(x, labels, params);
    for (std::size_t c = 0; c < kFeatureClassCount; ++c) {
        ForestParams p = params;
        p.rng_seed = params.rng_seed + 1 + c;
        suite.per_class[c] = train_forest(x, labels, p, registry.class_indices(kAllFeatureClasses[c]));
    }
    return suite;
}

SuiteScores score_suite(const ScoreSuiteModel& suite, const FeatureVector& x) {
    SuiteScores s;
    for (std::size_t slot = 0; slot < kScoreCount; ++slot) s.values[slot] = predict_score(suite.model(slot), x);
    return s;
}

nlohmann::json params_to_json(const ForestParams& p) {
    return {{"n_trees", p.n_trees},
            {"max_features", p.max_features},
            {"min_samples_leaf", p.min_samples_leaf},
            {"max_depth", p.max_depth},
            {"bootstrap", p.bootstrap},
            {"rng_seed", p.rng_seed}};
}

std::string serialize_suite(const ScoreSuiteModel& suite) {
    BinaryWriter w;
    w.bytes(kSuiteMagic);
    w.u32(kSuiteVersion);
    w.str(suite.registry_digest);
    w.str(suite.metadata.dataset_digest);
    w.u64(static_cast<std::uint64_t>(suite.metadata.trained_at));
    w.u64(suite.metadata.training_samples);
    w.u32(static_cast<std::uint32_t>(kScoreCount));
    for (std::size_t slot = 0; slot < kScoreCount; ++slot) {
        w.str(kScoreNames[slot]);
        std::string forest = serialize_forest(suite.model(slot));
        w.u64(forest.size());
        w.bytes(forest);
    }
    return w.take();
}

ScoreSuiteModel deserialize_suite(std::string_view bytes) {
    BinaryReader r(bytes);
    if (r.bytes(4) != kSuiteMagic) throw ModelFormatError("not a score suite model (bad magic)");
    if (auto v = r.u32(); v != kSuiteVersion)
        throw ModelFormatError("unsupported suite format version " + std::to_string(v));
    ScoreSuiteModel suite;
    suite.registry_digest = r.str();
    suite.metadata.dataset_digest = r.str();
    suite.metadata.trained_at = static_cast<Timestamp>(r.u64());
    suite.metadata.training_samples = r.u64();
    if (r.u32() != kScoreCount) throw ModelFormatError("a score suite holds exactly seven models");
    for (std::size_t slot = 0; slot < kScoreCount; ++slot) {
        if (r.str() != kScoreNames[slot]) throw ModelFormatError("unexpected model slot name");
        std::uint64_t len = r.u64();
        ForestModel m = deserialize_forest(r.bytes(len));
        if (m.registry_digest != suite.registry_digest) throw ModelFormatError("models disagree on registry digest");
        (slot == 0 ? suite.overall : suite.per_class[slot - 1]) = std::move(m);
    }
    if (!r.at_end()) throw ModelFormatError("trailing bytes after suite");
    return suite;
}

void save_suite(const ScoreSuiteModel& suite, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot write model file " + path.string());
    std::string bytes = serialize_suite(suite);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw StorageError("failed writing model file " + path.string());
}

ScoreSuiteModel load_suite(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("model file not found: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return deserialize_suite(ss.str());
}

}  // namespace botscore
