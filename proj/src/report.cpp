#include "botscore/report.hpp"

#include "botscore/errors.hpp"

namespace botscore {

nlohmann::json report_to_json(const ScoreReport& r) {
    nlohmann::json scores = nlohmann::json::object();
    for (std::size_t i = 0; i < kScoreCount; ++i) scores[kScoreNames[i]] = r.scores.values[i];
    nlohmann::json meta{{"tweets_used", r.tweets_used},
                        {"mentions_used", r.mentions_used},
                        {"model_version", r.model_version},
                        {"timestamp", format_iso8601(r.timestamp)}};
    if (!r.detail.is_null()) meta["detail"] = r.detail;
    return {{"screen_name", r.screen_name}, {"scores", std::move(scores)}, {"meta", std::move(meta)}};
}

ScoreReport report_from_json(const nlohmann::json& doc) {
    try {
        ScoreReport r;
        r.screen_name = doc.at("screen_name").get<std::string>();
        const auto& scores = doc.at("scores");
        if (scores.size() != kScoreCount) throw SchemaError("scores", "expected exactly seven scores");
        for (std::size_t i = 0; i < kScoreCount; ++i) r.scores.values[i] = scores.at(kScoreNames[i]).get<double>();
        const auto& meta = doc.at("meta");
        r.tweets_used = meta.at("tweets_used").get<int>();
        r.mentions_used = meta.at("mentions_used").get<int>();
        r.model_version = meta.at("model_version").get<std::string>();
        r.timestamp = parse_iso8601(meta.at("timestamp").get<std::string>());
        if (meta.contains("detail")) r.detail = meta["detail"];
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("", std::string("malformed score report: ") + e.what());
    }
}

}  // namespace botscore
