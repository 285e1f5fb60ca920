#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "botscore/suite.hpp"
#include "botscore/time.hpp"

namespace botscore {

// What the service returns for one scored account.
struct ScoreReport {
    std::string screen_name;
    SuiteScores scores;
    int tweets_used = 0;
    int mentions_used = 0;
    std::string model_version;
    Timestamp timestamp = 0;
    nlohmann::json detail;  // null unless plot data was requested
};

nlohmann::json report_to_json(const ScoreReport& report);
// Throws SchemaError.
ScoreReport report_from_json(const nlohmann::json& doc);

}  // namespace botscore
