#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "botscore/datastore.hpp"
#include "botscore/ingest.hpp"
#include "botscore/lexicons.hpp"
#include "botscore/rate_limiter.hpp"
#include "botscore/report.hpp"
#include "botscore/suite.hpp"

namespace botscore {

inline constexpr const char* kServiceVersion = "botscore/1.0.0";

// Service settings. Loaded from a JSON file, then overridden by environment:
//   BOTSCORE_HOST, BOTSCORE_PORT, BOTSCORE_MODEL, BOTSCORE_STORE,
//   BOTSCORE_SOURCE_KIND, BOTSCORE_FIXTURES, BOTSCORE_SOURCE_URL,
//   BOTSCORE_SOURCE_TOKEN_ENV, BOTSCORE_RATE_LIMIT, BOTSCORE_RATE_WINDOW,
//   BOTSCORE_CORS_ORIGIN, BOTSCORE_LEXICONS, BOTSCORE_THREADS
struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::filesystem::path model_path = "model.bin";
    std::filesystem::path store_path = "scores.log";
    DataSourceConfig source{BackendKind::fixture_dir, "fixtures", "", "", 4, 10};
    RateLimitConfig rate_limit;
    std::string cors_origin = "*";
    std::filesystem::path lexicon_dir;  // empty = default_lexicon_dir()
    int threads = 8;
};

// JSON keys mirror the struct: host, port, model, store, source{...},
// rate_limit{limit, window_seconds}, cors_origin, lexicons, threads.
ServiceConfig service_config_from_json(const nlohmann::json& doc);
nlohmann::json service_config_to_json(const ServiceConfig& config);
// Throws MissingFile / ParseError.
ServiceConfig load_service_config(const std::filesystem::path& path);
// Mutates `config` from BOTSCORE_* variables; `getenv` is injectable for tests.
void apply_env_overrides(ServiceConfig& config,
                         const std::function<const char*(const char*)>& getenv_fn = nullptr);

struct ServiceRequest {
    std::string client_address;
    std::map<std::string, std::string> headers;  // lowercase names
    std::map<std::string, std::string> query;
    std::string body;
};

struct ServiceResponse {
    int status = 200;
    std::vector<std::pair<std::string, std::string>> headers;
    std::string body;

    std::string header(std::string_view name) const;
};

using Clock = std::function<Timestamp()>;

// Framework-independent request handlers. The model, lexicons and source are
// shared read-only; the store and limiter synchronize internally.
class ScoringService {
public:
    // Throws RegistryMismatch if the model was trained on another registry.
    ScoringService(std::shared_ptr<const ScoreSuiteModel> model, Lexicons lexicons,
                   std::shared_ptr<const AccountSource> source, std::shared_ptr<ScoreStore> store,
                   RateLimitConfig rate_limit = {}, Clock clock = now_utc);

    ServiceResponse score_by_name(std::string_view screen_name, const ServiceRequest& request);
    ServiceResponse score_snapshot(const ServiceRequest& request);
    ServiceResponse cdf(const ServiceRequest& request) const;
    ServiceResponse health() const;

    // Scores without rate limiting or persistence.
    ScoreReport score(const AccountSnapshot& snapshot, bool detail) const;

    // The API key when given, else the client address.
    static std::string rate_key(const ServiceRequest& request);

    const RateLimiter& limiter() const noexcept { return limiter_; }
    const ScoreStore& store() const noexcept { return *store_; }

private:
    ServiceResponse scored(const AccountSnapshot& snapshot, const ServiceRequest& request, const RateDecision& d);
    std::optional<ServiceResponse> check_rate(const ServiceRequest& request, RateDecision& out);

    std::shared_ptr<const ScoreSuiteModel> model_;
    std::string model_version_;
    Lexicons lexicons_;
    std::shared_ptr<const AccountSource> source_;
    std::shared_ptr<ScoreStore> store_;
    RateLimiter limiter_;
    Clock clock_;
};

// Plot data for one account: inter-tweet interval histogram over fixed
// second edges and tweets per UTC hour.
nlohmann::json detail_plots(const AccountSnapshot& snapshot);

}  // namespace botscore
