#include "botscore/service.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "botscore/errors.hpp"
#include "botscore/features.hpp"

namespace botscore {

namespace {

constexpr int kMaxCdfBins = 1000;

ServiceResponse json_response(int status, const nlohmann::json& body) {
    ServiceResponse r;
    r.status = status;
    r.headers.emplace_back("Content-Type", "application/json");
    r.body = body.dump();
    return r;
}

ServiceResponse error_response(int status, std::string_view code, std::string_view message) {
    return json_response(status, {{"error", {{"code", code}, {"message", message}}}});
}

void add_rate_headers(ServiceResponse& r, const RateLimitConfig& cfg, const RateDecision& d) {
    r.headers.emplace_back("X-RateLimit-Limit", std::to_string(cfg.limit));
    r.headers.emplace_back("X-RateLimit-Remaining", std::to_string(d.remaining));
    r.headers.emplace_back("X-RateLimit-Reset", std::to_string(d.reset_at));
}

int parse_int(const std::string& text, const char* what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw Error(std::string(what) + ": not an integer: '" + text + "'");
    return v;
}

}  // namespace

std::string ServiceResponse::header(std::string_view name) const {
    for (const auto& [k, v] : headers)
        if (ascii_lower(k) == ascii_lower(name)) return v;
    return "";
}

ServiceConfig service_config_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("service config must be a JSON object");
    ServiceConfig c;
    c.host = doc.value("host", c.host);
    c.port = doc.value("port", c.port);
    c.model_path = doc.value("model", c.model_path.string());
    c.store_path = doc.value("store", c.store_path.string());
    if (doc.contains("source")) c.source = source_config_from_json(doc.at("source"));
    if (doc.contains("rate_limit")) {
        const auto& rl = doc.at("rate_limit");
        c.rate_limit.limit = rl.value("limit", c.rate_limit.limit);
        c.rate_limit.window_seconds = rl.value("window_seconds", c.rate_limit.window_seconds);
    }
    c.cors_origin = doc.value("cors_origin", c.cors_origin);
    c.lexicon_dir = doc.value("lexicons", c.lexicon_dir.string());
    c.threads = doc.value("threads", c.threads);
    return c;
}

nlohmann::json service_config_to_json(const ServiceConfig& c) {
    return {{"host", c.host},
            {"port", c.port},
            {"model", c.model_path.string()},
            {"store", c.store_path.string()},
            {"source", source_config_to_json(c.source)},
            {"rate_limit", {{"limit", c.rate_limit.limit}, {"window_seconds", c.rate_limit.window_seconds}}},
            {"cors_origin", c.cors_origin},
            {"lexicons", c.lexicon_dir.string()},
            {"threads", c.threads}};
}

ServiceConfig load_service_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingFile("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return service_config_from_json(nlohmann::json::parse(ss.str()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void apply_env_overrides(ServiceConfig& c, const std::function<const char*(const char*)>& getenv_fn) {
    auto get = [&](const char* name) -> const char* {
        const char* v = getenv_fn ? getenv_fn(name) : std::getenv(name);
        return v && *v ? v : nullptr;
    };
    if (auto v = get("BOTSCORE_HOST")) c.host = v;
    if (auto v = get("BOTSCORE_PORT")) c.port = parse_int(v, "BOTSCORE_PORT");
    if (auto v = get("BOTSCORE_MODEL")) c.model_path = v;
    if (auto v = get("BOTSCORE_STORE")) c.store_path = v;
    if (auto v = get("BOTSCORE_SOURCE_KIND")) c.source = source_config_from_json({{"kind", v}, {"root", c.source.root.string()},
                                                                                  {"base_url", c.source.base_url}});
    if (auto v = get("BOTSCORE_FIXTURES")) c.source.root = v;
    if (auto v = get("BOTSCORE_SOURCE_URL")) c.source.base_url = v;
    if (auto v = get("BOTSCORE_SOURCE_TOKEN_ENV")) c.source.auth_token_env = v;
    if (auto v = get("BOTSCORE_RATE_LIMIT")) c.rate_limit.limit = parse_int(v, "BOTSCORE_RATE_LIMIT");
    if (auto v = get("BOTSCORE_RATE_WINDOW")) c.rate_limit.window_seconds = parse_int(v, "BOTSCORE_RATE_WINDOW");
    if (auto v = get("BOTSCORE_CORS_ORIGIN")) c.cors_origin = v;
    if (auto v = get("BOTSCORE_LEXICONS")) c.lexicon_dir = v;
    if (auto v = get("BOTSCORE_THREADS")) c.threads = parse_int(v, "BOTSCORE_THREADS");
}

nlohmann::json detail_plots(const AccountSnapshot& snapshot) {
    static constexpr std::array<double, 12> kEdges = {0,     10,    60,    300,    900,    3600,
                                                      10800, 21600, 43200, 86400, 259200, 604800};
    std::vector<long> counts(kEdges.size(), 0);
    for (double gap : inter_arrival_seconds(snapshot.tweets)) {
        auto it = std::upper_bound(kEdges.begin(), kEdges.end(), gap);
        ++counts[static_cast<std::size_t>(std::distance(kEdges.begin(), it)) - 1];
    }
    nlohmann::json edges = nlohmann::json::array();
    for (double e : kEdges) edges.push_back(e);
    auto hours = hour_of_day_counts(snapshot.tweets);
    nlohmann::json hour_counts = nlohmann::json::array();
    for (double h : hours) hour_counts.push_back(static_cast<long>(h));
    return {{"interval_histogram", {{"lower_edges_seconds", edges}, {"counts", counts}}},
            {"hour_of_day", {{"timezone", "UTC"}, {"counts", hour_counts}}}};
}

ScoringService::ScoringService(std::shared_ptr<const ScoreSuiteModel> model, Lexicons lexicons,
                               std::shared_ptr<const AccountSource> source, std::shared_ptr<ScoreStore> store,
                               RateLimitConfig rate_limit, Clock clock)
    : model_(std::move(model)),
      lexicons_(std::move(lexicons)),
      source_(std::move(source)),
      store_(std::move(store)),
      limiter_(rate_limit),
      clock_(std::move(clock)) {
    if (!model_ || !store_) throw Error("service needs a model and a store");
    if (model_->registry_digest != default_registry().digest())
        throw RegistryMismatch("model registry " + model_->registry_digest + " does not match features " +
                               default_registry().digest());
    model_version_ = model_->version_digest();
}

std::string ScoringService::rate_key(const ServiceRequest& request) {
    auto it = request.headers.find("x-api-key");
    if (it != request.headers.end() && !it->second.empty()) return "key:" + it->second;
    return "addr:" + request.client_address;
}

ScoreReport ScoringService::score(const AccountSnapshot& snapshot, bool detail) const {
    ScoreReport r;
    r.screen_name = snapshot.user.screen_name;
    r.scores = score_suite(*model_, extract_all(snapshot, default_registry(), lexicons_));
    r.tweets_used = static_cast<int>(snapshot.tweets.size());
    r.mentions_used = static_cast<int>(snapshot.mentions.size());
    r.model_version = model_version_;
    r.timestamp = clock_();
    if (detail) r.detail = detail_plots(snapshot);
    return r;
}

std::optional<ServiceResponse> ScoringService::check_rate(const ServiceRequest& request, RateDecision& out) {
    Timestamp now = clock_();
    out = limiter_.allow_request(rate_key(request), now);
    if (out.allowed) return std::nullopt;
    auto r = error_response(429, "rate_limited", "rate limit exceeded");
    add_rate_headers(r, limiter_.config(), out);
    r.headers.emplace_back("Retry-After", std::to_string(std::max<Timestamp>(1, out.reset_at - now)));
    return r;
}

ServiceResponse ScoringService::scored(const AccountSnapshot& snapshot, const ServiceRequest& request,
                                       const RateDecision& d) {
    auto q = request.query.find("detail");
    bool detail = q != request.query.end() && (q->second == "1" || q->second == "true");
    ScoreReport report = score(snapshot, detail);
    store_->record({normalize_account_key(report.screen_name), report.scores, report.model_version, report.timestamp});
    auto r = json_response(200, report_to_json(report));
    add_rate_headers(r, limiter_.config(), d);
    return r;
}

ServiceResponse ScoringService::score_by_name(std::string_view screen_name, const ServiceRequest& request) {
    RateDecision d;
    if (auto denied = check_rate(request, d)) return *denied;
    ServiceResponse r;
    try {
        if (!valid_screen_name(screen_name)) {
            r = error_response(400, "invalid_screen_name", "invalid screen name");
        } else if (!source_) {
            r = error_response(502, "upstream_error", "no account source configured");
        } else {
            AccountSnapshot snap;
            try {
                snap = source_->fetch_account(screen_name);
            } catch (const ParseError& e) {
                throw UpstreamError(std::string("source returned an invalid snapshot: ") + e.what());
            } catch (const SchemaError& e) {
                throw UpstreamError(std::string("source returned an invalid snapshot: ") + e.what());
            }
            return scored(snap, request, d);
        }
    } catch (const NotFound& e) {
        r = error_response(404, "not_found", e.what());
    } catch (const UpstreamError& e) {
        r = error_response(502, "upstream_error", e.what());
    } catch (const std::exception& e) {
        r = error_response(500, "internal_error", e.what());
    }
    add_rate_headers(r, limiter_.config(), d);
    return r;
}

ServiceResponse ScoringService::score_snapshot(const ServiceRequest& request) {
    RateDecision d;
    if (auto denied = check_rate(request, d)) return *denied;
    ServiceResponse r;
    try {
        return scored(parse_snapshot(request.body), request, d);
    } catch (const SchemaError& e) {
        r = json_response(400, {{"error", {{"code", "schema_error"}, {"message", e.what()}, {"field", e.field()}}}});
    } catch (const ParseError& e) {
        r = error_response(400, "parse_error", e.what());
    } catch (const std::exception& e) {
        r = error_response(500, "internal_error", e.what());
    }
    add_rate_headers(r, limiter_.config(), d);
    return r;
}

ServiceResponse ScoringService::cdf(const ServiceRequest& request) const {
    int bins = 10;
    if (auto it = request.query.find("bins"); it != request.query.end()) {
        try {
            bins = parse_int(it->second, "bins");
        } catch (const Error& e) {
            return error_response(400, "invalid_bins", e.what());
        }
        if (bins < 1 || bins > kMaxCdfBins)
            return error_response(400, "invalid_bins", "bins must be in [1, " + std::to_string(kMaxCdfBins) + "]");
    }
    if (store_->empty()) {
        ServiceResponse r;
        r.status = 204;
        return r;
    }
    try {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& p : store_->score_cdf(bins))
            points.push_back({{"threshold", p.threshold}, {"fraction", p.fraction}});
        return json_response(200, {{"bins", bins}, {"unique_accounts", store_->unique_accounts()}, {"points", points}});
    } catch (const EmptyStore&) {
        ServiceResponse r;
        r.status = 204;
        return r;
    }
}

ServiceResponse ScoringService::health() const {
    return json_response(200, {{"status", "ok"},
                               {"build", kServiceVersion},
                               {"model_version", model_version_},
                               {"registry_digest", model_->registry_digest},
                               {"feature_count", default_registry().size()},
                               {"store_records", store_->record_count()}});
}

}  // namespace botscore
