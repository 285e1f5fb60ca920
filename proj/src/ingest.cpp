#include "botscore/ingest.hpp"

#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <sstream>

#include <httplib.h>

#include "botscore/digest.hpp"
#include "botscore/errors.hpp"

namespace botscore {

namespace {

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFile("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string corpus_digest(std::string_view bots, std::string_view humans) {
    return Digest{}.update("bots\n").update(bots).update("humans\n").update(humans).hex();
}

void load_jsonl(const std::filesystem::path& path, int label, LabeledCorpus& corpus, const std::string& text) {
    std::size_t line_no = 0, pos = 0;
    const std::string name = path.filename().string();
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            corpus.accounts.push_back(parse_snapshot(line));
            corpus.labels.push_back(label);
        } catch (const Error& e) {
            throw ParseError(name + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

}  // namespace

bool valid_screen_name(std::string_view name) {
    if (name.empty() || name.size() > 50) return false;
    for (char c : name)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
}

DataSourceConfig source_config_from_json(const nlohmann::json& doc) {
    DataSourceConfig c;
    std::string kind = doc.value("kind", "fixture_dir");
    if (kind == "fixture_dir")
        c.kind = BackendKind::fixture_dir;
    else if (kind == "http_backend")
        c.kind = BackendKind::http_backend;
    else
        throw Error("unknown source kind '" + kind + "'");
    c.root = doc.value("root", "");
    c.base_url = doc.value("base_url", "");
    c.auth_token_env = doc.value("auth_token_env", "");
    c.max_concurrent_requests = doc.value("max_concurrent_requests", 4);
    c.timeout_seconds = doc.value("timeout_seconds", 10);
    return c;
}

nlohmann::json source_config_to_json(const DataSourceConfig& c) {
    return {{"kind", c.kind == BackendKind::fixture_dir ? "fixture_dir" : "http_backend"},
            {"root", c.root.string()},
            {"base_url", c.base_url},
            {"auth_token_env", c.auth_token_env},
            {"max_concurrent_requests", c.max_concurrent_requests},
            {"timeout_seconds", c.timeout_seconds}};
}

FixtureSource::FixtureSource(std::filesystem::path root) : root_(std::move(root)) {}

AccountSnapshot FixtureSource::fetch_account(std::string_view screen_name, std::vector<std::string>* warnings) const {
    if (!valid_screen_name(screen_name)) throw NotFound("no account '" + std::string(screen_name) + "'");
    auto path = root_ / (std::string(screen_name) + ".json");
    std::error_code ec;
    if (!std::filesystem::is_regular_file(path, ec)) path = root_ / (ascii_lower(screen_name) + ".json");
    if (!std::filesystem::is_regular_file(path, ec)) throw NotFound("no account '" + std::string(screen_name) + "'");
    return parse_snapshot(read_text(path), warnings);
}

struct HttpSource::Impl {
    DataSourceConfig config;
    std::string scheme_host_port;
    std::string prefix;
    mutable std::counting_semaphore<1024> slots;

    explicit Impl(DataSourceConfig c)
        : config(std::move(c)), slots(std::clamp(config.max_concurrent_requests, 1, 1024)) {
        const std::string& url = config.base_url;
        auto scheme_end = url.find("://");
        if (scheme_end == std::string::npos) throw Error("http backend base_url needs a scheme: '" + url + "'");
        auto path_start = url.find('/', scheme_end + 3);
        scheme_host_port = url.substr(0, path_start);
        prefix = path_start == std::string::npos ? "" : url.substr(path_start);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }
};

HttpSource::HttpSource(DataSourceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}
HttpSource::~HttpSource() = default;

AccountSnapshot HttpSource::fetch_account(std::string_view screen_name, std::vector<std::string>* warnings) const {
    if (!valid_screen_name(screen_name)) throw NotFound("no account '" + std::string(screen_name) + "'");
    impl_->slots.acquire();
    struct Release {
        std::counting_semaphore<1024>& s;
        ~Release() { s.release(); }
    } release{impl_->slots};

    httplib::Client client(impl_->scheme_host_port);
    client.set_connection_timeout(impl_->config.timeout_seconds, 0);
    client.set_read_timeout(impl_->config.timeout_seconds, 0);
    httplib::Headers headers;
    if (!impl_->config.auth_token_env.empty())
        if (const char* token = std::getenv(impl_->config.auth_token_env.c_str()); token && *token)
            headers.emplace("Authorization", std::string("Bearer ") + token);

    auto res = client.Get(impl_->prefix + "/accounts/" + std::string(screen_name), headers);
    if (!res) throw UpstreamError("upstream request failed: " + httplib::to_string(res.error()));
    if (res->status == 404) throw NotFound("no account '" + std::string(screen_name) + "'");
    if (res->status < 200 || res->status >= 300)
        throw UpstreamError("upstream returned HTTP " + std::to_string(res->status));
    return parse_snapshot(res->body, warnings);
}

std::unique_ptr<AccountSource> make_source(const DataSourceConfig& config) {
    if (config.kind == BackendKind::http_backend) return std::make_unique<HttpSource>(config);
    return std::make_unique<FixtureSource>(config.root);
}

LabeledCorpus load_corpus(const std::filesystem::path& dir) {
    auto bots_path = dir / "bots.jsonl";
    auto humans_path = dir / "humans.jsonl";
    std::error_code ec;
    for (const auto& p : {bots_path, humans_path})
        if (!std::filesystem::is_regular_file(p, ec)) throw MissingFile("corpus file missing: " + p.string());
    std::string bots = read_text(bots_path);
    std::string humans = read_text(humans_path);
    LabeledCorpus corpus;
    load_jsonl(bots_path, 1, corpus, bots);
    load_jsonl(humans_path, 0, corpus, humans);
    corpus.digest = corpus_digest(bots, humans);
    return corpus;
}

namespace {
std::pair<std::string, std::string> corpus_files(const LabeledCorpus& corpus) {
    std::string bots, humans;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        (corpus.labels[i] ? bots : humans) += serialize_snapshot(corpus.accounts[i]) + "\n";
    return {std::move(bots), std::move(humans)};
}
}  // namespace

std::string compute_corpus_digest(const LabeledCorpus& corpus) {
    auto [bots, humans] = corpus_files(corpus);
    return corpus_digest(bots, humans);
}

std::string write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto [bots, humans] = corpus_files(corpus);
    for (const auto& [name, text] : {std::pair{"bots.jsonl", &bots}, std::pair{"humans.jsonl", &humans}}) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw StorageError("cannot write " + (dir / name).string());
        out << *text;
    }
    return corpus_digest(bots, humans);
}

}  // namespace botscore
