#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "botscore/account.hpp"

namespace botscore {

enum class BackendKind { fixture_dir, http_backend };

struct DataSourceConfig {
    BackendKind kind = BackendKind::fixture_dir;
    std::filesystem::path root;        // fixture_dir
    std::string base_url;              // http_backend, e.g. http://host:8080/prefix
    std::string auth_token_env;        // name of the env var holding a bearer token
    int max_concurrent_requests = 4;   // http_backend ceiling
    int timeout_seconds = 10;
};

// Parses {"kind": "fixture_dir"|"http_backend", "root", "base_url",
// "auth_token_env", "max_concurrent_requests", "timeout_seconds"}.
DataSourceConfig source_config_from_json(const nlohmann::json& doc);
nlohmann::json source_config_to_json(const DataSourceConfig& config);

// Where account snapshots come from. Implementations are shareable across
// threads; every returned snapshot respects the collection caps.
class AccountSource {
public:
    virtual ~AccountSource() = default;
    // Throws NotFound, UpstreamError, SchemaError / ParseError.
    virtual AccountSnapshot fetch_account(std::string_view screen_name,
                                          std::vector<std::string>* warnings = nullptr) const = 0;
};

// Reads `<root>/<screen_name>.json` (falling back to the lowercased name).
class FixtureSource final : public AccountSource {
public:
    explicit FixtureSource(std::filesystem::path root);
    AccountSnapshot fetch_account(std::string_view screen_name,
                                  std::vector<std::string>* warnings = nullptr) const override;

private:
    std::filesystem::path root_;
};

// Issues GET `<base>/accounts/<screen_name>` and expects the snapshot schema.
class HttpSource final : public AccountSource {
public:
    explicit HttpSource(DataSourceConfig config);
    ~HttpSource() override;
    AccountSnapshot fetch_account(std::string_view screen_name,
                                  std::vector<std::string>* warnings = nullptr) const override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::unique_ptr<AccountSource> make_source(const DataSourceConfig& config);

// Screen names are 1-50 characters of [A-Za-z0-9_].
bool valid_screen_name(std::string_view name);

struct LabeledCorpus {
    std::vector<AccountSnapshot> accounts;
    std::vector<int> labels;  // 1 = bot, 0 = human
    std::string digest;

    std::size_t size() const noexcept { return accounts.size(); }
};

// Reads `bots.jsonl` and `humans.jsonl` (one snapshot document per line).
// Throws MissingFile, or ParseError naming the file and line.
LabeledCorpus load_corpus(const std::filesystem::path& dir);

// Digest of the JSONL serialization (equal to what load_corpus reports
// after write_corpus).
std::string compute_corpus_digest(const LabeledCorpus& corpus);

// Writes the two JSONL files and returns the digest load_corpus would report.
std::string write_corpus(const LabeledCorpus& corpus, const std::filesystem::path& dir);

}  // namespace botscore
