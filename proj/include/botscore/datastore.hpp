#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "botscore/suite.hpp"
#include "botscore/time.hpp"

namespace botscore {

// One persisted classification. Holds the scored account and nothing about
// whoever asked for it.
struct ScoreStoreEntry {
    std::string account_key;  // case-folded screen name
    SuiteScores scores;
    std::string model_version;
    Timestamp timestamp = 0;
};

struct CdfPoint {
    double threshold = 0.0;
    double fraction = 0.0;
};

std::string normalize_account_key(std::string_view screen_name);

// Append-only score log with an in-memory latest-per-account index.
//
// File layout (little-endian):
//   header  "BSLG" u32 version
//   record  u32 payload_length, u32 crc32(payload), payload
//   payload str key, 7 x f64 scores, str model_version, i64 timestamp
//   (str = u32 length + bytes)
// Opening replays the log and truncates a torn or corrupt tail, so the store
// always reopens to the longest valid prefix of acknowledged appends.
class ScoreStore {
public:
    // Creates the file if absent. Throws StorageError.
    explicit ScoreStore(std::filesystem::path path);
    ~ScoreStore();
    ScoreStore(const ScoreStore&) = delete;
    ScoreStore& operator=(const ScoreStore&) = delete;

    // Durably appends; the entry's key is normalized and its timestamp is
    // raised to the last written one if it would go backwards.
    void record(ScoreStoreEntry entry);

    std::optional<ScoreStoreEntry> read_latest(std::string_view screen_name) const;
    std::map<std::string, double> unique_account_scores() const;
    std::size_t unique_accounts() const;
    std::size_t record_count() const;
    bool empty() const { return record_count() == 0; }

    // Cumulative fraction of latest overall scores <= threshold.
    double cumulative_fraction(double threshold) const;
    // bins + 1 points at thresholds i / bins. Throws EmptyStore.
    std::vector<CdfPoint> score_cdf(int bins) const;

    // Every record in log order, read back from disk.
    std::vector<ScoreStoreEntry> entries() const;

    // Rewrites the log keeping only the latest entry per account.
    void compact();

    // Bytes dropped from the tail by the last open (0 when clean).
    std::uintmax_t recovered_bytes() const noexcept { return recovered_bytes_; }
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    void open_and_replay();
    void append_raw(const std::string& record);

    std::filesystem::path path_;
    std::FILE* file_ = nullptr;
    mutable std::shared_mutex mutex_;
    std::map<std::string, ScoreStoreEntry> latest_;
    std::size_t records_ = 0;
    Timestamp last_timestamp_ = 0;
    std::uintmax_t recovered_bytes_ = 0;
};

}  // namespace botscore
