#include "botscore/datastore.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <unistd.h>
#include <zlib.h>

#include "botscore/account.hpp"
#include "botscore/binary_io.hpp"
#include "botscore/errors.hpp"

namespace botscore {

namespace {

constexpr std::string_view kLogMagic = "BSLG";
constexpr std::uint32_t kLogVersion = 1;
constexpr std::size_t kHeaderSize = 8;
constexpr std::uint32_t kMaxPayload = 1u << 20;

std::uint32_t checksum(std::string_view payload) {
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
}

std::string encode_record(const ScoreStoreEntry& e) {
    BinaryWriter payload;
    payload.str(e.account_key);
    for (double s : e.scores.values) payload.f64(s);
    payload.str(e.model_version);
    payload.u64(static_cast<std::uint64_t>(e.timestamp));
    BinaryWriter rec;
    rec.u32(static_cast<std::uint32_t>(payload.data().size()));
    rec.u32(checksum(payload.data()));
    rec.bytes(payload.data());
    return rec.take();
}

ScoreStoreEntry decode_payload(std::string_view payload) {
    BinaryReader r(payload);
    ScoreStoreEntry e;
    e.account_key = r.str();
    for (double& s : e.scores.values) s = r.f64();
    e.model_version = r.str();
    e.timestamp = static_cast<Timestamp>(r.u64());
    if (!r.at_end()) throw ModelFormatError("trailing bytes in record");
    return e;
}

std::string header_bytes() {
    BinaryWriter w;
    w.bytes(kLogMagic);
    w.u32(kLogVersion);
    return w.take();
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StorageError("cannot read score store " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Valid records in `bytes` and the offset just past the last one.
std::pair<std::vector<ScoreStoreEntry>, std::size_t> scan_log(std::string_view bytes) {
    std::vector<ScoreStoreEntry> out;
    std::size_t pos = kHeaderSize;
    while (bytes.size() - pos >= 8) {
        BinaryReader r(bytes.substr(pos, 8));
        std::uint32_t len = r.u32();
        std::uint32_t crc = r.u32();
        if (len > kMaxPayload || bytes.size() - pos - 8 < len) break;
        std::string_view payload = bytes.substr(pos + 8, len);
        if (checksum(payload) != crc) break;
        try {
            out.push_back(decode_payload(payload));
        } catch (const Error&) {
            break;
        }
        pos += 8 + len;
    }
    return {std::move(out), pos};
}

void sync_file(std::FILE* f, const std::filesystem::path& path) {
    if (std::fflush(f) != 0 || ::fsync(::fileno(f)) != 0) throw StorageError("failed to flush " + path.string());
}

}  // namespace

std::string normalize_account_key(std::string_view screen_name) {
    std::string key = ascii_lower(screen_name);
    if (!key.empty() && key.front() == '@') key.erase(0, 1);
    return key;
}

ScoreStore::ScoreStore(std::filesystem::path path) : path_(std::move(path)) { open_and_replay(); }

ScoreStore::~ScoreStore() {
    if (file_) std::fclose(file_);
}

void ScoreStore::open_and_replay() {
    std::error_code ec;
    if (!std::filesystem::exists(path_, ec) || std::filesystem::file_size(path_, ec) == 0) {
        if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path(), ec);
        std::FILE* f = std::fopen(path_.c_str(), "wb");
        if (!f) throw StorageError("cannot create score store " + path_.string());
        std::string header = header_bytes();
        std::fwrite(header.data(), 1, header.size(), f);
        sync_file(f, path_);
        std::fclose(f);
    }

    std::string bytes = read_all(path_);
    if (bytes.size() < kHeaderSize || std::string_view(bytes).substr(0, 4) != kLogMagic)
        throw StorageError(path_.string() + " is not a score store (bad magic)");
    if (BinaryReader(std::string_view(bytes).substr(4, 4)).u32() != kLogVersion)
        throw StorageError(path_.string() + " has an unsupported store version");

    auto [entries, valid_end] = scan_log(bytes);
    if (valid_end < bytes.size()) {
        recovered_bytes_ = bytes.size() - valid_end;
        std::filesystem::resize_file(path_, valid_end, ec);
        if (ec) throw StorageError("cannot truncate torn tail of " + path_.string() + ": " + ec.message());
    }
    records_ = entries.size();
    for (auto& e : entries) {
        last_timestamp_ = std::max(last_timestamp_, e.timestamp);
        latest_[e.account_key] = std::move(e);
    }
    file_ = std::fopen(path_.c_str(), "ab");
    if (!file_) throw StorageError("cannot open score store for append " + path_.string());
}

void ScoreStore::append_raw(const std::string& record) {
    if (std::fwrite(record.data(), 1, record.size(), file_) != record.size())
        throw StorageError("short write to " + path_.string());
    sync_file(file_, path_);
}

void ScoreStore::record(ScoreStoreEntry entry) {
    entry.account_key = normalize_account_key(entry.account_key);
    if (entry.account_key.empty()) throw StorageError("score store entries need an account key");
    for (double s : entry.scores.values)
        if (!(s >= 0.0 && s <= 1.0)) throw StorageError("score outside [0,1]");
    std::unique_lock lock(mutex_);
    entry.timestamp = std::max(entry.timestamp, last_timestamp_);
    append_raw(encode_record(entry));
    last_timestamp_ = entry.timestamp;
    ++records_;
    latest_[entry.account_key] = std::move(entry);
}

std::optional<ScoreStoreEntry> ScoreStore::read_latest(std::string_view screen_name) const {
    std::shared_lock lock(mutex_);
    auto it = latest_.find(normalize_account_key(screen_name));
    if (it == latest_.end()) return std::nullopt;
    return it->second;
}

std::map<std::string, double> ScoreStore::unique_account_scores() const {
    std::shared_lock lock(mutex_);
    std::map<std::string, double> out;
    for (const auto& [key, e] : latest_) out.emplace(key, e.scores.overall());
    return out;
}

std::size_t ScoreStore::unique_accounts() const {
    std::shared_lock lock(mutex_);
    return latest_.size();
}

std::size_t ScoreStore::record_count() const {
    std::shared_lock lock(mutex_);
    return records_;
}

double ScoreStore::cumulative_fraction(double threshold) const {
    std::shared_lock lock(mutex_);
    if (latest_.empty()) throw EmptyStore("score store is empty");
    std::size_t below = 0;
    for (const auto& [key, e] : latest_)
        if (e.scores.overall() <= threshold) ++below;
    return static_cast<double>(below) / static_cast<double>(latest_.size());
}

std::vector<CdfPoint> ScoreStore::score_cdf(int bins) const {
    if (bins < 1) throw Error("score_cdf: bins must be >= 1");
    std::vector<double> scores;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [key, e] : latest_) scores.push_back(e.scores.overall());
    }
    if (scores.empty()) throw EmptyStore("score store is empty");
    std::sort(scores.begin(), scores.end());
    std::vector<CdfPoint> out;
    const double n = static_cast<double>(scores.size());
    for (int i = 0; i <= bins; ++i) {
        double t = static_cast<double>(i) / static_cast<double>(bins);
        auto below = std::upper_bound(scores.begin(), scores.end(), t) - scores.begin();
        out.push_back({t, static_cast<double>(below) / n});
    }
    return out;
}

std::vector<ScoreStoreEntry> ScoreStore::entries() const {
    std::shared_lock lock(mutex_);
    std::string bytes = read_all(path_);
    return scan_log(bytes).first;
}

void ScoreStore::compact() {
    std::unique_lock lock(mutex_);
    std::vector<const ScoreStoreEntry*> keep;
    for (const auto& [key, e] : latest_) keep.push_back(&e);
    std::sort(keep.begin(), keep.end(), [](const auto* a, const auto* b) {
        return a->timestamp != b->timestamp ? a->timestamp < b->timestamp : a->account_key < b->account_key;
    });
    auto tmp = path_;
    tmp += ".compact";
    std::FILE* f = std::fopen(tmp.c_str(), "wb");
    if (!f) throw StorageError("cannot create " + tmp.string());
    std::string out = header_bytes();
    for (const auto* e : keep) out += encode_record(*e);
    bool ok = std::fwrite(out.data(), 1, out.size(), f) == out.size();
    ok = ok && std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
    std::fclose(f);
    if (!ok) throw StorageError("failed writing " + tmp.string());
    std::fclose(file_);
    file_ = nullptr;
    std::error_code ec;
    std::filesystem::rename(tmp, path_, ec);
    if (ec) throw StorageError("cannot replace " + path_.string() + ": " + ec.message());
    file_ = std::fopen(path_.c_str(), "ab");
    if (!file_) throw StorageError("cannot reopen " + path_.string());
    records_ = keep.size();
}

}  // namespace botscore
