#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "botscore/time.hpp"

namespace botscore {

inline constexpr std::size_t kMaxTweets = 200;
inline constexpr std::size_t kMaxMentions = 100;

struct ContactMeta {
    std::string user_id;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t statuses_count = 0;
    Timestamp created_at = 0;

    bool operator==(const ContactMeta&) const = default;
};

struct MentionedUser {
    std::string user_id;
    std::string screen_name;

    bool operator==(const MentionedUser&) const = default;
};

struct Tweet {
    std::string tweet_id;
    std::string author_id;
    Timestamp created_at = 0;
    std::string text;
    std::vector<std::string> hashtags;  // lowercase, deduplicated
    std::vector<MentionedUser> mentioned_users;
    std::int64_t url_count = 0;
    bool is_retweet = false;
    std::optional<ContactMeta> retweeted_author;  // present iff is_retweet
    bool is_reply = false;
    std::int64_t retweet_count = 0;
    std::int64_t favorite_count = 0;
    std::string source_client;
    // Metadata of the author, when the data producer embeds it (mention tweets).
    std::optional<ContactMeta> author;

    bool operator==(const Tweet&) const = default;
};

struct UserMeta {
    std::string user_id;
    std::string screen_name;
    std::string display_name;
    std::string description;
    std::string language;
    std::string location;
    bool url_present = false;
    Timestamp created_at = 0;
    std::int64_t followers_count = 0;
    std::int64_t friends_count = 0;
    std::int64_t statuses_count = 0;
    std::int64_t listed_count = 0;
    std::int64_t favourites_count = 0;
    bool verified = false;
    bool default_profile = false;

    bool operator==(const UserMeta&) const = default;
};

// One account's recent activity; the unit of scoring. Tweets are newest first.
struct AccountSnapshot {
    UserMeta user;
    std::vector<Tweet> tweets;
    std::vector<Tweet> mentions;
    std::vector<ContactMeta> contacts;
    Timestamp captured_at = 0;

    bool operator==(const AccountSnapshot&) const = default;
};

// Validates and normalizes a snapshot document. Over-cap tweet/mention lists
// are cut to the newest kMaxTweets/kMaxMentions; a message is appended to
// `warnings` when given. Throws ParseError or SchemaError.
AccountSnapshot parse_snapshot(std::string_view document,
                               std::vector<std::string>* warnings = nullptr);
AccountSnapshot snapshot_from_json(const nlohmann::json& doc,
                                   std::vector<std::string>* warnings = nullptr);

nlohmann::json snapshot_to_json(const AccountSnapshot& snapshot);
std::string serialize_snapshot(const AccountSnapshot& snapshot);

// Union of embedded contacts, retweeted authors and embedded mention authors,
// one entry per user_id (most recently observed wins), sorted by user_id.
std::vector<ContactMeta> derive_contacts(const AccountSnapshot& snapshot);

// Lowercase ASCII; non-ASCII bytes are passed through.
std::string ascii_lower(std::string_view s);

}  // namespace botscore
