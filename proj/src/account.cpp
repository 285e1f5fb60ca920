#include "botscore/account.hpp"

#include <algorithm>
#include <map>

#include "botscore/errors.hpp"

namespace botscore {

using nlohmann::json;

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

namespace {

// Reads typed fields from one JSON object and reports the full path on error.
class FieldReader {
public:
    FieldReader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj_.is_object()) throw SchemaError(path_, "expected an object");
    }

    std::string field_path(std::string_view key) const {
        return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    }

    const json* find(std::string_view key) const {
        auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) return nullptr;
        return &*it;
    }

    const json& require(std::string_view key) const {
        const json* v = find(key);
        if (!v) throw SchemaError(field_path(key), "missing required field");
        return *v;
    }

    std::string string_or(std::string_view key, std::string fallback) const {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_string()) throw SchemaError(field_path(key), "expected a string");
        return v->get<std::string>();
    }

    std::string required_string(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_string()) throw SchemaError(field_path(key), "expected a string");
        return v.get<std::string>();
    }

    std::int64_t count(std::string_view key, bool required) const {
        const json* v = required ? &require(key) : find(key);
        if (!v) return 0;
        if (!v->is_number_integer()) throw SchemaError(field_path(key), "expected an integer");
        auto n = v->get<std::int64_t>();
        if (n < 0) throw SchemaError(field_path(key), "must be nonnegative");
        return n;
    }

    bool flag(std::string_view key) const {
        const json* v = find(key);
        if (!v) return false;
        if (!v->is_boolean()) throw SchemaError(field_path(key), "expected a boolean");
        return v->get<bool>();
    }

    Timestamp timestamp(std::string_view key) const {
        const json& v = require(key);
        if (!v.is_string()) throw SchemaError(field_path(key), "expected an ISO-8601 string");
        try {
            return parse_iso8601(v.get<std::string>());
        } catch (const ParseError& e) {
            throw SchemaError(field_path(key), e.what());
        }
    }

    const json* array(std::string_view key) const {
        const json* v = find(key);
        if (v && !v->is_array()) throw SchemaError(field_path(key), "expected an array");
        return v;
    }

private:
    const json& obj_;
    std::string path_;
};

std::string indexed(std::string_view base, std::size_t i) {
    return std::string(base) + "[" + std::to_string(i) + "]";
}

ContactMeta read_contact(const json& obj, const std::string& path) {
    FieldReader r(obj, path);
    ContactMeta c;
    c.user_id = r.required_string("user_id");
    if (c.user_id.empty()) throw SchemaError(r.field_path("user_id"), "must be nonempty");
    c.followers_count = r.count("followers_count", false);
    c.friends_count = r.count("friends_count", false);
    c.statuses_count = r.count("statuses_count", false);
    c.created_at = r.timestamp("created_at");
    return c;
}

Tweet read_tweet(const json& obj, const std::string& path, const std::string& default_author) {
    FieldReader r(obj, path);
    Tweet t;
    t.tweet_id = r.required_string("tweet_id");
    t.author_id = default_author.empty() ? r.required_string("author_id")
                                         : r.string_or("author_id", default_author);
    t.created_at = r.timestamp("created_at");
    t.text = r.string_or("text", "");
    if (const json* tags = r.array("hashtags")) {
        for (std::size_t i = 0; i < tags->size(); ++i) {
            const json& tag = (*tags)[i];
            if (!tag.is_string())
                throw SchemaError(indexed(r.field_path("hashtags"), i), "expected a string");
            std::string norm = ascii_lower(tag.get<std::string>());
            if (!norm.empty() && norm.front() == '#') norm.erase(0, 1);
            if (norm.empty()) continue;
            if (std::find(t.hashtags.begin(), t.hashtags.end(), norm) == t.hashtags.end())
                t.hashtags.push_back(std::move(norm));
        }
    }
    if (const json* users = r.array("mentioned_users")) {
        for (std::size_t i = 0; i < users->size(); ++i) {
            FieldReader u((*users)[i], indexed(r.field_path("mentioned_users"), i));
            t.mentioned_users.push_back({u.required_string("user_id"), u.string_or("screen_name", "")});
        }
    }
    t.url_count = r.count("url_count", false);
    t.is_retweet = r.flag("is_retweet");
    if (const json* ra = r.find("retweeted_author"))
        t.retweeted_author = read_contact(*ra, r.field_path("retweeted_author"));
    if (t.is_retweet != t.retweeted_author.has_value())
        throw SchemaError(r.field_path("retweeted_author"),
                          "must be present exactly when is_retweet is true");
    t.is_reply = r.flag("is_reply");
    t.retweet_count = r.count("retweet_count", false);
    t.favorite_count = r.count("favorite_count", false);
    t.source_client = r.string_or("source_client", "");
    if (const json* a = r.find("author")) {
        t.author = read_contact(*a, r.field_path("author"));
        if (t.author->user_id != t.author_id)
            throw SchemaError(r.field_path("author.user_id"), "must equal author_id");
    }
    return t;
}

std::vector<Tweet> read_timeline(const FieldReader& r, std::string_view key, std::size_t cap,
                                 const std::string& default_author,
                                 std::vector<std::string>* warnings) {
    std::vector<Tweet> out;
    const json* arr = r.array(key);
    if (!arr) return out;
    out.reserve(arr->size());
    for (std::size_t i = 0; i < arr->size(); ++i)
        out.push_back(read_tweet((*arr)[i], indexed(key, i), default_author));
    std::stable_sort(out.begin(), out.end(),
                     [](const Tweet& a, const Tweet& b) { return a.created_at > b.created_at; });
    if (out.size() > cap) {
        if (warnings)
            warnings->push_back(std::string(key) + ": " + std::to_string(out.size()) +
                                " items truncated to the newest " + std::to_string(cap));
        out.resize(cap);
    }
    return out;
}

json contact_to_json(const ContactMeta& c) {
    return json{{"user_id", c.user_id},
                {"followers_count", c.followers_count},
                {"friends_count", c.friends_count},
                {"statuses_count", c.statuses_count},
                {"created_at", format_iso8601(c.created_at)}};
}

json tweet_to_json(const Tweet& t) {
    json users = json::array();
    for (const auto& u : t.mentioned_users)
        users.push_back({{"user_id", u.user_id}, {"screen_name", u.screen_name}});
    json out{{"tweet_id", t.tweet_id},
             {"author_id", t.author_id},
             {"created_at", format_iso8601(t.created_at)},
             {"text", t.text},
             {"hashtags", t.hashtags},
             {"mentioned_users", std::move(users)},
             {"url_count", t.url_count},
             {"is_retweet", t.is_retweet},
             {"retweeted_author", t.retweeted_author ? contact_to_json(*t.retweeted_author) : json()},
             {"is_reply", t.is_reply},
             {"retweet_count", t.retweet_count},
             {"favorite_count", t.favorite_count},
             {"source_client", t.source_client}};
    if (t.author) out["author"] = contact_to_json(*t.author);
    return out;
}

}  // namespace

AccountSnapshot snapshot_from_json(const json& doc, std::vector<std::string>* warnings) {
    FieldReader top(doc, "");
    AccountSnapshot snap;
    snap.captured_at = top.timestamp("captured_at");

    FieldReader u(top.require("user"), "user");
    UserMeta& m = snap.user;
    m.user_id = u.required_string("user_id");
    if (m.user_id.empty()) throw SchemaError("user.user_id", "must be nonempty");
    m.screen_name = u.required_string("screen_name");
    if (m.screen_name.empty()) throw SchemaError("user.screen_name", "must be nonempty");
    m.display_name = u.string_or("display_name", "");
    m.description = u.string_or("description", "");
    m.language = ascii_lower(u.string_or("language", ""));
    m.location = u.string_or("location", "");
    m.url_present = u.flag("url_present");
    m.created_at = u.timestamp("created_at");
    if (m.created_at > snap.captured_at)
        throw SchemaError("user.created_at", "is after captured_at");
    m.followers_count = u.count("followers_count", true);
    m.friends_count = u.count("friends_count", true);
    m.statuses_count = u.count("statuses_count", true);
    m.listed_count = u.count("listed_count", false);
    m.favourites_count = u.count("favourites_count", false);
    m.verified = u.flag("verified");
    m.default_profile = u.flag("default_profile");

    snap.tweets = read_timeline(top, "tweets", kMaxTweets, m.user_id, warnings);
    for (std::size_t i = 0; i < snap.tweets.size(); ++i)
        if (snap.tweets[i].author_id != m.user_id)
            throw SchemaError(indexed("tweets", i) + ".author_id", "must equal user.user_id");

    snap.mentions = read_timeline(top, "mentions", kMaxMentions, "", warnings);
    for (std::size_t i = 0; i < snap.mentions.size(); ++i)
        if (snap.mentions[i].author_id == m.user_id)
            throw SchemaError(indexed("mentions", i) + ".author_id",
                              "a mention must be authored by another account");

    if (const json* contacts = top.array("contacts"))
        for (std::size_t i = 0; i < contacts->size(); ++i)
            snap.contacts.push_back(read_contact((*contacts)[i], indexed("contacts", i)));
    return snap;
}

AccountSnapshot parse_snapshot(std::string_view document, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(document.begin(), document.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed snapshot document: ") + e.what());
    }
    return snapshot_from_json(doc, warnings);
}

json snapshot_to_json(const AccountSnapshot& s) {
    const UserMeta& m = s.user;
    json user{{"user_id", m.user_id},
              {"screen_name", m.screen_name},
              {"display_name", m.display_name},
              {"description", m.description},
              {"language", m.language},
              {"location", m.location},
              {"url_present", m.url_present},
              {"created_at", format_iso8601(m.created_at)},
              {"followers_count", m.followers_count},
              {"friends_count", m.friends_count},
              {"statuses_count", m.statuses_count},
              {"listed_count", m.listed_count},
              {"favourites_count", m.favourites_count},
              {"verified", m.verified},
              {"default_profile", m.default_profile}};
    json tweets = json::array(), mentions = json::array(), contacts = json::array();
    for (const auto& t : s.tweets) tweets.push_back(tweet_to_json(t));
    for (const auto& t : s.mentions) mentions.push_back(tweet_to_json(t));
    for (const auto& c : s.contacts) contacts.push_back(contact_to_json(c));
    return json{{"user", std::move(user)},
                {"tweets", std::move(tweets)},
                {"mentions", std::move(mentions)},
                {"contacts", std::move(contacts)},
                {"captured_at", format_iso8601(s.captured_at)}};
}

std::string serialize_snapshot(const AccountSnapshot& s) { return snapshot_to_json(s).dump(); }

std::vector<ContactMeta> derive_contacts(const AccountSnapshot& snapshot) {
    struct Observed {
        ContactMeta meta;
        Timestamp seen_at;
    };
    std::map<std::string, Observed> by_id;
    auto observe = [&](const ContactMeta& c, Timestamp seen_at) {
        auto [it, inserted] = by_id.try_emplace(c.user_id, Observed{c, seen_at});
        if (!inserted && seen_at > it->second.seen_at) it->second = Observed{c, seen_at};
    };
    // Embedded contacts count as observed at capture time.
    for (const auto& c : snapshot.contacts) observe(c, snapshot.captured_at);
    for (const auto& t : snapshot.tweets)
        if (t.retweeted_author) observe(*t.retweeted_author, t.created_at);
    for (const auto& t : snapshot.mentions)
        if (t.author) observe(*t.author, t.created_at);

    std::vector<ContactMeta> out;
    out.reserve(by_id.size());
    for (auto& [id, obs] : by_id) out.push_back(std::move(obs.meta));
    return out;
}

}  // namespace botscore
