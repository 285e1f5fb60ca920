#include "botscore/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "botscore/errors.hpp"
#include "botscore/forest.hpp"

namespace botscore {

namespace {

// Thin sampling layer over the counter RNG; distributions are written out so
// the corpus is identical on every standard library.
class Sampler {
public:
    Sampler(std::uint64_t seed, std::uint64_t stream) : rng_(seed, stream) {}

    double unit() { return rng_.unit(); }
    bool chance(double p) { return unit() < p; }
    int range(int lo, int hi) { return lo + static_cast<int>(rng_.uniform(static_cast<std::uint64_t>(hi - lo + 1))); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double normal() {
        double u1 = std::max(unit(), 1e-300), u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    double lognormal(double median, double sigma) { return median * std::exp(sigma * normal()); }
    double exponential(double mean) { return -mean * std::log(1.0 - unit()); }
    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(rng_.uniform(v.size()))];
    }
    // Zipf-like rank in [0, n): small ranks dominate.
    std::size_t zipf(std::size_t n) {
        double r = std::pow(static_cast<double>(n) + 1.0, unit()) - 1.0;
        return std::min(n - 1, static_cast<std::size_t>(r));
    }
    std::string hex_id() {
        static constexpr char kHex[] = "0123456789abcdef";
        std::uint64_t v = rng_.next();
        std::string s(12, '0');
        for (char& c : s) {
            c = kHex[v & 15];
            v >>= 4;
        }
        return s;
    }

private:
    CounterRng rng_;
};

const std::vector<std::string> kPromoWords = {"free", "deal", "click", "buy", "now", "sale", "offer", "link",
                                              "win", "money", "news", "update", "check", "follow", "best", "new",
                                              "today", "great", "amazing", "get", "top", "cheap", "easy"};
const std::vector<std::string> kPromoTags = {"deal", "free", "win", "sale", "crypto", "money", "promo", "giveaway",
                                             "follow", "news", "trending", "offer", "bonus", "jobs", "seo"};
const std::vector<std::string> kHumanTags = {"music", "coffee", "weekend", "nba", "election", "movies", "food",
                                             "travel", "rain", "mondays", "books", "science", "art", "football"};
const std::vector<std::string> kDeterminers = {"the", "a", "this", "that", "my", "some", "every", "no"};
const std::vector<std::string> kPronouns = {"i", "you", "we", "they", "she", "he", "it", "someone"};
const std::vector<std::string> kVerbs = {"love", "need", "want", "think", "saw", "made", "got", "feel", "like",
                                         "hate", "found", "read", "watch", "tried", "walking", "cooked", "missed"};
const std::vector<std::string> kAdjectives = {"good", "bad", "new", "old", "little", "huge", "tired", "nice", "weird",
                                              "beautiful", "awful", "quiet", "funny", "sad", "happy", "long"};
const std::vector<std::string> kAdverbs = {"really", "just", "never", "always", "still", "finally", "quickly",
                                           "maybe", "so", "too", "again", "today", "tonight"};
const std::vector<std::string> kPrepositions = {"in", "on", "at", "with", "about", "after", "before", "from", "for"};
const std::vector<std::string> kInterjections = {"oh", "wow", "hey", "lol", "ugh", "haha", "yeah", "omg"};
const std::vector<std::string> kPositiveWords = {"love", "happy", "laughter", "fun", "friends", "family", "music",
                                                 "beautiful", "party", "weekend", "coffee", "home", "birthday"};
const std::vector<std::string> kNegativeWords = {"sad", "tired", "hate", "awful", "sick", "pain", "traffic",
                                                 "bored", "lost", "angry", "worst", "rain", "monday"};
const std::vector<std::string> kClientsHuman = {"Twitter Web Client", "Twitter for iPhone", "Twitter for Android",
                                                "TweetDeck"};
const std::vector<std::string> kClientsBot = {"twittbot.net", "dlvr.it", "IFTTT", "Buffer", "autopost"};

std::vector<std::string> make_vocabulary(int size) {
    static const std::array<const char*, 16> onset = {"b", "d", "f", "g", "k", "l", "m", "n",
                                                      "p", "r", "s", "t", "v", "z", "br", "st"};
    static const std::array<const char*, 6> nucleus = {"a", "e", "i", "o", "u", "ou"};
    static const std::array<const char*, 6> coda = {"", "n", "r", "t", "sh", "m"};
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(size));
    for (int i = 0; static_cast<int>(out.size()) < size; ++i) {
        int v = i;
        std::string w;
        int syllables = 2 + (i % 2);
        for (int s = 0; s < syllables; ++s) {
            w += onset[static_cast<std::size_t>(v % 16)];
            v /= 16;
            w += nucleus[static_cast<std::size_t>((v + s) % 6)];
            v /= 2;
        }
        w += coda[static_cast<std::size_t>(i % 6)];
        if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
    }
    return out;
}

// Which profile drives each behaviour dimension of one account.
struct Style {
    bool bot_timing;
    bool bot_text;
    bool bot_network;
    bool bot_profile;
    bool bot_contacts;
    bool bot_sentiment;
};

struct AccountContext {
    Sampler& rng;
    const SynthParams& params;
    const std::vector<std::string>& vocabulary;
    Style style;
    std::string user_id;
    Timestamp captured_at;
};

ContactMeta make_contact(Sampler& rng, bool bot_like, Timestamp captured_at) {
    ContactMeta c;
    c.user_id = "c" + rng.hex_id();
    if (bot_like) {
        c.friends_count = static_cast<std::int64_t>(rng.uniform(800, 2000));
        c.followers_count = static_cast<std::int64_t>(rng.uniform(5, 120));
        c.statuses_count = static_cast<std::int64_t>(rng.uniform(3000, 9000));
        c.created_at = captured_at - static_cast<Timestamp>(rng.uniform(20, 300)) * kSecondsPerDay;
    } else {
        c.followers_count = static_cast<std::int64_t>(rng.lognormal(400, 1.8));
        c.friends_count = static_cast<std::int64_t>(rng.lognormal(300, 1.2));
        c.statuses_count = static_cast<std::int64_t>(rng.lognormal(3000, 1.5));
        c.created_at = captured_at - static_cast<Timestamp>(rng.uniform(100, 3000)) * kSecondsPerDay;
    }
    return c;
}

ContactMeta make_hub(Sampler& rng, Timestamp captured_at) {
    ContactMeta c;
    c.user_id = "c" + rng.hex_id();
    c.followers_count = static_cast<std::int64_t>(rng.lognormal(200000, 1.0));
    c.friends_count = static_cast<std::int64_t>(rng.lognormal(500, 1.0));
    c.statuses_count = static_cast<std::int64_t>(rng.lognormal(20000, 0.8));
    c.created_at = captured_at - static_cast<Timestamp>(rng.uniform(1000, 3000)) * kSecondsPerDay;
    return c;
}

std::vector<Timestamp> make_timeline(AccountContext& ctx, int count) {
    Sampler& rng = ctx.rng;
    std::vector<Timestamp> out;
    if (ctx.style.bot_timing) {
        Timestamp period = static_cast<Timestamp>(rng.pick(std::vector<double>{600, 900, 1800, 3600, 7200}));
        Timestamp t = ctx.captured_at - static_cast<Timestamp>(rng.uniform(0, static_cast<double>(period)));
        double p1 = ctx.params.bot.interval_regularity;
        for (int i = 0; i < count; ++i) {
            out.push_back(t);
            double u = rng.unit();
            Timestamp steps = u < p1 ? 1 : (u < p1 + (1 - p1) * 0.6 ? 2 : 3);
            t -= steps * period + static_cast<Timestamp>(rng.range(-5, 5));
        }
    } else {
        int tz = rng.range(-8, 3);
        double span_days = rng.uniform(5, 60);
        double diurnal = ctx.params.human.diurnal_strength;
        for (int i = 0; i < count; ++i) {
            double day = std::floor(rng.unit() * span_days);
            int local_hour;
            if (rng.chance(diurnal)) {
                // waking hours, evening-heavy
                local_hour = rng.chance(0.45) ? rng.range(18, 23) : rng.range(8, 17);
            } else {
                local_hour = rng.range(0, 23);
            }
            int utc_hour = ((local_hour - tz) % 24 + 24) % 24;
            Timestamp day_start = (ctx.captured_at / kSecondsPerDay - 1 - static_cast<Timestamp>(day)) * kSecondsPerDay;
            out.push_back(day_start + utc_hour * kSecondsPerHour + rng.range(0, 3599));
        }
        std::sort(out.rbegin(), out.rend());
        for (auto& t : out) t = std::min(t, ctx.captured_at - 1);
    }
    return out;
}

std::string human_sentence(AccountContext& ctx) {
    Sampler& rng = ctx.rng;
    auto noun = [&] { return ctx.vocabulary[rng.zipf(ctx.vocabulary.size())]; };
    std::vector<std::string> words;
    switch (rng.range(0, 4)) {
        case 0: words = {rng.pick(kPronouns), rng.pick(kVerbs), rng.pick(kDeterminers), rng.pick(kAdjectives), noun()}; break;
        case 1: words = {rng.pick(kDeterminers), noun(), rng.pick(kVerbs), rng.pick(kAdverbs), rng.pick(kAdjectives)}; break;
        case 2: words = {rng.pick(kInterjections), rng.pick(kPronouns), rng.pick(kVerbs), noun(), rng.pick(kPrepositions),
                         rng.pick(kDeterminers), noun()}; break;
        case 3: words = {rng.pick(kAdverbs), rng.pick(kVerbs), rng.pick(kDeterminers), noun(), rng.pick(kPrepositions), noun()}; break;
        default: words = {rng.pick(kPronouns), rng.pick(kAdverbs), rng.pick(kVerbs), rng.pick(kPronouns), noun()}; break;
    }
    std::string s;
    for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
    return s;
}

std::vector<std::string> bot_templates(AccountContext& ctx) {
    Sampler& rng = ctx.rng;
    std::vector<std::string> templates;
    int n = rng.range(4, 10);
    for (int i = 0; i < n; ++i) {
        std::string s;
        int len = rng.range(4, 8);
        for (int w = 0; w < len; ++w) {
            const std::string& word = rng.chance(ctx.params.bot.lexical_diversity)
                                          ? ctx.vocabulary[rng.zipf(ctx.vocabulary.size())]
                                          : rng.pick(kPromoWords);
            s += (s.empty() ? "" : " ") + word;
        }
        templates.push_back(std::move(s));
    }
    return templates;
}

void add_sentiment(AccountContext& ctx, std::string& text) {
    Sampler& rng = ctx.rng;
    if (ctx.style.bot_sentiment) {
        if (rng.chance(0.5)) text += " " + rng.pick(std::vector<std::string>{"amazing", "free", "win", "best"});
        if (rng.chance(0.6)) text += " :)";
    } else {
        if (rng.chance(0.6)) text += " " + (rng.chance(0.6) ? rng.pick(kPositiveWords) : rng.pick(kNegativeWords));
        if (rng.chance(0.25)) {
            static const std::vector<std::string> pos = {":)", ":D", "<3", ";)", "XD"};
            static const std::vector<std::string> neg = {":(", ":/", ":'(", "D:"};
            text += " " + (rng.chance(0.65) ? rng.pick(pos) : rng.pick(neg));
        }
    }
}

AccountSnapshot make_account(const SynthParams& params, const std::vector<std::string>& vocabulary, bool bot,
                             int index) {
    Sampler rng(params.seed, (bot ? 0x100000000ULL : 0x200000000ULL) + static_cast<std::uint64_t>(index));
    auto pick_style = [&] { return rng.chance(params.crossover) ? !bot : bot; };
    Style style{pick_style(), pick_style(), pick_style(), pick_style(), pick_style(), pick_style()};
    Timestamp captured_at = params.capture_base + static_cast<Timestamp>(rng.range(0, 30 * 86400));
    std::string uid = std::string(bot ? "b" : "h") + std::to_string(index) + "x" + rng.hex_id().substr(0, 6);
    AccountContext ctx{rng, params, vocabulary, style, uid, captured_at};

    AccountSnapshot snap;
    snap.captured_at = captured_at;
    UserMeta& u = snap.user;
    u.user_id = uid;

    // Profile
    if (style.bot_profile) {
        double age = rng.uniform(20, 400);
        u.created_at = captured_at - static_cast<Timestamp>(age * kSecondsPerDay);
        u.screen_name = rng.pick(kPromoTags) + "_" + std::to_string(rng.range(1000, 999999));
        u.display_name = rng.chance(0.5) ? u.screen_name : "Best " + rng.pick(kPromoWords);
        u.description = rng.chance(0.5) ? "" : "free " + rng.pick(kPromoWords) + " every day";
        u.default_profile = rng.chance(0.7);
        u.location = rng.chance(0.7) ? "" : "Worldwide";
        u.language = rng.chance(0.7) ? "en" : rng.pick(std::vector<std::string>{"es", "fr", "id", "tr"});
        u.friends_count = static_cast<std::int64_t>(rng.uniform(300, 3000));
        u.followers_count = static_cast<std::int64_t>(static_cast<double>(u.friends_count) *
                                                      rng.uniform(0.01, 1.0 - params.bot.follower_skew + 0.01));
        u.statuses_count = static_cast<std::int64_t>(age * rng.uniform(20, 150));
        u.listed_count = rng.range(0, 3);
        u.favourites_count = rng.range(0, 50);
        u.url_present = rng.chance(0.8);
    } else {
        double age = rng.uniform(200, 3000);
        u.created_at = captured_at - static_cast<Timestamp>(age * kSecondsPerDay);
        u.screen_name = vocabulary[static_cast<std::size_t>(rng.range(0, static_cast<int>(vocabulary.size()) - 1))] +
                        (rng.chance(0.3) ? std::to_string(rng.range(1, 99)) : "_" + rng.pick(kHumanTags));
        u.display_name = "User " + rng.pick(vocabulary);
        u.description = rng.chance(0.85) ? "i love " + rng.pick(kHumanTags) + " and " + rng.pick(kPositiveWords) : "";
        u.default_profile = rng.chance(0.15);
        u.location = rng.chance(0.7) ? rng.pick(std::vector<std::string>{"Boston", "London", "Austin", "Rome"}) : "";
        u.language = rng.chance(0.85) ? "en" : rng.pick(std::vector<std::string>{"es", "it", "de"});
        u.followers_count = static_cast<std::int64_t>(rng.lognormal(300, 1.2));
        u.friends_count = static_cast<std::int64_t>(rng.lognormal(280, 0.9));
        u.statuses_count = static_cast<std::int64_t>(age * rng.lognormal(3, 0.8));
        u.listed_count = static_cast<std::int64_t>(rng.lognormal(4, 1.0));
        u.favourites_count = static_cast<std::int64_t>(age * rng.lognormal(2, 1.0));
        u.url_present = rng.chance(0.4);
        u.verified = rng.chance(0.03);
    }

    // Network partners
    std::vector<ContactMeta> rt_pool, friends;
    std::vector<std::string> mention_targets;
    int rt_pool_size = style.bot_network ? rng.range(1, 3) : rng.range(8, 30);
    for (int i = 0; i < rt_pool_size; ++i)
        rt_pool.push_back(style.bot_network ? make_hub(rng, captured_at) : make_contact(rng, style.bot_contacts, captured_at));
    int friend_count = style.bot_contacts ? rng.range(5, 25) : rng.range(15, 60);
    for (int i = 0; i < friend_count; ++i) friends.push_back(make_contact(rng, style.bot_contacts, captured_at));
    double retweet_rate = style.bot_network ? rng.uniform(0.3, 0.7) : rng.uniform(0.05, 0.3);
    double mention_rate = style.bot_network ? rng.uniform(0.0, 0.8) : rng.uniform(0.2, 0.5);

    // Own timeline
    int tweet_count = style.bot_timing ? rng.range(150, 260) : rng.range(20, 220);
    auto times = make_timeline(ctx, tweet_count);
    std::vector<std::string> templates = bot_templates(ctx);
    std::vector<std::string> tag_set;
    if (style.bot_text)
        for (int i = 0; i < 4; ++i) tag_set.push_back(rng.pick(kPromoTags));
    std::vector<std::string> past_texts;
    const std::string client = style.bot_text ? rng.pick(kClientsBot) : rng.pick(kClientsHuman);

    for (int i = 0; i < tweet_count; ++i) {
        Tweet t;
        t.tweet_id = uid + "-t" + std::to_string(i);
        t.author_id = uid;
        t.created_at = times[static_cast<std::size_t>(i)];
        t.source_client = style.bot_text || rng.chance(0.8) ? client : rng.pick(kClientsHuman);

        std::string body;
        if (style.bot_text) {
            if (!past_texts.empty() && rng.chance(params.bot.duplicate_text_rate)) {
                body = rng.pick(past_texts);
            } else {
                body = rng.pick(templates);
                past_texts.push_back(body);
            }
            if (rng.chance(params.bot.hashtag_rate)) {
                int tags = rng.range(1, 3);
                for (int k = 0; k < tags; ++k) t.hashtags.push_back(rng.pick(tag_set));
            }
            if (rng.chance(0.8)) t.url_count = 1;
        } else {
            body = human_sentence(ctx);
            if (rng.chance(0.4)) body += " " + human_sentence(ctx);
            if (rng.chance(0.15)) t.hashtags.push_back(rng.pick(kHumanTags));
            if (rng.chance(0.2)) t.url_count = 1;
            t.is_reply = rng.chance(params.human.reply_rate);
        }
        add_sentiment(ctx, body);

        if (rng.chance(mention_rate)) {
            std::string id, name;
            if (style.bot_network) {
                id = "r" + rng.hex_id();
                name = "user" + id.substr(1, 6);
            } else {
                const ContactMeta& f = rng.pick(friends);
                id = f.user_id;
                name = "friend_" + f.user_id.substr(1, 6);
            }
            t.mentioned_users.push_back({id, name});
            body = "@" + name + " " + body;
        }

        std::string text;
        if (rng.chance(retweet_rate)) {
            t.is_retweet = true;
            t.retweeted_author = rng.pick(rt_pool);
            text = "RT @src_" + t.retweeted_author->user_id.substr(1, 6) + ": " + body;
            t.is_reply = false;
        } else {
            text = body;
        }
        std::sort(t.hashtags.begin(), t.hashtags.end());
        t.hashtags.erase(std::unique(t.hashtags.begin(), t.hashtags.end()), t.hashtags.end());
        for (const auto& tag : t.hashtags) text += " #" + tag;
        if (t.url_count > 0) text += " http://t.co/" + rng.hex_id().substr(0, 8);
        t.text = std::move(text);
        t.retweet_count = style.bot_network ? rng.range(0, 2) : static_cast<std::int64_t>(rng.exponential(3));
        t.favorite_count = style.bot_network ? rng.range(0, 1) : static_cast<std::int64_t>(rng.exponential(5));
        snap.tweets.push_back(std::move(t));
    }
    if (snap.tweets.size() > kMaxTweets) snap.tweets.resize(kMaxTweets);

    // Mentions received
    int mention_count = style.bot_network ? rng.range(0, 12) : rng.range(5, 80);
    Timestamp oldest = snap.tweets.empty() ? captured_at - 30 * kSecondsPerDay : snap.tweets.back().created_at;
    for (int i = 0; i < mention_count; ++i) {
        Tweet m;
        m.tweet_id = uid + "-m" + std::to_string(i);
        bool from_friend = !style.bot_network && rng.chance(0.8);
        ContactMeta author = from_friend ? rng.pick(friends) : make_contact(rng, style.bot_contacts, captured_at);
        m.author_id = author.user_id;
        if (rng.chance(0.5)) m.author = author;
        m.created_at = oldest + static_cast<Timestamp>(rng.unit() * static_cast<double>(captured_at - oldest));
        m.mentioned_users.push_back({uid, u.screen_name});
        m.text = "@" + u.screen_name + " " + human_sentence(ctx);
        m.source_client = rng.pick(kClientsHuman);
        snap.mentions.push_back(std::move(m));
    }
    std::sort(snap.mentions.begin(), snap.mentions.end(),
              [](const Tweet& a, const Tweet& b) { return a.created_at > b.created_at; });

    // Embedded followee sample
    int embedded = rng.range(0, static_cast<int>(friends.size()));
    snap.contacts.assign(friends.begin(), friends.begin() + embedded);
    return snap;
}

}  // namespace

void validate(const SynthParams& p) {
    if (p.bots < 1 || p.humans < 1) throw Error("synth: counts must be >= 1");
    auto rate = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw Error(std::string("synth: ") + name + " must be in [0,1]");
    };
    rate(p.bot.interval_regularity, "interval_regularity");
    rate(p.bot.hashtag_rate, "hashtag_rate");
    rate(p.bot.lexical_diversity, "lexical_diversity");
    rate(p.bot.duplicate_text_rate, "duplicate_text_rate");
    rate(p.bot.follower_skew, "follower_skew");
    rate(p.human.diurnal_strength, "diurnal_strength");
    rate(p.human.reply_rate, "reply_rate");
    rate(p.crossover, "crossover");
    if (p.human.vocabulary_size < 10) throw Error("synth: vocabulary_size must be >= 10");
}

LabeledCorpus generate_corpus(const SynthParams& params) {
    validate(params);
    const auto vocabulary = make_vocabulary(params.human.vocabulary_size);
    LabeledCorpus corpus;
    for (int i = 0; i < params.bots; ++i) {
        corpus.accounts.push_back(make_account(params, vocabulary, true, i));
        corpus.labels.push_back(1);
    }
    for (int i = 0; i < params.humans; ++i) {
        corpus.accounts.push_back(make_account(params, vocabulary, false, i));
        corpus.labels.push_back(0);
    }
    corpus.digest = compute_corpus_digest(corpus);
    return corpus;
}

nlohmann::json synth_params_to_json(const SynthParams& p) {
    return {{"seed", p.seed},
            {"bots", p.bots},
            {"humans", p.humans},
            {"crossover", p.crossover},
            {"bot",
             {{"interval_regularity", p.bot.interval_regularity},
              {"hashtag_rate", p.bot.hashtag_rate},
              {"lexical_diversity", p.bot.lexical_diversity},
              {"duplicate_text_rate", p.bot.duplicate_text_rate},
              {"follower_skew", p.bot.follower_skew}}},
            {"human",
             {{"diurnal_strength", p.human.diurnal_strength},
              {"reply_rate", p.human.reply_rate},
              {"vocabulary_size", p.human.vocabulary_size}}},
            {"capture_base", format_iso8601(p.capture_base)}};
}

}  // namespace botscore
