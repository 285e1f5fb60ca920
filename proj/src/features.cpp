#include "botscore/features.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "botscore/digest.hpp"
#include "botscore/errors.hpp"
#include "botscore/text.hpp"

namespace botscore {

namespace {

std::string entropy_params(BinScale scale, int bins) {
    return "bins=" + std::to_string(bins) + ";scale=" + (scale == BinScale::log ? "log" : "linear");
}

double ratio_or_missing(double num, double den) { return den == 0.0 ? kMissing : num / den; }

double mean_or_missing(const std::vector<double>& v) {
    if (v.empty()) return kMissing;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double std_or_missing(const std::vector<double>& v) {
    if (v.empty()) return kMissing;
    return describe(v).std;
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

double days_between(Timestamp from, Timestamp to) {
    return static_cast<double>(to - from) / static_cast<double>(kSecondsPerDay);
}

void add_graph_block(FeatureBlock& b, const InteractionGraph& g) {
    const std::string p = std::string("net.") + graph_kind_name(g.kind()) + ".";
    const std::string what = std::string(graph_kind_name(g.kind())) + " graph";

    // An ego without any edge does not make the graph nonempty.
    std::set<std::string> counted = g.nodes();
    if (g.ego() && g.edges().empty()) counted.erase(*g.ego());

    double total_weight = 0.0, max_weight = 0.0;
    for (const auto& [e, w] : g.edges()) {
        total_weight += static_cast<double>(w);
        max_weight = std::max(max_weight, static_cast<double>(w));
    }
    b.add(p + "node_count", static_cast<double>(counted.size()), "graph.node_count", "nodes in the " + what);
    b.add(p + "edge_count", static_cast<double>(g.edges().size()), "graph.edge_count", "distinct edges in the " + what);
    b.add(p + "density", counted.empty() ? 0.0 : g.density(), "graph.density", "edge density of the " + what);
    b.add(p + "total_weight", total_weight, "graph.total_weight", "sum of edge weights in the " + what);
    b.add(p + "max_edge_weight", max_weight, "graph.max_edge_weight", "heaviest edge in the " + what);
    b.add(p + "clustering", global_clustering(g), "graph.global_clustering",
          "transitivity of the undirected " + what);

    if (g.directed()) {
        const std::string& ego = *g.ego();
        double out_degree = 0.0, in_degree = 0.0;
        for (const auto& [e, w] : g.edges()) {
            if (e.first == ego) out_degree += 1.0;
            if (e.second == ego) in_degree += 1.0;
        }
        b.add(p + "ego_out_strength", g.out_strength(ego), "graph.ego_out_strength",
              "weighted out-degree of the account in the " + what);
        b.add(p + "ego_in_strength", g.in_strength(ego), "graph.ego_in_strength",
              "weighted in-degree of the account in the " + what);
        b.add(p + "ego_out_degree", out_degree, "graph.ego_out_degree", "out-neighbours of the account");
        b.add(p + "ego_in_degree", in_degree, "graph.ego_in_degree", "in-neighbours of the account");
        b.add(p + "ego_degree_centrality", ego_degree_centrality(g), "graph.ego_degree_centrality",
              "undirected degree of the account over n-1");
    }

    std::vector<double> degrees, strengths;
    auto deg = g.degrees();
    auto str = g.strengths();
    for (const auto& n : counted) {
        degrees.push_back(deg.at(n));
        strengths.push_back(str.at(n));
    }
    b.add_stats(p + "degree", degrees, "undirected node degree in the " + what, BinScale::linear);
    b.add_stats(p + "strength", strengths, "node strength in the " + what, BinScale::linear);
}

struct TweetSentiment {
    double happiness = kMissing;
    double valence = kMissing;
    double arousal = kMissing;
    double dominance = kMissing;
    double emoticon = kMissing;
    int positive = 0;
    int negative = 0;
    int words = 0;
    int happiness_hits = 0;
    int vad_hits = 0;
};

TweetSentiment score_tweet(const Tweet& t, const Lexicons& lex) {
    TweetSentiment s;
    TokenizedText tok = tokenize(t.text);
    double h = 0.0, v = 0.0, a = 0.0, d = 0.0;
    for (const auto& w : tok.words) {
        if (auto it = lex.happiness.find(w); it != lex.happiness.end()) {
            h += it->second;
            ++s.happiness_hits;
        }
        if (auto it = lex.vad.find(w); it != lex.vad.end()) {
            v += it->second.valence;
            a += it->second.arousal;
            d += it->second.dominance;
            ++s.vad_hits;
        }
    }
    s.words = static_cast<int>(tok.words.size());
    if (s.happiness_hits > 0) s.happiness = h / s.happiness_hits;
    if (s.vad_hits > 0) {
        s.valence = v / s.vad_hits;
        s.arousal = a / s.vad_hits;
        s.dominance = d / s.vad_hits;
    }
    for (const auto& raw : tok.raw_tokens) {
        auto it = lex.emoticons.find(raw);
        if (it == lex.emoticons.end()) continue;
        (it->second > 0 ? s.positive : s.negative) += 1;
    }
    if (s.positive + s.negative > 0)
        s.emoticon = static_cast<double>(s.positive - s.negative) / static_cast<double>(s.positive + s.negative);
    return s;
}

}  // namespace

double FeatureBlock::at(std::string_view name) const {
    for (std::size_t i = 0; i < specs_.size(); ++i)
        if (specs_[i].name == name) return values_[i];
    throw Error("feature block has no feature '" + std::string(name) + "'");
}

void FeatureBlock::add(std::string name, double value, std::string extractor, std::string description,
                       std::string parameters) {
    specs_.push_back({std::move(name), class_, std::move(extractor), std::move(parameters), std::move(description)});
    values_.push_back(std::isnan(value) ? kMissing : value);
}

void FeatureBlock::add_stats(const std::string& prefix, std::span<const double> values,
                             const std::string& quantity, BinScale scale, int bins) {
    DescriptiveStats s = describe(values, scale, bins);
    add(prefix + ".count", static_cast<double>(s.count), "describe.count", "number of values: " + quantity);
    add(prefix + ".min", s.min, "describe.min", "minimum of " + quantity);
    add(prefix + ".max", s.max, "describe.max", "maximum of " + quantity);
    add(prefix + ".mean", s.mean, "describe.mean", "mean of " + quantity);
    add(prefix + ".median", s.median, "describe.median", "median of " + quantity);
    add(prefix + ".std", s.std, "describe.std", "population standard deviation of " + quantity);
    add(prefix + ".skewness", s.skewness, "describe.skewness", "skewness of " + quantity);
    add(prefix + ".kurtosis", s.kurtosis, "describe.kurtosis", "excess kurtosis of " + quantity);
    add(prefix + ".entropy", s.entropy_bits, "describe.entropy", "histogram entropy (bits) of " + quantity,
        entropy_params(scale, bins));
}

std::vector<double> inter_arrival_seconds(const std::vector<Tweet>& timeline) {
    std::vector<double> out;
    for (std::size_t i = 1; i < timeline.size(); ++i)
        out.push_back(static_cast<double>(timeline[i - 1].created_at - timeline[i].created_at));
    return out;
}

std::array<double, 24> hour_of_day_counts(const std::vector<Tweet>& timeline) {
    std::array<double, 24> counts{};
    for (const auto& t : timeline) counts[static_cast<std::size_t>(hour_of_day(t.created_at))] += 1.0;
    return counts;
}

double language_bucket(std::string_view language) {
    if (language.empty()) return kMissing;
    return static_cast<double>(Digest{}.update(language).value() % 64);
}

FeatureBlock network_features(const InteractionGraphs& graphs) {
    FeatureBlock b(FeatureClass::network);
    add_graph_block(b, graphs.retweet);
    add_graph_block(b, graphs.mention);
    add_graph_block(b, graphs.hashtag);
    return b;
}

FeatureBlock user_features(const UserMeta& m, Timestamp captured_at) {
    FeatureBlock b(FeatureClass::user);
    double age = days_between(m.created_at, captured_at);
    double followers = static_cast<double>(m.followers_count);
    double friends = static_cast<double>(m.friends_count);
    std::size_t digits = std::count_if(m.screen_name.begin(), m.screen_name.end(),
                                       [](char c) { return c >= '0' && c <= '9'; });

    b.add("user.account_age_days", age, "user.age", "days between account creation and capture");
    b.add("user.statuses_count", static_cast<double>(m.statuses_count), "user.field", "lifetime posts");
    b.add("user.statuses_per_day", ratio_or_missing(static_cast<double>(m.statuses_count), age), "user.rate",
          "lifetime posts per day of account age");
    b.add("user.followers_count", followers, "user.field", "followers");
    b.add("user.friends_count", friends, "user.field", "followees");
    b.add("user.followers_friends_ratio", ratio_or_missing(followers, friends), "user.ratio",
          "followers over followees");
    b.add("user.log_followers", std::log1p(followers), "user.log", "log(1 + followers)");
    b.add("user.log_friends", std::log1p(friends), "user.log", "log(1 + followees)");
    b.add("user.friends_per_day", ratio_or_missing(friends, age), "user.rate", "followees per day of account age");
    b.add("user.listed_count", static_cast<double>(m.listed_count), "user.field", "lists containing the account");
    b.add("user.listed_per_follower", ratio_or_missing(static_cast<double>(m.listed_count), followers),
          "user.ratio", "lists per follower");
    b.add("user.favourites_count", static_cast<double>(m.favourites_count), "user.field", "lifetime likes");
    b.add("user.favourites_per_day", ratio_or_missing(static_cast<double>(m.favourites_count), age), "user.rate",
          "likes per day of account age");
    b.add("user.screen_name_length", static_cast<double>(utf8_length(m.screen_name)), "user.length",
          "characters in the screen name");
    b.add("user.screen_name_digits", static_cast<double>(digits), "user.digits", "digits in the screen name");
    b.add("user.display_name_length", static_cast<double>(utf8_length(m.display_name)), "user.length",
          "characters in the display name");
    b.add("user.description_length", static_cast<double>(utf8_length(m.description)), "user.length",
          "characters in the profile description");
    b.add("user.verified", m.verified ? 1.0 : 0.0, "user.flag", "verified badge");
    b.add("user.default_profile", m.default_profile ? 1.0 : 0.0, "user.flag", "profile left at defaults");
    b.add("user.url_present", m.url_present ? 1.0 : 0.0, "user.flag", "profile URL set");
    b.add("user.has_location", m.location.empty() ? 0.0 : 1.0, "user.flag", "location set");
    b.add("user.has_language", m.language.empty() ? 0.0 : 1.0, "user.flag", "language set");
    b.add("user.language_bucket", language_bucket(m.language), "user.language_bucket",
          "stable hash of the language code", "buckets=64;hash=fnv1a64");
    return b;
}

FeatureBlock friends_features(const std::vector<ContactMeta>& contacts, Timestamp captured_at) {
    FeatureBlock b(FeatureClass::friends);
    std::vector<double> followers, friends, statuses, ages;
    for (const auto& c : contacts) {
        followers.push_back(static_cast<double>(c.followers_count));
        friends.push_back(static_cast<double>(c.friends_count));
        statuses.push_back(static_cast<double>(c.statuses_count));
        ages.push_back(days_between(c.created_at, captured_at));
    }
    b.add("friends.contact_count", static_cast<double>(contacts.size()), "friends.count", "distinct contacts");
    b.add_stats("friends.followers", followers, "contact follower counts", BinScale::log);
    b.add_stats("friends.friends", friends, "contact followee counts", BinScale::log);
    b.add_stats("friends.statuses", statuses, "contact post counts", BinScale::log);
    b.add_stats("friends.age_days", ages, "contact account ages (days)", BinScale::log);
    return b;
}

FeatureBlock temporal_features(const std::vector<Tweet>& tweets, const std::vector<Tweet>& mentions,
                               Timestamp captured_at) {
    FeatureBlock b(FeatureClass::temporal);
    auto rate_per_hour = [](const std::vector<Tweet>& tl) {
        if (tl.size() < 2) return kMissing;
        double span = static_cast<double>(tl.front().created_at - tl.back().created_at) / kSecondsPerHour;
        return ratio_or_missing(static_cast<double>(tl.size()), span);
    };
    auto burst = [](const std::vector<double>& iv) { return iv.size() < 2 ? kMissing : burstiness(iv); };
    auto hour_entropy = [](const std::vector<Tweet>& tl) {
        if (tl.empty()) return kMissing;
        auto counts = hour_of_day_counts(tl);
        return count_entropy(counts);
    };

    std::vector<double> intervals = inter_arrival_seconds(tweets);
    std::vector<double> mention_intervals = inter_arrival_seconds(mentions);

    b.add("temporal.tweet_count", static_cast<double>(tweets.size()), "temporal.count", "tweets in the snapshot");
    b.add("temporal.tweets_per_hour", rate_per_hour(tweets), "temporal.rate",
          "tweets per hour over the observed span");
    b.add("temporal.span_hours",
          tweets.size() < 2 ? kMissing
                            : static_cast<double>(tweets.front().created_at - tweets.back().created_at) /
                                  kSecondsPerHour,
          "temporal.span", "hours between oldest and newest tweet");
    b.add("temporal.days_since_last_tweet",
          tweets.empty() ? kMissing : days_between(tweets.front().created_at, captured_at), "temporal.recency",
          "days between newest tweet and capture");
    b.add_stats("temporal.interval", intervals, "inter-tweet intervals (s)", BinScale::linear);
    b.add("temporal.interval_burstiness", burst(intervals), "burstiness", "burstiness of inter-tweet intervals");
    double rapid = 0.0;
    for (double v : intervals)
        if (v < 60.0) rapid += 1.0;
    b.add("temporal.rapid_fraction", intervals.empty() ? kMissing : rapid / static_cast<double>(intervals.size()),
          "temporal.fraction", "fraction of intervals under one minute");

    b.add("temporal.hour_entropy", hour_entropy(tweets), "temporal.hour_entropy",
          "entropy of the hour-of-day histogram", "bins=24;scale=hour");
    double night = 0.0;
    for (const auto& t : tweets)
        if (hour_of_day(t.created_at) < 6) night += 1.0;
    b.add("temporal.night_fraction", tweets.empty() ? kMissing : night / static_cast<double>(tweets.size()),
          "temporal.fraction", "fraction of tweets between 00:00 and 06:00 UTC");
    double weekday_entropy = kMissing;
    if (!tweets.empty()) {
        std::array<double, 7> days{};
        for (const auto& t : tweets) days[static_cast<std::size_t>(day_of_week(t.created_at))] += 1.0;
        weekday_entropy = count_entropy(days);
    }
    b.add("temporal.weekday_entropy", weekday_entropy, "temporal.weekday_entropy",
          "entropy of the day-of-week histogram", "bins=7;scale=weekday");

    b.add("temporal.mention_count", static_cast<double>(mentions.size()), "temporal.count",
          "mention tweets in the snapshot");
    b.add("temporal.mentions_per_hour", rate_per_hour(mentions), "temporal.rate",
          "mentions per hour over their observed span");
    b.add_stats("temporal.mention_interval", mention_intervals, "inter-mention intervals (s)", BinScale::linear);
    b.add("temporal.mention_interval_burstiness", burst(mention_intervals), "burstiness",
          "burstiness of inter-mention intervals");
    b.add("temporal.mention_hour_entropy", hour_entropy(mentions), "temporal.hour_entropy",
          "entropy of the mention hour-of-day histogram", "bins=24;scale=hour");
    return b;
}

FeatureBlock content_features(const std::vector<Tweet>& tweets, const Lexicons& lexicons) {
    FeatureBlock b(FeatureClass::content);
    const bool none = tweets.empty();
    const double n = static_cast<double>(tweets.size());

    std::array<std::vector<double>, kPosTagCount> tag_freq;
    std::vector<double> words_per_tweet;
    double hashtags = 0, mentions = 0, urls = 0, retweets = 0, replies = 0, chars = 0;
    double with_url = 0, with_hashtag = 0, rt_count = 0, fav_count = 0, duplicates = 0;
    std::size_t total_words = 0;
    std::unordered_set<std::string> vocabulary, seen_texts;
    std::map<std::string, double> clients;

    for (const auto& t : tweets) {
        TokenizedText tok = tokenize(t.text);
        words_per_tweet.push_back(static_cast<double>(tok.words.size()));
        if (!tok.words.empty()) {
            std::array<double, kPosTagCount> counts{};
            for (PosTag tag : tag_words(tok.words, lexicons)) counts[static_cast<std::size_t>(tag)] += 1.0;
            for (std::size_t k = 0; k < kPosTagCount; ++k)
                tag_freq[k].push_back(counts[k] / static_cast<double>(tok.words.size()));
        }
        total_words += tok.words.size();
        vocabulary.insert(tok.words.begin(), tok.words.end());

        std::string normalized;
        for (const auto& w : tok.words) normalized += w + ' ';
        if (!seen_texts.insert(normalized).second) duplicates += 1.0;

        hashtags += static_cast<double>(t.hashtags.size());
        mentions += static_cast<double>(t.mentioned_users.size());
        urls += static_cast<double>(t.url_count);
        retweets += t.is_retweet ? 1.0 : 0.0;
        replies += t.is_reply ? 1.0 : 0.0;
        chars += static_cast<double>(utf8_length(t.text));
        with_url += t.url_count > 0 ? 1.0 : 0.0;
        with_hashtag += t.hashtags.empty() ? 0.0 : 1.0;
        rt_count += static_cast<double>(t.retweet_count);
        fav_count += static_cast<double>(t.favorite_count);
        clients[t.source_client] += 1.0;
    }

    for (std::size_t k = 0; k < kPosTagCount; ++k) {
        std::string tag = pos_tag_name(static_cast<PosTag>(k));
        b.add("content.pos." + tag + ".mean", mean_or_missing(tag_freq[k]), "pos.frequency_mean",
              "mean per-tweet frequency of " + tag + " tokens", "tagger=lexicon+suffix");
        b.add("content.pos." + tag + ".std", std_or_missing(tag_freq[k]), "pos.frequency_std",
              "std of per-tweet frequency of " + tag + " tokens", "tagger=lexicon+suffix");
    }
    b.add_stats("content.words_per_tweet", words_per_tweet, "words per tweet", BinScale::linear);

    auto per_tweet = [&](double total) { return none ? kMissing : total / n; };
    b.add("content.hashtags_per_tweet", per_tweet(hashtags), "content.mean", "hashtags per tweet");
    b.add("content.mentions_per_tweet", per_tweet(mentions), "content.mean", "user mentions per tweet");
    b.add("content.urls_per_tweet", per_tweet(urls), "content.mean", "URLs per tweet");
    b.add("content.fraction_retweets", per_tweet(retweets), "content.fraction", "fraction of retweets");
    b.add("content.fraction_replies", per_tweet(replies), "content.fraction", "fraction of replies");
    b.add("content.fraction_with_url", per_tweet(with_url), "content.fraction", "fraction of tweets with a URL");
    b.add("content.fraction_with_hashtag", per_tweet(with_hashtag), "content.fraction",
          "fraction of tweets with a hashtag");
    b.add("content.chars_per_tweet", per_tweet(chars), "content.mean", "characters per tweet");
    b.add("content.mean_retweet_count", per_tweet(rt_count), "content.mean", "retweets received per tweet");
    b.add("content.mean_favorite_count", per_tweet(fav_count), "content.mean", "likes received per tweet");
    b.add("content.lexical_diversity",
          total_words == 0 ? kMissing : static_cast<double>(vocabulary.size()) / static_cast<double>(total_words),
          "content.lexical_diversity", "distinct words over total words");
    b.add("content.duplicate_text_fraction", per_tweet(duplicates), "content.fraction",
          "fraction of tweets repeating an earlier tweet's words");
    std::vector<double> client_counts;
    for (const auto& [name, c] : clients) client_counts.push_back(c);
    b.add("content.source_client_count", none ? kMissing : static_cast<double>(clients.size()), "content.count",
          "distinct posting clients");
    b.add("content.source_client_entropy", none ? kMissing : count_entropy(client_counts), "content.entropy",
          "entropy of the posting-client distribution");
    return b;
}

FeatureBlock sentiment_features(const std::vector<Tweet>& tweets, const Lexicons& lexicons) {
    FeatureBlock b(FeatureClass::sentiment);
    std::vector<double> happiness, valence, arousal, dominance, emoticon;
    double with_emoticon = 0, positive = 0, negative = 0, words = 0, h_hits = 0, v_hits = 0;
    for (const auto& t : tweets) {
        TweetSentiment s = score_tweet(t, lexicons);
        if (!is_missing(s.happiness)) happiness.push_back(s.happiness);
        if (!is_missing(s.valence)) {
            valence.push_back(s.valence);
            arousal.push_back(s.arousal);
            dominance.push_back(s.dominance);
        }
        if (!is_missing(s.emoticon)) {
            emoticon.push_back(s.emoticon);
            with_emoticon += 1.0;
        }
        positive += s.positive;
        negative += s.negative;
        words += s.words;
        h_hits += s.happiness_hits;
        v_hits += s.vad_hits;
    }
    auto pair = [&](const std::string& name, const std::vector<double>& v, const std::string& what) {
        b.add("sentiment." + name + ".mean", mean_or_missing(v), "sentiment.mean", "mean per-tweet " + what);
        b.add("sentiment." + name + ".std", std_or_missing(v), "sentiment.std", "std of per-tweet " + what);
    };
    pair("happiness", happiness, "happiness score");
    pair("valence", valence, "valence");
    pair("arousal", arousal, "arousal");
    pair("dominance", dominance, "dominance");
    pair("emoticon", emoticon, "emoticon polarity");
    const double n = static_cast<double>(tweets.size());
    b.add("sentiment.emoticon_tweet_fraction", tweets.empty() ? kMissing : with_emoticon / n, "sentiment.fraction",
          "fraction of tweets with at least one emoticon");
    b.add("sentiment.positive_emoticons_per_tweet", tweets.empty() ? kMissing : positive / n, "sentiment.rate",
          "positive emoticons per tweet");
    b.add("sentiment.negative_emoticons_per_tweet", tweets.empty() ? kMissing : negative / n, "sentiment.rate",
          "negative emoticons per tweet");
    b.add("sentiment.happiness_coverage", ratio_or_missing(h_hits, words), "sentiment.coverage",
          "fraction of words found in the happiness lexicon");
    b.add("sentiment.vad_coverage", ratio_or_missing(v_hits, words), "sentiment.coverage",
          "fraction of words found in the valence-arousal-dominance lexicon");
    return b;
}

std::array<FeatureBlock, kFeatureClassCount> extract_blocks(const AccountSnapshot& snapshot,
                                                             const Lexicons& lexicons) {
    return {network_features(build_graphs(snapshot)),
            user_features(snapshot.user, snapshot.captured_at),
            friends_features(derive_contacts(snapshot), snapshot.captured_at),
            temporal_features(snapshot.tweets, snapshot.mentions, snapshot.captured_at),
            content_features(snapshot.tweets, lexicons),
            sentiment_features(snapshot.tweets, lexicons)};
}

const FeatureRegistry& default_registry() {
    static const FeatureRegistry registry = [] {
        AccountSnapshot empty;
        empty.user.user_id = "0";
        empty.user.screen_name = "registry";
        std::vector<FeatureSpec> specs;
        for (const auto& block : extract_blocks(empty, Lexicons{}))
            specs.insert(specs.end(), block.specs().begin(), block.specs().end());
        return FeatureRegistry(std::move(specs));
    }();
    return registry;
}

FeatureVector extract_all(const AccountSnapshot& snapshot, const FeatureRegistry& registry,
                          const Lexicons& lexicons) {
    FeatureVector out{registry.digest(), std::vector<double>(registry.size(), kMissing)};
    std::vector<bool> filled(registry.size(), false);
    for (const auto& block : extract_blocks(snapshot, lexicons)) {
        for (std::size_t i = 0; i < block.size(); ++i) {
            std::size_t idx = registry.index_of(block.specs()[i].name);
            if (idx == FeatureRegistry::npos) continue;
            out.values[idx] = block.values()[i];
            filled[idx] = true;
        }
    }
    for (std::size_t i = 0; i < filled.size(); ++i)
        if (!filled[i]) throw RegistryMismatch("no extractor produces feature '" + registry.at(i).name + "'");
    return out;
}

}  // namespace botscore
