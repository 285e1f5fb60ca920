#pragma once

#include <cstdint>

#include <nlohmann/json.hpp>

#include "botscore/ingest.hpp"
#include "botscore/time.hpp"

namespace botscore {

struct BotProfile {
    double interval_regularity = 0.85;  // probability a gap is exactly one posting period
    double hashtag_rate = 0.7;          // fraction of tweets carrying hashtags
    double lexical_diversity = 0.2;     // share of novel words per template
    double duplicate_text_rate = 0.35;  // probability a tweet repeats an earlier text
    double follower_skew = 0.85;        // how far followers fall below followees
};

struct HumanProfile {
    double diurnal_strength = 0.9;  // probability a post lands in waking hours
    double reply_rate = 0.3;
    int vocabulary_size = 600;
};

// Parameters of the labeled-corpus generator used in place of a real
// honeypot dataset.
struct SynthParams {
    std::uint64_t seed = 42;
    int bots = 500;
    int humans = 500;
    BotProfile bot;
    HumanProfile human;
    // Per account and behaviour dimension (timing, text, network, profile,
    // contacts, sentiment), the probability of drawing it from the other
    // class's profile. Keeps classes overlapping.
    double crossover = 0.2;
    Timestamp capture_base = 1449792000;  // 2015-12-11T00:00:00Z
};

// Throws Error on invalid params (counts < 1, rates outside [0,1]).
void validate(const SynthParams& params);

// Deterministic in `params`; every snapshot passes parse_snapshot.
// Bots come first, then humans.
LabeledCorpus generate_corpus(const SynthParams& params);

nlohmann::json synth_params_to_json(const SynthParams& params);

}  // namespace botscore
