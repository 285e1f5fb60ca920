#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>

namespace botscore {

enum class PosTag { noun, verb, adjective, adverb, pronoun, determiner, preposition, interjection, other };

inline constexpr int kPosTagCount = 9;
const char* pos_tag_name(PosTag tag);
// Throws LexiconError for unknown names.
PosTag pos_tag_from_name(std::string_view name);

struct VadScore {
    double valence = 0.0;
    double arousal = 0.0;
    double dominance = 0.0;
};

// Word-level resources used by the content and sentiment extractors.
// All lookups use lowercase keys; emoticon patterns are matched verbatim.
struct Lexicons {
    std::unordered_map<std::string, double> happiness;
    std::unordered_map<std::string, VadScore> vad;
    std::unordered_map<std::string, int> emoticons;  // pattern -> +1 / -1
    std::unordered_map<std::string, PosTag> pos;
};

// TSV readers. UTF-8, `#` starts a comment line, blank lines skipped.
// Throw LexiconError naming file and line on malformed rows.
std::unordered_map<std::string, double> parse_happiness_lexicon(std::string_view text,
                                                                const std::string& origin = "happiness");
std::unordered_map<std::string, VadScore> parse_vad_lexicon(std::string_view text,
                                                            const std::string& origin = "vad");
std::unordered_map<std::string, int> parse_emoticon_list(std::string_view text,
                                                         const std::string& origin = "emoticons");
std::unordered_map<std::string, PosTag> parse_pos_lexicon(std::string_view text,
                                                          const std::string& origin = "pos");

// Loads happiness.tsv, vad.tsv, emoticons.tsv and pos_lexicon.tsv from `dir`.
Lexicons load_lexicons(const std::filesystem::path& dir);

// $BOTSCORE_LEXICONS if set, else the data/lexicons directory of the source tree.
std::filesystem::path default_lexicon_dir();

}  // namespace botscore
