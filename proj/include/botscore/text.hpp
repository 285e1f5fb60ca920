#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "botscore/lexicons.hpp"

namespace botscore {

struct TokenizedText {
    std::vector<std::string> raw_tokens;  // whitespace-separated, untouched
    std::vector<std::string> words;       // lowercase word tokens
    int url_count = 0;
    int mention_count = 0;
    int hashtag_count = 0;
};

// Splits on whitespace; URL, @mention and #hashtag tokens go to their counters,
// remaining tokens are broken at non-word characters. ASCII letters, digits,
// inner apostrophes and any non-ASCII byte count as word characters.
TokenizedText tokenize(std::string_view text);

// Closed-class lexicon lookup, then suffix rules, then noun. Pure digits and
// punctuation-like tokens are `other`.
PosTag tag_word(const std::string& word, const Lexicons& lexicons);

std::vector<PosTag> tag_words(const std::vector<std::string>& words, const Lexicons& lexicons);

}  // namespace botscore
