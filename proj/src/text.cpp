#include "botscore/text.hpp"

#include <array>
#include <utility>

#include "botscore/account.hpp"

namespace botscore {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c >= 0x80 ||
           c == '\'';
}

bool starts_with(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

void push_word(std::string_view piece, std::vector<std::string>& out) {
    while (!piece.empty() && piece.front() == '\'') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == '\'') piece.remove_suffix(1);
    if (!piece.empty()) out.push_back(ascii_lower(piece));
}

struct SuffixRule {
    std::string_view suffix;
    std::size_t min_length;
    PosTag tag;
};

// First match wins.
constexpr std::array<SuffixRule, 22> kSuffixRules = {{
    {"ly", 4, PosTag::adverb},
    {"ward", 5, PosTag::adverb},
    {"wise", 5, PosTag::adverb},
    {"ing", 5, PosTag::verb},
    {"ed", 4, PosTag::verb},
    {"ize", 5, PosTag::verb},
    {"ise", 5, PosTag::verb},
    {"ify", 5, PosTag::verb},
    {"ous", 5, PosTag::adjective},
    {"ful", 5, PosTag::adjective},
    {"able", 6, PosTag::adjective},
    {"ible", 6, PosTag::adjective},
    {"ive", 5, PosTag::adjective},
    {"less", 6, PosTag::adjective},
    {"ic", 5, PosTag::adjective},
    {"al", 5, PosTag::adjective},
    {"tion", 5, PosTag::noun},
    {"sion", 5, PosTag::noun},
    {"ment", 6, PosTag::noun},
    {"ness", 6, PosTag::noun},
    {"ity", 5, PosTag::noun},
    {"ship", 6, PosTag::noun},
}};

}  // namespace

TokenizedText tokenize(std::string_view text) {
    TokenizedText out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i == start) continue;
        std::string_view tok = text.substr(start, i - start);
        out.raw_tokens.emplace_back(tok);

        std::string lower = ascii_lower(tok);
        if (starts_with(lower, "http://") || starts_with(lower, "https://") || starts_with(lower, "www.")) {
            ++out.url_count;
            continue;
        }
        if (tok.size() > 1 && tok[0] == '@' && is_word_byte(static_cast<unsigned char>(tok[1]))) {
            ++out.mention_count;
            continue;
        }
        if (tok.size() > 1 && tok[0] == '#' && is_word_byte(static_cast<unsigned char>(tok[1]))) {
            ++out.hashtag_count;
            continue;
        }
        std::size_t j = 0;
        while (j < tok.size()) {
            while (j < tok.size() && !is_word_byte(static_cast<unsigned char>(tok[j]))) ++j;
            std::size_t ws = j;
            while (j < tok.size() && is_word_byte(static_cast<unsigned char>(tok[j]))) ++j;
            if (j > ws) push_word(tok.substr(ws, j - ws), out.words);
        }
    }
    return out;
}

PosTag tag_word(const std::string& word, const Lexicons& lexicons) {
    if (auto it = lexicons.pos.find(word); it != lexicons.pos.end()) return it->second;
    bool has_alpha = false;
    for (unsigned char c : word)
        if ((c >= 'a' && c <= 'z') || c >= 0x80) has_alpha = true;
    if (!has_alpha) return PosTag::other;
    for (const auto& rule : kSuffixRules)
        if (word.size() >= rule.min_length && ends_with(word, rule.suffix)) return rule.tag;
    return PosTag::noun;
}

std::vector<PosTag> tag_words(const std::vector<std::string>& words, const Lexicons& lexicons) {
    std::vector<PosTag> tags;
    tags.reserve(words.size());
    for (const auto& w : words) tags.push_back(tag_word(w, lexicons));
    return tags;
}

}  // namespace botscore
