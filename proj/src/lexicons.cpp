#include "botscore/lexicons.hpp"

#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "botscore/account.hpp"
#include "botscore/errors.hpp"

namespace botscore {

namespace {

constexpr std::array<const char*, kPosTagCount> kTagNames = {
    "noun", "verb", "adjective", "adverb", "pronoun", "determiner", "preposition", "interjection", "other"};

std::vector<std::string> split_tabs(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        out.emplace_back(line.substr(start, tab == std::string_view::npos ? line.npos : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    return out;
}

double parse_real(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw LexiconError(where + ": expected a number, got '" + s + "'");
    }
}

// Calls `row(fields, where)` for every data line with exactly `columns` fields.
template <typename Fn>
void for_each_row(std::string_view text, const std::string& origin, std::size_t columns, Fn row) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        std::string where = origin + ":" + std::to_string(line_no);
        auto fields = split_tabs(line);
        if (fields.size() != columns)
            throw LexiconError(where + ": expected " + std::to_string(columns) + " tab-separated fields");
        if (fields[0].empty()) throw LexiconError(where + ": empty key");
        row(fields, where);
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LexiconError("cannot open lexicon file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

const char* pos_tag_name(PosTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

PosTag pos_tag_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kTagNames.size(); ++i)
        if (name == kTagNames[i]) return static_cast<PosTag>(i);
    throw LexiconError("unknown part-of-speech tag '" + std::string(name) + "'");
}

std::unordered_map<std::string, double> parse_happiness_lexicon(std::string_view text,
                                                                const std::string& origin) {
    std::unordered_map<std::string, double> out;
    for_each_row(text, origin, 2, [&](const std::vector<std::string>& f, const std::string& where) {
        out[ascii_lower(f[0])] = parse_real(f[1], where);
    });
    return out;
}

std::unordered_map<std::string, VadScore> parse_vad_lexicon(std::string_view text,
                                                            const std::string& origin) {
    std::unordered_map<std::string, VadScore> out;
    for_each_row(text, origin, 4, [&](const std::vector<std::string>& f, const std::string& where) {
        out[ascii_lower(f[0])] = {parse_real(f[1], where), parse_real(f[2], where), parse_real(f[3], where)};
    });
    return out;
}

std::unordered_map<std::string, int> parse_emoticon_list(std::string_view text, const std::string& origin) {
    std::unordered_map<std::string, int> out;
    for_each_row(text, origin, 2, [&](const std::vector<std::string>& f, const std::string& where) {
        const std::string& p = f[1];
        int polarity;
        if (p == "+1" || p == "1")
            polarity = 1;
        else if (p == "-1")
            polarity = -1;
        else
            throw LexiconError(where + ": polarity must be +1 or -1, got '" + p + "'");
        out[f[0]] = polarity;
    });
    return out;
}

std::unordered_map<std::string, PosTag> parse_pos_lexicon(std::string_view text, const std::string& origin) {
    std::unordered_map<std::string, PosTag> out;
    for_each_row(text, origin, 2, [&](const std::vector<std::string>& f, const std::string& where) {
        try {
            out[ascii_lower(f[0])] = pos_tag_from_name(f[1]);
        } catch (const LexiconError& e) {
            throw LexiconError(where + ": " + e.what());
        }
    });
    return out;
}

Lexicons load_lexicons(const std::filesystem::path& dir) {
    auto load = [&](const char* name) {
        auto path = dir / name;
        return std::make_pair(read_file(path), path.string());
    };
    Lexicons lex;
    auto [h, hp] = load("happiness.tsv");
    lex.happiness = parse_happiness_lexicon(h, hp);
    auto [v, vp] = load("vad.tsv");
    lex.vad = parse_vad_lexicon(v, vp);
    auto [e, ep] = load("emoticons.tsv");
    lex.emoticons = parse_emoticon_list(e, ep);
    auto [p, pp] = load("pos_lexicon.tsv");
    lex.pos = parse_pos_lexicon(p, pp);
    return lex;
}

std::filesystem::path default_lexicon_dir() {
    if (const char* env = std::getenv("BOTSCORE_LEXICONS"); env && *env) return env;
    return std::filesystem::path(BOTSCORE_DEFAULT_DATA_DIR) / "lexicons";
}

}  // namespace botscore
