#include "newsgram/text/tokenize.hpp"

#include <fstream>

#include <unicode/uchar.h>

#include "newsgram/errors.hpp"
#include "newsgram/utf8.hpp"

namespace newsgram::text {

namespace {

bool is_word_char(char32_t cp) {
    const auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
    return (mask & (U_GC_L_MASK | U_GC_M_MASK | U_GC_ND_MASK)) != 0 || cp == U'-';
}

bool is_digit_only(std::string_view token) {
    std::size_t pos = 0;
    while (pos < token.size())
        if (u_charType(static_cast<UChar32>(utf8::next(token, pos))) != U_DECIMAL_DIGIT_NUMBER)
            return false;
    return !token.empty();
}

std::string keep_word_chars(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    std::size_t pos = 0;
    while (pos < token.size()) {
        const std::size_t start = pos;
        if (is_word_char(utf8::next(token, pos))) out.append(token.substr(start, pos - start));
    }
    return out;
}

std::string_view trim_hyphens(std::string_view token) {
    while (!token.empty() && token.front() == '-') token.remove_prefix(1);
    while (!token.empty() && token.back() == '-') token.remove_suffix(1);
    return token;
}

}  // namespace

ExclusionList::ExclusionList(std::set<std::string, std::less<>> literals)
    : literals_(std::move(literals)) {
    for (const auto& lit : literals_) {
        const std::string cleaned = keep_word_chars(lit);
        if (auto form = trim_hyphens(cleaned); !form.empty()) cleaned_.emplace(form);
    }
}

ExclusionList ExclusionList::defaults() {
    return ExclusionList({"t-onlinede-redakteurin", "t-onlinede-redakteur", "sport-live-blog",
                          "t-onlinede", "focus-online-redakteurin", "focus-online-redakteur",
                          "focus-online-reporter", "spiegel-titelstory", "faz-sprinter", "heise",
                          "derstandardat", "km/h"});
}

ExclusionList ExclusionList::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open exclusion list " + path.string());
    std::set<std::string, std::less<>> literals;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t b = 0, e = line.size();
        while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
        while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
        if (b == e) continue;
        literals.insert(to_lower(std::string_view(line).substr(b, e - b)));
    }
    return ExclusionList(std::move(literals));
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size())
        utf8::append(out, static_cast<char32_t>(u_tolower(static_cast<UChar32>(utf8::next(text, pos)))));
    return out;
}

bool is_youtube_link(std::string_view lowered_token) {
    return lowered_token.find("youtube.com") != std::string_view::npos ||
           lowered_token.find("youtu.be") != std::string_view::npos;
}

std::vector<std::string> tokenize(std::string_view text, const ExclusionList& exclusions) {
    const std::string lowered = to_lower(text);
    const std::string_view view = lowered;

    std::vector<std::string> tokens;
    std::size_t pos = 0;
    std::size_t word_start = std::string_view::npos;
    auto flush = [&](std::size_t end) {
        if (word_start == std::string_view::npos) return;
        const auto raw = view.substr(word_start, end - word_start);
        word_start = std::string_view::npos;
        if (is_youtube_link(raw) || exclusions.contains(raw)) return;
        const std::string cleaned = keep_word_chars(raw);
        const auto form = trim_hyphens(cleaned);
        if (form.empty() || is_digit_only(form) || exclusions.contains_cleaned(form)) return;
        tokens.emplace_back(form);
    };
    while (pos < view.size()) {
        const std::size_t start = pos;
        if (utf8::is_space(utf8::next(view, pos)))
            flush(start);
        else if (word_start == std::string_view::npos)
            word_start = start;
    }
    flush(view.size());
    return tokens;
}

TokenSequence tokenize(std::string_view text, const ExclusionList& exclusions, TextUnit unit) {
    return TokenSequence{tokenize(text, exclusions), unit};
}

}  // namespace newsgram::text
