#include "newsgram/query/pattern.hpp"

#include "newsgram/text/tokenize.hpp"
#include "newsgram/utf8.hpp"

namespace newsgram::query {

namespace {

constexpr std::string_view kRegexChars = "\\^$.|?*+()[]{}";

}  // namespace

std::string sanitize_pattern(std::string_view raw) {
    std::string kept;
    kept.reserve(raw.size());
    for (char c : raw)
        if (kRegexChars.find(c) == std::string_view::npos) kept.push_back(c);

    std::string collapsed;
    bool pending_space = false;
    std::size_t pos = 0;
    const std::string_view view = kept;
    while (pos < view.size()) {
        const std::size_t start = pos;
        if (utf8::is_space(utf8::next(view, pos))) {
            pending_space = !collapsed.empty();
            continue;
        }
        if (pending_space) collapsed.push_back(' ');
        pending_space = false;
        collapsed.append(view.substr(start, pos - start));
    }
    return text::to_lower(collapsed);
}

std::vector<std::string> split_patterns(std::string_view raw) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = raw.find(',', start);
        out.emplace_back(raw.substr(start, comma == std::string_view::npos ? comma : comma - start));
        if (comma == std::string_view::npos) return out;
        start = comma + 1;
    }
}

std::size_t pattern_parts(std::string_view sanitized) {
    if (sanitized.empty()) return 0;
    std::size_t parts = 1;
    for (char c : sanitized) parts += c == ' ';
    return parts;
}

}  // namespace newsgram::query
