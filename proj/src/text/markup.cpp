#include "newsgram/text/markup.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <optional>
#include <string_view>
#include <utility>

#include "newsgram/utf8.hpp"

namespace newsgram::text {

namespace {

struct NamedEntity {
    std::string_view name;
    char32_t cp;
};

// Sorted by name for binary search.
constexpr auto kEntities = std::to_array<NamedEntity>({
    {"AElig", 0xC6},   {"Aacute", 0xC1}, {"Acirc", 0xC2},  {"Agrave", 0xC0}, {"Aring", 0xC5},
    {"Atilde", 0xC3},  {"Auml", 0xC4},   {"Ccedil", 0xC7}, {"ETH", 0xD0},    {"Eacute", 0xC9},
    {"Ecirc", 0xCA},   {"Egrave", 0xC8}, {"Euml", 0xCB},   {"Iacute", 0xCD}, {"Icirc", 0xCE},
    {"Igrave", 0xCC},  {"Iuml", 0xCF},   {"Ntilde", 0xD1}, {"OElig", 0x152}, {"Oacute", 0xD3},
    {"Ocirc", 0xD4},   {"Ograve", 0xD2}, {"Oslash", 0xD8}, {"Otilde", 0xD5}, {"Ouml", 0xD6},
    {"Scaron", 0x160}, {"THORN", 0xDE},  {"Uacute", 0xDA}, {"Ucirc", 0xDB},  {"Ugrave", 0xD9},
    {"Uuml", 0xDC},    {"Yacute", 0xDD}, {"Yuml", 0x178},  {"aacute", 0xE1}, {"acirc", 0xE2},
    {"acute", 0xB4},   {"aelig", 0xE6},  {"agrave", 0xE0}, {"amp", 0x26},    {"apos", 0x27},
    {"aring", 0xE5},   {"atilde", 0xE3}, {"auml", 0xE4},   {"bdquo", 0x201E}, {"brvbar", 0xA6},
    {"bull", 0x2022},  {"ccedil", 0xE7}, {"cedil", 0xB8},  {"cent", 0xA2},   {"copy", 0xA9},
    {"curren", 0xA4},  {"deg", 0xB0},    {"divide", 0xF7}, {"eacute", 0xE9}, {"ecirc", 0xEA},
    {"egrave", 0xE8},  {"eth", 0xF0},    {"euml", 0xEB},   {"euro", 0x20AC}, {"frac12", 0xBD},
    {"frac14", 0xBC},  {"frac34", 0xBE}, {"gt", 0x3E},     {"hellip", 0x2026}, {"iacute", 0xED},
    {"icirc", 0xEE},   {"iexcl", 0xA1},  {"igrave", 0xEC}, {"iquest", 0xBF}, {"iuml", 0xEF},
    {"laquo", 0xAB},   {"ldquo", 0x201C}, {"lsaquo", 0x2039}, {"lsquo", 0x2018}, {"lt", 0x3C},
    {"macr", 0xAF},    {"mdash", 0x2014}, {"micro", 0xB5}, {"middot", 0xB7}, {"nbsp", 0xA0},
    {"ndash", 0x2013}, {"not", 0xAC},    {"ntilde", 0xF1}, {"oacute", 0xF3}, {"ocirc", 0xF4},
    {"oelig", 0x153},  {"ograve", 0xF2}, {"ordf", 0xAA},   {"ordm", 0xBA},   {"oslash", 0xF8},
    {"otilde", 0xF5},  {"ouml", 0xF6},   {"para", 0xB6},   {"plusmn", 0xB1}, {"pound", 0xA3},
    {"quot", 0x22},    {"raquo", 0xBB},  {"rdquo", 0x201D}, {"reg", 0xAE},   {"rsaquo", 0x203A},
    {"rsquo", 0x2019}, {"sbquo", 0x201A}, {"scaron", 0x161}, {"sect", 0xA7},  {"shy", 0xAD},
    {"sup1", 0xB9},    {"sup2", 0xB2},   {"sup3", 0xB3},   {"szlig", 0xDF},  {"thinsp", 0x2009},
    {"thorn", 0xFE},   {"times", 0xD7},  {"trade", 0x2122}, {"uacute", 0xFA}, {"ucirc", 0xFB},
    {"ugrave", 0xF9},  {"uml", 0xA8},    {"uuml", 0xFC},   {"yacute", 0xFD}, {"yen", 0xA5},
    {"yuml", 0xFF},
});

static_assert(std::is_sorted(kEntities.begin(), kEntities.end(),
                             [](const NamedEntity& a, const NamedEntity& b) { return a.name < b.name; }));

std::optional<char32_t> lookup_named(std::string_view name) {
    auto it = std::lower_bound(kEntities.begin(), kEntities.end(), name,
                               [](const NamedEntity& e, std::string_view n) { return e.name < n; });
    if (it == kEntities.end() || it->name != name) return std::nullopt;
    return it->cp;
}

std::optional<char32_t> parse_numeric(std::string_view body) {
    int base = 10;
    if (!body.empty() && (body.front() == 'x' || body.front() == 'X')) {
        base = 16;
        body.remove_prefix(1);
    }
    if (body.empty() || body.size() > 8) return std::nullopt;
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value, base);
    if (ec != std::errc{} || ptr != body.data() + body.size()) return std::nullopt;
    if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) return std::nullopt;
    return static_cast<char32_t>(value);
}

std::string remove_tags(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t pos = 0;
    while (pos < raw.size()) {
        auto open = raw.find('<', pos);
        if (open == std::string_view::npos) {
            out.append(raw.substr(pos));
            break;
        }
        auto close = raw.find('>', open + 1);
        if (close == std::string_view::npos) {
            out.append(raw.substr(pos));
            break;
        }
        out.append(raw.substr(pos, open - pos));
        pos = close + 1;
    }
    return out;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = utf8::next(text, pos);
        if (utf8::is_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.append(text.substr(start, pos - start));
    }
    return out;
}

}  // namespace

std::string decode_entities(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto amp = text.find('&', pos);
        if (amp == std::string_view::npos) {
            out.append(text.substr(pos));
            break;
        }
        out.append(text.substr(pos, amp - pos));
        auto semi = text.find(';', amp + 1);
        // Entity names are short; a far-away ';' belongs to something else.
        if (semi == std::string_view::npos || semi - amp > 12) {
            out.push_back('&');
            pos = amp + 1;
            continue;
        }
        auto body = text.substr(amp + 1, semi - amp - 1);
        std::optional<char32_t> cp;
        if (!body.empty() && body.front() == '#')
            cp = parse_numeric(body.substr(1));
        else
            cp = lookup_named(body);
        if (cp) {
            utf8::append(out, *cp);
            pos = semi + 1;
        } else {
            out.push_back('&');
            pos = amp + 1;
        }
    }
    return out;
}

std::string strip_markup(std::string_view raw) {
    return collapse_whitespace(decode_entities(remove_tags(raw)));
}

}  // namespace newsgram::text
