#include <fstream>
#include <random>

#include <unicode/uchar.h>

#include "doctest.h"
#include "newsgram/errors.hpp"
#include "newsgram/text/markup.hpp"
#include "newsgram/text/tokenize.hpp"
#include "newsgram/utf8.hpp"
#include "test_support.hpp"

using namespace newsgram;
using namespace newsgram::text;
using Tokens = std::vector<std::string>;

namespace {

const ExclusionList& defaults() {
    static const auto list = ExclusionList::defaults();
    return list;
}

std::string join(const Tokens& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

// Every code point of t is a letter, mark, decimal digit or '-', t is
// lowercase, not digit-only, and not hyphen-delimited.
bool well_formed(const std::string& t) {
    if (t.empty() || t.front() == '-' || t.back() == '-') return false;
    bool only_digits = true;
    std::size_t pos = 0;
    while (pos < t.size()) {
        const auto cp = static_cast<UChar32>(utf8::next(t, pos));
        const auto cat = U_GET_GC_MASK(cp);
        const bool letter = cat & U_GC_L_MASK;
        const bool mark = cat & U_GC_M_MASK;
        const bool digit = u_charType(cp) == U_DECIMAL_DIGIT_NUMBER;
        if (!(letter || mark || digit || cp == '-')) return false;
        if (letter && u_tolower(cp) != cp) return false;
        if (!digit) only_digits = false;
    }
    return !only_digits;
}

}  // namespace

TEST_CASE("strip_markup removes tags, decodes entities and collapses whitespace") {
    CHECK(strip_markup("<b>Corona</b>-Krise") == "Corona-Krise");
    CHECK(strip_markup("Ticker &amp; News") == "Ticker & News");
    CHECK(strip_markup("a <br/> b") == "a b");
    CHECK(strip_markup("  <p>\n Hallo\t Welt </p> ") == "Hallo Welt");
    CHECK(strip_markup("M&auml;rz &#228; &#xE4; &#XC4;") == "März ä ä Ä");
    CHECK(strip_markup("a < b") == "a < b");
    CHECK(strip_markup("&unknown; &#xZZ; &") == "&unknown; &#xZZ; &");
    CHECK(strip_markup("") == "");
    CHECK(strip_markup("<a href=\"x\"><img src='y'/></a>") == "");
}

TEST_CASE("decode_entities leaves malformed references alone") {
    CHECK(decode_entities("&lt;p&gt;") == "<p>");
    CHECK(decode_entities("&quot;x&quot; &apos;y&apos;") == "\"x\" 'y'");
    CHECK(decode_entities("&nbsp;") == "\xC2\xA0");
    CHECK(decode_entities("&#8211;") == "\xE2\x80\x93");
    CHECK(decode_entities("&#;") == "&#;");
    CHECK(decode_entities("&amp") == "&amp");
    CHECK(decode_entities("&#1114112;") == "&#1114112;");
}

TEST_CASE("to_lower is a per-code-point simple mapping") {
    CHECK(to_lower("ÄÖÜ STRASSE") == "äöü strasse");
    CHECK(to_lower("Straße") == "straße");
    CHECK(to_lower("ẞ") == "ß");
    CHECK(to_lower("ΣΟΦΙΑ") == "σοφια");
}

TEST_CASE("tokenize worked examples") {
    CHECK(tokenize("Die Corona-Krise: was nun?", defaults()) == Tokens{"die", "corona-krise", "was", "nun"});
    CHECK(tokenize("120 km/h auf der A8!", defaults()) == Tokens{"auf", "der", "a8"});
    CHECK(tokenize("---", defaults()).empty());
    CHECK(tokenize("FAZ-Sprinter startet", defaults()) == Tokens{"startet"});
}

TEST_CASE("tokenize edge cases") {
    CHECK(tokenize("", defaults()).empty());
    CHECK(tokenize("   \t\n ", defaults()).empty());
    CHECK(tokenize("siehe https://www.youtube.com/watch?v=1 und youtu.be/abc", defaults()) == Tokens{"siehe", "und"});
    CHECK(tokenize("Heise: neu", defaults()) == Tokens{"neu"});
    CHECK(tokenize("2020 covid-19 1.000,50", defaults()) == Tokens{"covid-19"});
    CHECK(tokenize("--corona--", defaults()) == Tokens{"corona"});
    CHECK(tokenize("a b c", defaults()) == Tokens{"a", "b", "c"});
    CHECK(tokenize("„Zitat“ «quote» 5€ §3a", defaults()) == Tokens{"zitat", "quote", "3a"});
    CHECK(tokenize("Ⅻ ²³", defaults()).empty());
    CHECK(tokenize("Corona-Krise", ExclusionList{}) == Tokens{"corona-krise"});

    auto seq = tokenize("Neue Normalität", defaults(), TextUnit::description);
    CHECK(seq.unit == TextUnit::description);
    CHECK(seq.tokens == Tokens{"neue", "normalität"});
}

TEST_CASE("every default exclusion literal is removed, in any case and with trailing punctuation") {
    const auto& literals = defaults().literals();
    REQUIRE(literals.size() == 12);
    for (const auto& lit : literals) {
        CAPTURE(lit);
        CHECK(tokenize("vor " + lit + " nach", defaults()) == Tokens{"vor", "nach"});
        CHECK(tokenize("vor " + to_lower(lit) + ": nach", defaults()) == Tokens{"vor", "nach"});
        std::string upper;
        for (char c : lit) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        CHECK(tokenize(upper, defaults()).empty());
        // Without the list the literal survives (unless it contains a slash).
        if (lit.find('/') == std::string::npos) CHECK(tokenize(lit, ExclusionList{}) == Tokens{lit});
    }
}

TEST_CASE("exclusion list file loading") {
    testing::TempDir dir("excl");
    testing::spit(dir / "x.txt", "# comment\n\nFOO\nbar-baz\r\n  # indented comment\n");
    const auto list = ExclusionList::load(dir / "x.txt");
    CHECK(list.literals().size() == 2);
    CHECK(list.contains("foo"));
    CHECK(list.contains("bar-baz"));
    CHECK_THROWS_AS(ExclusionList::load(dir / "missing.txt"), ConfigError);
}

TEST_CASE("the shipped exclusion file equals the built-in defaults") {
    const auto shipped = ExclusionList::load(testing::kFixtures / ".." / ".." / "config" / "exclusions.txt");
    CHECK(shipped.literals() == defaults().literals());
}

TEST_CASE("German headline golden fixture") {
    std::ifstream in(testing::kFixtures / "headlines.txt");
    std::ifstream expected(testing::kFixtures / "headlines.expected");
    REQUIRE(in);
    REQUIRE(expected);
    std::string line;
    std::string want;
    int n = 0;
    while (std::getline(in, line)) {
        REQUIRE(std::getline(expected, want));
        ++n;
        CAPTURE(n);
        CAPTURE(line);
        CHECK(join(tokenize(strip_markup(line), defaults())) == want);
    }
    CHECK(n == 20);
}

TEST_CASE("tokenize output invariants on random text") {
    std::mt19937_64 rng(20200414);
    const std::vector<std::string> pieces = {
        "Corona", "-", "--", "KM/H", "km/h", "heise", "Heise:", "youtube.com/x", "https://youtu.be/y", "123",
        "4.5", "ß", "Ä", "é", "é", "€", "§", "!", "?", "„", "“", " ", "  ", "\t", " ", "–",
        "faz-sprinter", "Spiegel-Titelstory", "a", "b-c", "x1", "Ⅻ", "٣", "😀", "(", ")", "\"", "'"};
    std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
    std::uniform_int_distribution<int> len(0, 40);
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text;
        for (int i = len(rng); i > 0; --i) text += pieces[pick(rng)];
        const auto tokens = tokenize(text, defaults());
        CAPTURE(text);
        for (const auto& t : tokens) {
            CAPTURE(t);
            CHECK(well_formed(t));
            CHECK_FALSE(defaults().contains(t));
            CHECK(t.find("youtube.com") == std::string::npos);
            CHECK(t.find("youtu.be") == std::string::npos);
        }
        // Re-tokenizing the joined output is a fixed point.
        CHECK(tokenize(join(tokens), defaults()) == tokens);
    }
}

TEST_CASE("tokenize preserves source word order") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Tokens words;
        for (int i = 0; i < 12; ++i) words.push_back(testing::random_word(rng));
        std::string text;
        for (const auto& w : words) text += w + (rng() % 2 ? ", " : " ");
        CHECK(tokenize(text, ExclusionList{}) == words);
    }
}
