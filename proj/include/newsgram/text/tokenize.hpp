#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace newsgram::text {

/// Literal word forms deleted from every text. Entries are lowercase and
/// matched verbatim.
class ExclusionList {
public:
    ExclusionList() = default;
    explicit ExclusionList(std::set<std::string, std::less<>> literals);

    /// The twelve source-specific forms excluded from the news corpus.
    static ExclusionList defaults();

    /// One literal per line, `#` starts a comment, blank lines ignored.
    /// Entries are lowercased on load.
    static ExclusionList load(const std::filesystem::path& path);

    bool contains(std::string_view form) const { return literals_.find(form) != literals_.end(); }
    /// Matches a token after punctuation removal against the literals after
    /// the same removal ("km/h" -> "kmh").
    bool contains_cleaned(std::string_view form) const { return cleaned_.find(form) != cleaned_.end(); }
    const std::set<std::string, std::less<>>& literals() const { return literals_; }

private:
    std::set<std::string, std::less<>> literals_;
    std::set<std::string, std::less<>> cleaned_;
};

enum class TextUnit { title, description };

struct TokenSequence {
    std::vector<std::string> tokens;
    TextUnit unit = TextUnit::title;

    bool empty() const { return tokens.empty(); }
    std::size_t size() const { return tokens.size(); }
};

/// Unicode simple lowercase mapping, code point by code point. Never
/// changes the number of code points (so "ß" stays "ß").
std::string to_lower(std::string_view text);

/// True for tokens that reference YouTube ("youtube.com" or "youtu.be").
bool is_youtube_link(std::string_view lowered_token);

/// Turns markup-free text into normalized word forms:
///   1. lowercase
///   2. split on Unicode whitespace
///   3. drop YouTube links
///   4. drop exclusion literals (before punctuation removal, so "km/h" matches)
///   5. delete every character that is not a letter, mark, decimal digit or '-'
///   6. strip leading/trailing hyphens
///   7. drop empty and digit-only tokens, and tokens that equal a literal
///      after both went through steps 5-6 ("heise:" -> "heise",
///      "km/h," -> "kmh")
std::vector<std::string> tokenize(std::string_view text, const ExclusionList& exclusions);

TokenSequence tokenize(std::string_view text, const ExclusionList& exclusions, TextUnit unit);

}  // namespace newsgram::text
