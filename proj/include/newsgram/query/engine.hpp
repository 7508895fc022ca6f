#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsgram/query/index.hpp"
#include "newsgram/query/rolling.hpp"

namespace newsgram::query {

enum class MatchMode { exact, within };
enum class BigramMode { anywhere, first, second };
enum class PatternKind { exact, within, bigram };

inline constexpr std::size_t kMaxPatterns = 10;
inline constexpr std::size_t kDefaultBigramLimit = 200;

std::optional<MatchMode> parse_match_mode(std::string_view text);
std::optional<BigramMode> parse_bigram_mode(std::string_view text);
std::string_view to_string(MatchMode mode);
std::string_view to_string(BigramMode mode);
std::string_view to_string(PatternKind kind);

/// A validated query: sanitized, deduplicated patterns and a closed range.
struct QuerySpec {
    std::vector<std::string> patterns;
    MatchMode mode = MatchMode::exact;
    Date from;
    Date to;
    int window = 1;
};

/// What a user submits: comma-separated patterns and optional bounds.
struct QueryRequest {
    std::string patterns;
    MatchMode mode = MatchMode::exact;
    std::optional<Date> from;  // defaults to the first corpus day
    std::optional<Date> to;    // defaults to the last corpus day
    int window = 1;
};

struct PreparedQuery {
    QuerySpec spec;
    std::vector<std::string> notices;  // dropped entries etc.
};

/// Sanitizes and validates a request. Throws InvalidQuery (bad window, bad
/// range, all patterns empty, more than two words in a pattern) or
/// TooManyPatterns (more than kMaxPatterns distinct patterns).
PreparedQuery prepare_query(const QueryRequest& request, const CorpusIndex& index);

struct SeriesPoint {
    Date date;
    Count abs = 0;
    double rel = 0.0;
    std::optional<double> smoothed;
};

struct PatternSeries {
    std::string pattern;
    PatternKind kind = PatternKind::exact;
    std::vector<SeriesPoint> points;  // every calendar day of the range
};

struct HitRow {
    std::string word_form;
    std::string pattern;
    Count count = 0;
};

struct QueryResult {
    QuerySpec spec;
    std::vector<PatternSeries> series;  // in spec.patterns order
    std::vector<HitRow> hits;           // within mode only
    std::vector<std::string> notices;
};

/// Per-day count of the form equal to pattern, relative to the day's tokens.
std::vector<SeriesPoint> match_exact(const CorpusIndex& index, const std::string& pattern, Date from, Date to,
                                     int window = 1);

struct WithinMatch {
    std::vector<SeriesPoint> points;
    std::vector<HitRow> hits;  // count descending, then form ascending
};

/// Per-day total of every form containing pattern, plus per-form totals.
WithinMatch match_within(const CorpusIndex& index, const std::string& pattern, Date from, Date to, int window = 1);

/// Per-day count of the exact bigram "first second", relative to the day's
/// bigram total.
std::vector<SeriesPoint> match_bigram(const CorpusIndex& index, const std::string& pattern, Date from, Date to,
                                      int window = 1);

QueryResult run_query(const QuerySpec& spec, const CorpusIndex& index);

struct BigramHit {
    std::string first;
    std::string second;
    Count count = 0;
};

/// Bigrams whose first or second form contains pattern (anywhere), or whose
/// first/second form equals it, ranked by count within [from, to].
/// Throws InvalidQuery for a multi-word or empty pattern.
std::vector<BigramHit> find_bigrams(const CorpusIndex& index, const std::string& pattern, BigramMode mode, Date from,
                                    Date to, std::size_t limit = kDefaultBigramLimit);

}  // namespace newsgram::query
