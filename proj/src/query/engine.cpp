#include "newsgram/query/engine.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "newsgram/errors.hpp"
#include "newsgram/kernels/kernels.hpp"
#include "newsgram/query/pattern.hpp"

namespace newsgram::query {

namespace kp = kernels::parallel;

std::optional<MatchMode> parse_match_mode(std::string_view text) {
    if (text == "exact") return MatchMode::exact;
    if (text == "within") return MatchMode::within;
    return std::nullopt;
}

std::optional<BigramMode> parse_bigram_mode(std::string_view text) {
    if (text == "anywhere") return BigramMode::anywhere;
    if (text == "first") return BigramMode::first;
    if (text == "second") return BigramMode::second;
    return std::nullopt;
}

std::string_view to_string(MatchMode mode) { return mode == MatchMode::exact ? "exact" : "within"; }

std::string_view to_string(BigramMode mode) {
    switch (mode) {
        case BigramMode::anywhere: return "anywhere";
        case BigramMode::first: return "first";
        case BigramMode::second: return "second";
    }
    return "anywhere";
}

std::string_view to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::exact: return "exact";
        case PatternKind::within: return "within";
        case PatternKind::bigram: return "bigram";
    }
    return "exact";
}

namespace {

void check_window(int window) {
    if (window < kMinWindow || window > kMaxWindow)
        throw InvalidQuery(fmt::format("window must be between {} and {} days, got {}", kMinWindow, kMaxWindow, window));
}

void check_range(const CorpusIndex& ix, Date from, Date to) {
    if (from > to) throw InvalidQuery("date range starts after it ends: " + format_date(from) + " > " + format_date(to));
    if (ix.empty() || to < ix.days().front() || from > ix.days().back())
        throw EmptyRange("date range " + format_date(from) + " .. " + format_date(to) + " lies outside the corpus");
}

/// Calendar-day series over [from, to]; counts are aligned to the corpus
/// day-index range, days without corpus data count as zero.
std::vector<SeriesPoint> make_series(const CorpusIndex& ix, Date from, Date to,
                                     const std::optional<std::pair<std::uint32_t, std::uint32_t>>& range,
                                     std::span<const Count> per_day, const std::vector<Count>& totals, int window) {
    const auto n = static_cast<std::size_t>(days_between(from, to) + 1);
    std::vector<SeriesPoint> points(n);
    std::vector<double> rel(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) points[i].date = from + std::chrono::days{static_cast<long>(i)};
    if (range) {
        for (auto d = range->first; d <= range->second; ++d) {
            const auto offset = static_cast<std::size_t>(days_between(from, ix.days()[d]));
            auto& p = points[offset];
            p.abs = per_day[d - range->first];
            p.rel = totals[d] ? static_cast<double>(p.abs) / static_cast<double>(totals[d]) : 0.0;
            rel[offset] = p.rel;
        }
    }
    const auto smoothed = rolling_mean(rel, window);
    for (std::size_t i = 0; i < n; ++i) points[i].smoothed = smoothed[i];
    return points;
}

std::vector<SeriesPoint> single_key_series(const CorpusIndex& ix, const kernels::Postings& postings,
                                           std::optional<std::uint32_t> key, const std::vector<Count>& totals,
                                           Date from, Date to, int window) {
    const auto range = ix.day_range(from, to);
    std::vector<Count> per_day(range ? range->second - range->first + 1 : 0, 0);
    if (range && key) {
        Count total = 0;
        const std::uint32_t keys[] = {*key};
        kernels::serial::accumulate(postings, keys, range->first, range->second, per_day, {&total, 1});
    }
    return make_series(ix, from, to, range, per_day, totals, window);
}

std::pair<std::string, std::string> split_bigram(const std::string& pattern) {
    auto space = pattern.find(' ');
    if (space == std::string::npos || pattern.find(' ', space + 1) != std::string::npos)
        throw InvalidQuery("'" + pattern + "' is not a two-word pattern");
    return {pattern.substr(0, space), pattern.substr(space + 1)};
}

}  // namespace

PreparedQuery prepare_query(const QueryRequest& request, const CorpusIndex& index) {
    check_window(request.window);
    PreparedQuery out;
    std::set<std::string> seen;
    for (const auto& raw : split_patterns(request.patterns)) {
        auto p = sanitize_pattern(raw);
        if (p.empty()) {
            if (raw.find_first_not_of(" \t") != std::string::npos)
                out.notices.push_back("pattern '" + raw + "' is empty after removing special characters; ignored");
            continue;
        }
        if (pattern_parts(p) > 2)
            throw InvalidQuery("pattern '" + p + "' has more than two words; only unigrams and bigrams are supported");
        if (!seen.insert(p).second) {
            out.notices.push_back("duplicate pattern '" + p + "' merged");
            continue;
        }
        out.spec.patterns.push_back(std::move(p));
    }
    if (out.spec.patterns.empty()) throw InvalidQuery("no usable search pattern");
    if (out.spec.patterns.size() > kMaxPatterns)
        throw TooManyPatterns(fmt::format("at most {} patterns per query, got {}", kMaxPatterns, out.spec.patterns.size()));
    if (index.empty() && (!request.from || !request.to)) throw EmptyRange("corpus is empty");
    out.spec.mode = request.mode;
    out.spec.from = request.from.value_or(index.empty() ? Date{} : index.days().front());
    out.spec.to = request.to.value_or(index.empty() ? Date{} : index.days().back());
    out.spec.window = request.window;
    check_range(index, out.spec.from, out.spec.to);
    return out;
}

std::vector<SeriesPoint> match_exact(const CorpusIndex& index, const std::string& pattern, Date from, Date to,
                                     int window) {
    check_window(window);
    check_range(index, from, to);
    return single_key_series(index, index.form_postings(), index.form_id(pattern), index.token_totals(), from, to,
                             window);
}

WithinMatch match_within(const CorpusIndex& index, const std::string& pattern, Date from, Date to, int window) {
    check_window(window);
    check_range(index, from, to);
    const auto range = index.day_range(from, to);
    std::vector<Count> per_day(range ? range->second - range->first + 1 : 0, 0);
    WithinMatch out;
    if (range && !pattern.empty()) {
        const auto ids = kp::substring_matches(index.forms(), pattern);
        std::vector<Count> per_form(ids.size(), 0);
        kp::accumulate(index.form_postings(), ids, range->first, range->second, per_day, per_form);
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (per_form[i] > 0) out.hits.push_back({index.forms()[ids[i]], pattern, per_form[i]});
        std::sort(out.hits.begin(), out.hits.end(), [](const HitRow& a, const HitRow& b) {
            return a.count != b.count ? a.count > b.count : a.word_form < b.word_form;
        });
    }
    out.points = make_series(index, from, to, range, per_day, index.token_totals(), window);
    return out;
}

std::vector<SeriesPoint> match_bigram(const CorpusIndex& index, const std::string& pattern, Date from, Date to,
                                      int window) {
    check_window(window);
    check_range(index, from, to);
    const auto [first, second] = split_bigram(pattern);
    std::optional<std::uint32_t> key;
    auto a = index.form_id(first);
    auto b = index.form_id(second);
    if (a && b) key = index.bigram_id(*a, *b);
    return single_key_series(index, index.bigram_postings(), key, index.bigram_totals(), from, to, window);
}

QueryResult run_query(const QuerySpec& spec, const CorpusIndex& index) {
    if (spec.patterns.empty()) throw InvalidQuery("no usable search pattern");
    if (spec.patterns.size() > kMaxPatterns) throw TooManyPatterns("too many patterns");
    check_window(spec.window);
    check_range(index, spec.from, spec.to);

    QueryResult result;
    result.spec = spec;
    for (const auto& p : spec.patterns) {
        PatternSeries s;
        s.pattern = p;
        if (pattern_parts(p) == 2) {
            s.kind = PatternKind::bigram;
            s.points = match_bigram(index, p, spec.from, spec.to, spec.window);
        } else if (spec.mode == MatchMode::exact) {
            s.kind = PatternKind::exact;
            s.points = match_exact(index, p, spec.from, spec.to, spec.window);
        } else {
            s.kind = PatternKind::within;
            auto m = match_within(index, p, spec.from, spec.to, spec.window);
            s.points = std::move(m.points);
            result.hits.insert(result.hits.end(), m.hits.begin(), m.hits.end());
        }
        result.series.push_back(std::move(s));
    }
    std::sort(result.hits.begin(), result.hits.end(), [](const HitRow& a, const HitRow& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.word_form != b.word_form) return a.word_form < b.word_form;
        return a.pattern < b.pattern;
    });
    return result;
}

std::vector<BigramHit> find_bigrams(const CorpusIndex& index, const std::string& pattern, BigramMode mode, Date from,
                                    Date to, std::size_t limit) {
    if (pattern.empty()) throw InvalidQuery("empty bigram finder pattern");
    if (pattern_parts(pattern) != 1) throw InvalidQuery("the bigram finder takes a single word, got '" + pattern + "'");
    check_range(index, from, to);
    const auto range = index.day_range(from, to);
    if (!range || limit == 0) return {};

    std::vector<std::uint8_t> mask(index.forms().size(), 0);
    if (mode == BigramMode::anywhere) {
        for (auto id : kp::substring_matches(index.forms(), pattern)) mask[id] = 1;
    } else if (auto id = index.form_id(pattern)) {
        mask[*id] = 1;
    }
    const std::span<const std::uint8_t> none;
    const auto keys = kp::select_pairs(index.bigrams(), mode == BigramMode::second ? none : mask,
                                       mode == BigramMode::first ? none : mask);

    std::vector<Count> per_day(range->second - range->first + 1, 0);
    std::vector<Count> per_key(keys.size(), 0);
    kp::accumulate(index.bigram_postings(), keys, range->first, range->second, per_day, per_key);

    std::vector<BigramHit> hits;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (per_key[i] == 0) continue;
        const auto [a, b] = index.bigrams()[keys[i]];
        hits.push_back({index.forms()[a], index.forms()[b], per_key[i]});
    }
    auto by_rank = [](const BigramHit& x, const BigramHit& y) {
        if (x.count != y.count) return x.count > y.count;
        return x.first + ' ' + x.second < y.first + ' ' + y.second;
    };
    if (hits.size() > limit) {
        std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(limit), hits.end(), by_rank);
        hits.resize(limit);
    } else {
        std::sort(hits.begin(), hits.end(), by_rank);
    }
    return hits;
}

}  // namespace newsgram::query
