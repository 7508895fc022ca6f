#include "newsgram/metrics/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "newsgram/errors.hpp"

namespace newsgram::metrics {

double entropy(std::span<const Count> counts) {
    Count total = 0;
    for (Count c : counts) total += c;
    if (total == 0) throw EmptyDistribution("entropy of an empty distribution");
    const double n = static_cast<double>(total);
    double h = 0.0;
    for (Count c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

double redundancy(std::span<const Count> counts) {
    std::size_t types = 0;
    Count total = 0;
    for (Count c : counts) {
        types += c > 0;
        total += c;
    }
    if (total == 0) throw EmptyDay("redundancy of a day without tokens");
    if (types == 1) return 1.0;
    const double r = 1.0 - entropy(counts) / std::log2(static_cast<double>(types));
    return std::clamp(r, 0.0, 1.0);
}

double redundancy(const ngram::DailyTable& table) { return redundancy(table.counts()); }

namespace {

void check_stream(std::size_t length, std::size_t segment_length) {
    if (segment_length == 0) throw StreamTooShort("segment length must be positive");
    if (length < segment_length)
        throw StreamTooShort("stream of " + std::to_string(length) + " tokens is shorter than one segment of " +
                             std::to_string(segment_length));
}

// Equal-length segments: the mean of TTRs is total distinct over total tokens,
// computed with one rounding.
double ratio(std::size_t distinct, std::size_t tokens) {
    return static_cast<double>(distinct) / static_cast<double>(tokens);
}

}  // namespace

double msttr(std::span<const std::string> tokens, std::size_t segment_length) {
    check_stream(tokens.size(), segment_length);
    const std::size_t segments = tokens.size() / segment_length;
    std::unordered_set<std::string_view> distinct;
    std::size_t sum = 0;
    for (std::size_t s = 0; s < segments; ++s) {
        distinct.clear();
        for (std::size_t i = 0; i < segment_length; ++i) distinct.insert(tokens[s * segment_length + i]);
        sum += distinct.size();
    }
    return ratio(sum, segments * segment_length);
}

double msttr(std::span<const std::uint32_t> token_ids, std::size_t segment_length) {
    check_stream(token_ids.size(), segment_length);
    const std::size_t segments = token_ids.size() / segment_length;
    const std::uint32_t max_id = *std::max_element(token_ids.begin(), token_ids.end());
    // Last segment each id was seen in; avoids clearing a set per segment.
    std::vector<std::size_t> last_seen(std::size_t{max_id} + 1, static_cast<std::size_t>(-1));
    std::size_t sum = 0;
    for (std::size_t s = 0; s < segments; ++s) {
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < segment_length; ++i) {
            auto& mark = last_seen[token_ids[s * segment_length + i]];
            if (mark != s) {
                mark = s;
                ++distinct;
            }
        }
        sum += distinct;
    }
    return ratio(sum, segments * segment_length);
}

double top_k_share(std::span<const Count> counts, std::size_t k) {
    Count total = 0;
    for (Count c : counts) total += c;
    if (total == 0) throw EmptyDay("top-k share of a day without tokens");
    std::vector<Count> sorted(counts.begin(), counts.end());
    const std::size_t take = std::min(k, sorted.size());
    std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(take), sorted.end(),
                      std::greater<>());
    Count top = 0;
    for (std::size_t i = 0; i < take; ++i) top += sorted[i];
    return static_cast<double>(top) / static_cast<double>(total);
}

double top_k_share(const ngram::DailyTable& table, std::size_t k) { return top_k_share(table.counts(), k); }

DiversityRecord diversity_record(const ngram::DailyTable& table, std::size_t segment_length) {
    if (table.empty()) throw EmptyDay("day " + format_date(table.date()) + " has no tokens");
    DiversityRecord rec{table.date(), redundancy(table), std::nullopt, top_k_share(table, kTopK)};
    if (table.token_ids().size() >= segment_length) rec.msttr = msttr(table.token_ids(), segment_length);
    return rec;
}

}  // namespace newsgram::metrics
