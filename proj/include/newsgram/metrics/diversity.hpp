#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "newsgram/ngram/daily_table.hpp"

namespace newsgram::metrics {

using ngram::Count;

inline constexpr std::size_t kDefaultSegmentLength = 100;
inline constexpr std::size_t kTopK = 100;

/// Shannon entropy in bits of a frequency distribution. Zero counts are
/// ignored. Throws EmptyDistribution when all counts are zero.
double entropy(std::span<const Count> counts);

/// 1 - H / log2(V). A single-type day is maximally redundant (1).
/// Throws EmptyDay for a day without tokens.
double redundancy(std::span<const Count> counts);
double redundancy(const ngram::DailyTable& table);

/// Mean type-token ratio over consecutive non-overlapping segments of
/// exactly segment_length tokens; the trailing remainder is ignored.
/// Throws StreamTooShort when fewer than segment_length tokens exist.
double msttr(std::span<const std::string> tokens, std::size_t segment_length = kDefaultSegmentLength);
double msttr(std::span<const std::uint32_t> token_ids, std::size_t segment_length = kDefaultSegmentLength);

/// Share of the day's tokens contributed by its k most frequent forms.
/// Throws EmptyDay for a day without tokens.
double top_k_share(std::span<const Count> counts, std::size_t k = kTopK);
double top_k_share(const ngram::DailyTable& table, std::size_t k = kTopK);

struct DiversityRecord {
    Date date;
    double redundancy = 0.0;
    std::optional<double> msttr;  // absent when the day is shorter than one segment
    double top100_share = 0.0;
};

/// All three measures for one non-empty day. Throws EmptyDay.
DiversityRecord diversity_record(const ngram::DailyTable& table, std::size_t segment_length);

}  // namespace newsgram::metrics
