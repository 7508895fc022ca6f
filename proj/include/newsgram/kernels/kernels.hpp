#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newsgram/metrics/diversity.hpp"
#include "newsgram/ngram/daily_table.hpp"

// Data-parallel inner loops of the query engine and the metrics pass.
// `serial` is the reference; `parallel` is the OpenMP version used in
// production. Both must return identical results.

namespace newsgram::kernels {

using ngram::Count;

/// Compressed per-key posting lists: entries [offsets[k], offsets[k+1]) of
/// days/counts belong to key k, days ascending.
struct Postings {
    std::vector<std::uint64_t> offsets{0};
    std::vector<std::uint32_t> days;
    std::vector<Count> counts;

    std::size_t keys() const { return offsets.size() - 1; }
};

using IdPair = std::pair<std::uint32_t, std::uint32_t>;

namespace serial {

/// Ids (ascending) of vocabulary entries containing pattern.
std::vector<std::uint32_t> substring_matches(std::span<const std::string> vocab, std::string_view pattern);

/// Ids (ascending) of pairs with first_mask[first] or second_mask[second]
/// set. An empty mask never matches.
std::vector<std::uint32_t> select_pairs(std::span<const IdPair> pairs, std::span<const std::uint8_t> first_mask,
                                        std::span<const std::uint8_t> second_mask);

/// Adds the postings of every key in `keys` that fall in day indices
/// [day_lo, day_hi] into per_day[day - day_lo] and per_key[i].
void accumulate(const Postings& postings, std::span<const std::uint32_t> keys, std::uint32_t day_lo,
                std::uint32_t day_hi, std::span<Count> per_day, std::span<Count> per_key);

/// Diversity record of every non-empty table, in input order.
std::vector<metrics::DiversityRecord> diversity_records(std::span<const ngram::DailyTable* const> tables,
                                                        std::size_t segment_length);

}  // namespace serial

namespace parallel {

std::vector<std::uint32_t> substring_matches(std::span<const std::string> vocab, std::string_view pattern);
std::vector<std::uint32_t> select_pairs(std::span<const IdPair> pairs, std::span<const std::uint8_t> first_mask,
                                        std::span<const std::uint8_t> second_mask);
void accumulate(const Postings& postings, std::span<const std::uint32_t> keys, std::uint32_t day_lo,
                std::uint32_t day_hi, std::span<Count> per_day, std::span<Count> per_key);
std::vector<metrics::DiversityRecord> diversity_records(std::span<const ngram::DailyTable* const> tables,
                                                        std::size_t segment_length);

}  // namespace parallel

}  // namespace newsgram::kernels
