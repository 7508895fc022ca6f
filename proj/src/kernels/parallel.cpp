#include <algorithm>
#include <optional>

#include <omp.h>

#include "newsgram/errors.hpp"
#include "newsgram/kernels/kernels.hpp"

namespace newsgram::kernels::parallel {

namespace {

// Below this many elements a team costs more than it saves.
constexpr std::int64_t kMinParallel = 1 << 14;

std::vector<std::uint32_t> compact(const std::vector<std::uint8_t>& hits) {
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < hits.size(); ++i)
        if (hits[i]) ids.push_back(static_cast<std::uint32_t>(i));
    return ids;
}

}  // namespace

std::vector<std::uint32_t> substring_matches(std::span<const std::string> vocab, std::string_view pattern) {
    const auto n = static_cast<std::int64_t>(vocab.size());
    std::vector<std::uint8_t> hits(vocab.size(), 0);
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
    for (std::int64_t i = 0; i < n; ++i)
        hits[i] = std::string_view(vocab[i]).find(pattern) != std::string_view::npos;
    return compact(hits);
}

std::vector<std::uint32_t> select_pairs(std::span<const IdPair> pairs, std::span<const std::uint8_t> first_mask,
                                        std::span<const std::uint8_t> second_mask) {
    const auto n = static_cast<std::int64_t>(pairs.size());
    const bool use_first = !first_mask.empty();
    const bool use_second = !second_mask.empty();
    std::vector<std::uint8_t> hits(pairs.size(), 0);
#pragma omp parallel for schedule(static) if (n >= kMinParallel)
    for (std::int64_t i = 0; i < n; ++i)
        hits[i] = (use_first && first_mask[pairs[i].first]) || (use_second && second_mask[pairs[i].second]);
    return compact(hits);
}

void accumulate(const Postings& postings, std::span<const std::uint32_t> keys, std::uint32_t day_lo,
                std::uint32_t day_hi, std::span<Count> per_day, std::span<Count> per_key) {
    const auto n = static_cast<std::int64_t>(keys.size());
    const std::size_t width = per_day.size();
    std::uint64_t work = 0;
    for (auto key : keys) work += postings.offsets[key + 1] - postings.offsets[key];
#pragma omp parallel if (work >= static_cast<std::uint64_t>(kMinParallel))
    {
        std::vector<Count> local(width, 0);
#pragma omp for schedule(dynamic, 64) nowait
        for (std::int64_t k = 0; k < n; ++k) {
            const auto key = keys[k];
            const auto begin = postings.days.begin() + static_cast<std::ptrdiff_t>(postings.offsets[key]);
            const auto end = postings.days.begin() + static_cast<std::ptrdiff_t>(postings.offsets[key + 1]);
            Count sum = 0;
            for (auto it = std::lower_bound(begin, end, day_lo); it != end && *it <= day_hi; ++it) {
                const auto c = postings.counts[static_cast<std::size_t>(it - postings.days.begin())];
                local[*it - day_lo] += c;
                sum += c;
            }
            per_key[k] += sum;
        }
#pragma omp critical(newsgram_accumulate)
        for (std::size_t d = 0; d < width; ++d) per_day[d] += local[d];
    }
}

std::vector<metrics::DiversityRecord> diversity_records(std::span<const ngram::DailyTable* const> tables,
                                                        std::size_t segment_length) {
    if (segment_length == 0) throw StreamTooShort("segment length must be positive");
    const auto n = static_cast<std::int64_t>(tables.size());
    std::vector<std::optional<metrics::DiversityRecord>> slots(tables.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i)
        if (!tables[i]->empty()) slots[i] = metrics::diversity_record(*tables[i], segment_length);
    std::vector<metrics::DiversityRecord> out;
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

}  // namespace newsgram::kernels::parallel
