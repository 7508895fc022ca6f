#include <algorithm>

#include "newsgram/kernels/kernels.hpp"

namespace newsgram::kernels::serial {

std::vector<std::uint32_t> substring_matches(std::span<const std::string> vocab, std::string_view pattern) {
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < vocab.size(); ++i)
        if (std::string_view(vocab[i]).find(pattern) != std::string_view::npos)
            ids.push_back(static_cast<std::uint32_t>(i));
    return ids;
}

std::vector<std::uint32_t> select_pairs(std::span<const IdPair> pairs, std::span<const std::uint8_t> first_mask,
                                        std::span<const std::uint8_t> second_mask) {
    std::vector<std::uint32_t> ids;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const bool a = !first_mask.empty() && first_mask[pairs[i].first];
        const bool b = !second_mask.empty() && second_mask[pairs[i].second];
        if (a || b) ids.push_back(static_cast<std::uint32_t>(i));
    }
    return ids;
}

void accumulate(const Postings& postings, std::span<const std::uint32_t> keys, std::uint32_t day_lo,
                std::uint32_t day_hi, std::span<Count> per_day, std::span<Count> per_key) {
    for (std::size_t k = 0; k < keys.size(); ++k) {
        const auto key = keys[k];
        for (auto i = postings.offsets[key]; i < postings.offsets[key + 1]; ++i) {
            const auto day = postings.days[i];
            if (day < day_lo || day > day_hi) continue;
            per_day[day - day_lo] += postings.counts[i];
            per_key[k] += postings.counts[i];
        }
    }
}

std::vector<metrics::DiversityRecord> diversity_records(std::span<const ngram::DailyTable* const> tables,
                                                        std::size_t segment_length) {
    std::vector<metrics::DiversityRecord> out;
    for (const auto* t : tables)
        if (!t->empty()) out.push_back(metrics::diversity_record(*t, segment_length));
    return out;
}

}  // namespace newsgram::kernels::serial
