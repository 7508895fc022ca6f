#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "newsgram/kernels/kernels.hpp"
#include "newsgram/ngram/corpus.hpp"

namespace newsgram::query {

using ngram::Count;

/// Read-only, query-oriented view of a corpus: a global sorted vocabulary,
/// a sorted bigram vocabulary and per-entry posting lists over the corpus
/// days. Day indices refer to days().
class CorpusIndex {
public:
    CorpusIndex() = default;
    static CorpusIndex build(const ngram::Corpus& corpus);

    bool empty() const { return days_.empty(); }
    const std::vector<Date>& days() const { return days_; }
    const std::vector<Count>& token_totals() const { return token_totals_; }
    const std::vector<Count>& bigram_totals() const { return bigram_totals_; }

    const std::vector<std::string>& forms() const { return forms_; }
    std::optional<std::uint32_t> form_id(std::string_view form) const;

    const std::vector<kernels::IdPair>& bigrams() const { return bigrams_; }
    std::optional<std::uint32_t> bigram_id(std::uint32_t first, std::uint32_t second) const;

    const kernels::Postings& form_postings() const { return form_postings_; }
    const kernels::Postings& bigram_postings() const { return bigram_postings_; }

    /// Inclusive day-index range of corpus days within [from, to], if any.
    std::optional<std::pair<std::uint32_t, std::uint32_t>> day_range(Date from, Date to) const;

    Count token_total() const { return token_total_; }

private:
    std::vector<Date> days_;
    std::vector<Count> token_totals_;
    std::vector<Count> bigram_totals_;
    std::vector<std::string> forms_;
    std::vector<std::uint64_t> bigram_keys_;
    std::vector<kernels::IdPair> bigrams_;
    kernels::Postings form_postings_;
    kernels::Postings bigram_postings_;
    Count token_total_ = 0;
};

}  // namespace newsgram::query
