#include "newsgram/query/index.hpp"

#include <algorithm>

namespace newsgram::query {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

/// Turns (key, day, count) triples, grouped by ascending day, into CSR
/// postings.
struct PostingBuilder {
    std::vector<std::uint64_t> sizes;

    void finish(kernels::Postings& out, const std::vector<std::uint32_t>& keys,
                const std::vector<std::uint32_t>& days, const std::vector<Count>& counts) {
        out.offsets.assign(sizes.size() + 1, 0);
        for (std::size_t k = 0; k < sizes.size(); ++k) out.offsets[k + 1] = out.offsets[k] + sizes[k];
        out.days.resize(keys.size());
        out.counts.resize(keys.size());
        std::vector<std::uint64_t> cursor(out.offsets.begin(), out.offsets.end() - 1);
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const auto slot = cursor[keys[i]]++;
            out.days[slot] = days[i];
            out.counts[slot] = counts[i];
        }
    }
};

}  // namespace

CorpusIndex CorpusIndex::build(const ngram::Corpus& corpus) {
    CorpusIndex ix;
    for (const auto& [d, t] : corpus.tables()) {
        ix.days_.push_back(d);
        ix.token_totals_.push_back(t.token_total());
        ix.bigram_totals_.push_back(t.bigram_total());
        ix.token_total_ += t.token_total();
        ix.forms_.insert(ix.forms_.end(), t.forms().begin(), t.forms().end());
    }
    std::sort(ix.forms_.begin(), ix.forms_.end());
    ix.forms_.erase(std::unique(ix.forms_.begin(), ix.forms_.end()), ix.forms_.end());

    std::vector<std::uint32_t> f_keys, f_days, b_days;
    std::vector<Count> f_counts, b_counts;
    std::vector<std::uint64_t> b_pairs;
    std::uint32_t day = 0;
    for (const auto& [d, t] : corpus.tables()) {
        std::vector<std::uint32_t> local_to_global(t.forms().size());
        for (std::size_t i = 0; i < t.forms().size(); ++i) {
            local_to_global[i] = *ix.form_id(t.forms()[i]);
            f_keys.push_back(local_to_global[i]);
            f_days.push_back(day);
            f_counts.push_back(t.counts()[i]);
        }
        t.for_each_bigram([&](std::string_view a, std::string_view b, Count n) {
            b_pairs.push_back(pair_key(*ix.form_id(a), *ix.form_id(b)));
            b_days.push_back(day);
            b_counts.push_back(n);
        });
        ++day;
    }

    PostingBuilder forms{std::vector<std::uint64_t>(ix.forms_.size(), 0)};
    for (auto k : f_keys) ++forms.sizes[k];
    forms.finish(ix.form_postings_, f_keys, f_days, f_counts);

    ix.bigram_keys_ = b_pairs;
    std::sort(ix.bigram_keys_.begin(), ix.bigram_keys_.end());
    ix.bigram_keys_.erase(std::unique(ix.bigram_keys_.begin(), ix.bigram_keys_.end()), ix.bigram_keys_.end());
    ix.bigrams_.reserve(ix.bigram_keys_.size());
    for (auto k : ix.bigram_keys_)
        ix.bigrams_.emplace_back(static_cast<std::uint32_t>(k >> 32), static_cast<std::uint32_t>(k & 0xFFFFFFFFu));
    std::vector<std::uint32_t> b_keys(b_pairs.size());
    PostingBuilder bigrams{std::vector<std::uint64_t>(ix.bigram_keys_.size(), 0)};
    for (std::size_t i = 0; i < b_pairs.size(); ++i) {
        b_keys[i] = static_cast<std::uint32_t>(
            std::lower_bound(ix.bigram_keys_.begin(), ix.bigram_keys_.end(), b_pairs[i]) - ix.bigram_keys_.begin());
        ++bigrams.sizes[b_keys[i]];
    }
    bigrams.finish(ix.bigram_postings_, b_keys, b_days, b_counts);
    return ix;
}

std::optional<std::uint32_t> CorpusIndex::form_id(std::string_view form) const {
    auto it = std::lower_bound(forms_.begin(), forms_.end(), form,
                               [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
    if (it == forms_.end() || *it != form) return std::nullopt;
    return static_cast<std::uint32_t>(it - forms_.begin());
}

std::optional<std::uint32_t> CorpusIndex::bigram_id(std::uint32_t first, std::uint32_t second) const {
    const auto key = pair_key(first, second);
    auto it = std::lower_bound(bigram_keys_.begin(), bigram_keys_.end(), key);
    if (it == bigram_keys_.end() || *it != key) return std::nullopt;
    return static_cast<std::uint32_t>(it - bigram_keys_.begin());
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> CorpusIndex::day_range(Date from, Date to) const {
    auto lo = std::lower_bound(days_.begin(), days_.end(), from);
    auto hi = std::upper_bound(days_.begin(), days_.end(), to);
    if (lo >= hi) return std::nullopt;
    return std::pair{static_cast<std::uint32_t>(lo - days_.begin()), static_cast<std::uint32_t>(hi - days_.begin() - 1)};
}

}  // namespace newsgram::query
