#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "newsgram/date.hpp"
#include "newsgram/text/tokenize.hpp"

namespace newsgram::ngram {

using Count = std::uint64_t;

/// A deduplicated, normalized feed item bucketed to its publication day.
struct CorpusItem {
    std::string source_id;
    Date date;
    text::TokenSequence title{{}, text::TextUnit::title};
    text::TokenSequence description{{}, text::TextUnit::description};
};

struct UnigramRow {
    std::string form;
    Count count = 0;
    bool operator==(const UnigramRow&) const = default;
};

struct BigramRow {
    std::string first;
    std::string second;
    Count count = 0;
    bool operator==(const BigramRow&) const = default;
};

/// Unigram and bigram frequencies of one calendar day.
///
/// Word forms are interned per day; the token stream is kept as form ids in
/// ingestion order (items in order, title before description). Bigrams are
/// only counted between adjacent tokens of the same sequence, never across
/// the title/description boundary or across items.
class DailyTable {
public:
    explicit DailyTable(Date date) : date_(date) {}

    /// Throws DateMismatch when item.date differs from the table's date.
    void add_item(const CorpusItem& item);

    /// Rebuilds a table from persisted rows. Throws SnapshotError when the
    /// rows violate the table invariants (duplicate forms, bigram forms not
    /// among the unigrams, token stream inconsistent with the counts).
    static DailyTable restore(Date date, std::span<const UnigramRow> unigrams,
                              std::span<const BigramRow> bigrams,
                              std::span<const std::string> token_stream,
                              bool verify_token_stream = true);

    Date date() const { return date_; }
    Count token_total() const { return token_total_; }
    Count bigram_total() const { return bigram_total_; }
    std::size_t type_count() const { return forms_.size(); }
    std::size_t bigram_type_count() const { return bigrams_.size(); }
    /// Non-empty token sequences added through add_item.
    std::size_t sequence_count() const { return sequence_count_; }
    bool empty() const { return token_total_ == 0; }

    Count count(const std::string& form) const;
    Count bigram_count(const std::string& first, const std::string& second) const;

    /// Day-local vocabulary in first-seen order, with parallel counts.
    const std::vector<std::string>& forms() const { return forms_; }
    const std::vector<Count>& counts() const { return counts_; }
    /// Token stream as indices into forms().
    const std::vector<std::uint32_t>& token_ids() const { return token_ids_; }
    std::vector<std::string> token_stream() const;

    template <typename F>
    void for_each_bigram(F&& f) const {
        for (const auto& [key, n] : bigrams_)
            f(std::string_view(forms_[key >> 32]), std::string_view(forms_[key & 0xFFFFFFFFu]), n);
    }

    /// Count descending, ties by form ascending (byte order).
    std::vector<UnigramRow> sorted_unigrams() const;
    /// Count descending, ties by (first, second) ascending.
    std::vector<BigramRow> sorted_bigrams() const;

private:
    std::uint32_t intern(const std::string& form);
    void add_sequence(std::span<const std::string> tokens);

    Date date_;
    std::vector<std::string> forms_;
    std::vector<Count> counts_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, Count> bigrams_;
    std::vector<std::uint32_t> token_ids_;
    Count token_total_ = 0;
    Count bigram_total_ = 0;
    std::size_t sequence_count_ = 0;
};

}  // namespace newsgram::ngram
