#include "newsgram/ngram/daily_table.hpp"

#include <algorithm>

#include "newsgram/errors.hpp"

namespace newsgram::ngram {

namespace {

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

std::uint32_t DailyTable::intern(const std::string& form) {
    auto [it, inserted] = ids_.try_emplace(form, static_cast<std::uint32_t>(forms_.size()));
    if (inserted) {
        forms_.push_back(form);
        counts_.push_back(0);
    }
    return it->second;
}

void DailyTable::add_sequence(std::span<const std::string> tokens) {
    if (tokens.empty()) return;
    std::uint32_t prev = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const auto id = intern(tokens[i]);
        ++counts_[id];
        token_ids_.push_back(id);
        if (i > 0) ++bigrams_[pair_key(prev, id)];
        prev = id;
    }
    token_total_ += tokens.size();
    bigram_total_ += tokens.size() - 1;
    ++sequence_count_;
}

void DailyTable::add_item(const CorpusItem& item) {
    if (item.date != date_)
        throw DateMismatch("item dated " + format_date(item.date) + " added to table " + format_date(date_));
    add_sequence(item.title.tokens);
    add_sequence(item.description.tokens);
}

DailyTable DailyTable::restore(Date date, std::span<const UnigramRow> unigrams,
                               std::span<const BigramRow> bigrams,
                               std::span<const std::string> token_stream, bool verify_token_stream) {
    DailyTable t(date);
    for (const auto& row : unigrams) {
        if (row.count == 0) throw SnapshotError("zero count for unigram '" + row.form + "'");
        const auto before = t.forms_.size();
        const auto id = t.intern(row.form);
        if (t.forms_.size() == before) throw SnapshotError("duplicate unigram '" + row.form + "'");
        t.counts_[id] = row.count;
        t.token_total_ += row.count;
    }
    for (const auto& row : bigrams) {
        auto a = t.ids_.find(row.first);
        auto b = t.ids_.find(row.second);
        if (a == t.ids_.end() || b == t.ids_.end())
            throw SnapshotError("bigram '" + row.first + " " + row.second + "' uses an unknown form");
        if (row.count == 0) throw SnapshotError("zero count for bigram '" + row.first + " " + row.second + "'");
        if (!t.bigrams_.emplace(pair_key(a->second, b->second), row.count).second)
            throw SnapshotError("duplicate bigram '" + row.first + " " + row.second + "'");
        t.bigram_total_ += row.count;
    }
    if (!token_stream.empty() || verify_token_stream) {
        std::vector<Count> seen(t.forms_.size(), 0);
        t.token_ids_.reserve(token_stream.size());
        for (const auto& token : token_stream) {
            auto it = t.ids_.find(token);
            if (it == t.ids_.end()) throw SnapshotError("token '" + token + "' missing from unigrams");
            t.token_ids_.push_back(it->second);
            ++seen[it->second];
        }
        if (verify_token_stream && seen != t.counts_)
            throw SnapshotError("token stream of " + format_date(date) + " disagrees with unigram counts");
    }
    if (t.bigram_total_ > t.token_total_)
        throw SnapshotError("bigram total exceeds token total on " + format_date(date));
    return t;
}

Count DailyTable::count(const std::string& form) const {
    auto it = ids_.find(form);
    return it == ids_.end() ? 0 : counts_[it->second];
}

Count DailyTable::bigram_count(const std::string& first, const std::string& second) const {
    auto a = ids_.find(first);
    auto b = ids_.find(second);
    if (a == ids_.end() || b == ids_.end()) return 0;
    auto it = bigrams_.find(pair_key(a->second, b->second));
    return it == bigrams_.end() ? 0 : it->second;
}

std::vector<std::string> DailyTable::token_stream() const {
    std::vector<std::string> out;
    out.reserve(token_ids_.size());
    for (auto id : token_ids_) out.push_back(forms_[id]);
    return out;
}

std::vector<UnigramRow> DailyTable::sorted_unigrams() const {
    std::vector<UnigramRow> rows;
    rows.reserve(forms_.size());
    for (std::size_t i = 0; i < forms_.size(); ++i) rows.push_back({forms_[i], counts_[i]});
    std::sort(rows.begin(), rows.end(), [](const UnigramRow& a, const UnigramRow& b) {
        return a.count != b.count ? a.count > b.count : a.form < b.form;
    });
    return rows;
}

std::vector<BigramRow> DailyTable::sorted_bigrams() const {
    std::vector<BigramRow> rows;
    rows.reserve(bigrams_.size());
    for_each_bigram([&](std::string_view a, std::string_view b, Count n) {
        rows.push_back({std::string(a), std::string(b), n});
    });
    std::sort(rows.begin(), rows.end(), [](const BigramRow& a, const BigramRow& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return rows;
}

}  // namespace newsgram::ngram
