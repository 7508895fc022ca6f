#include "newsgram/ngram/corpus.hpp"

#include <unordered_set>

#include "newsgram/errors.hpp"
#include "newsgram/text/markup.hpp"

namespace newsgram::ngram {

void Corpus::add_item(const CorpusItem& item) {
    auto it = tables_.try_emplace(item.date, item.date).first;
    it->second.add_item(item);
    sources_.insert(item.source_id);
}

void Corpus::insert(DailyTable table) {
    const Date d = table.date();
    tables_.insert_or_assign(d, std::move(table));
}

std::optional<Date> Corpus::first_date() const {
    if (tables_.empty()) return std::nullopt;
    return tables_.begin()->first;
}

std::optional<Date> Corpus::last_date() const {
    if (tables_.empty()) return std::nullopt;
    return tables_.rbegin()->first;
}

Count Corpus::token_total() const {
    Count n = 0;
    for (const auto& [d, t] : tables_) n += t.token_total();
    return n;
}

std::size_t Corpus::type_total() const {
    std::unordered_set<std::string_view> types;
    for (const auto& [d, t] : tables_)
        for (const auto& f : t.forms()) types.insert(f);
    return types.size();
}

Corpus Corpus::until(Date as_of) const {
    Corpus out;
    out.sources_ = sources_;
    for (const auto& [d, t] : tables_)
        if (d <= as_of) out.tables_.emplace(d, t);
    return out;
}

CorpusItem make_corpus_item(const feed::ArchiveRecord& record, const text::ExclusionList& exclusions) {
    return CorpusItem{record.source_id, record.date,
                      text::tokenize(text::strip_markup(record.title), exclusions, text::TextUnit::title),
                      text::tokenize(text::strip_markup(record.description), exclusions,
                                     text::TextUnit::description)};
}

Corpus build_corpus(std::span<const feed::ArchiveRecord> records, const text::ExclusionList& exclusions) {
    Corpus corpus;
    for (const auto& r : records) corpus.add_item(make_corpus_item(r, exclusions));
    return corpus;
}

CorpusSummary monthly_summary(const Corpus& corpus) {
    const Count grand = corpus.token_total();
    if (grand == 0) throw EmptyCorpus("corpus has no tokens");

    CorpusSummary summary;
    std::unordered_set<std::string_view> month_types;
    auto flush = [&] {
        summary.rows.back().types = month_types.size();
        month_types.clear();
    };
    for (const auto& [d, t] : corpus.tables()) {
        const auto label = format_month(d);
        if (summary.rows.empty() || summary.rows.back().month != label) {
            if (!summary.rows.empty()) flush();
            summary.rows.push_back(MonthRow{label});
        }
        summary.rows.back().tokens += t.token_total();
        for (const auto& f : t.forms()) month_types.insert(f);
    }
    flush();
    for (auto& row : summary.rows) row.share = static_cast<double>(row.tokens) / static_cast<double>(grand);
    return summary;
}

}  // namespace newsgram::ngram
