#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>

#include "newsgram/feed/archive.hpp"
#include "newsgram/ngram/daily_table.hpp"
#include "newsgram/text/tokenize.hpp"

namespace newsgram::ngram {

/// All daily tables of a corpus, ordered by date. A day exists once any item
/// was assigned to it, even if normalization left it without tokens.
class Corpus {
public:
    void add_item(const CorpusItem& item);
    void insert(DailyTable table);

    const std::map<Date, DailyTable>& tables() const { return tables_; }
    bool empty() const { return tables_.empty(); }
    std::optional<Date> first_date() const;
    std::optional<Date> last_date() const;
    Count token_total() const;
    std::size_t type_total() const;

    const std::set<std::string>& source_ids() const { return sources_; }
    void note_source(const std::string& id) { sources_.insert(id); }

    /// Copy restricted to days <= as_of.
    Corpus until(Date as_of) const;

private:
    std::map<Date, DailyTable> tables_;
    std::set<std::string> sources_;
};

/// strip_markup + tokenize on both text fields of an archived item.
CorpusItem make_corpus_item(const feed::ArchiveRecord& record, const text::ExclusionList& exclusions);

/// Replays the raw archive in order into daily tables.
Corpus build_corpus(std::span<const feed::ArchiveRecord> records, const text::ExclusionList& exclusions);

struct MonthRow {
    std::string month;  // "YYYY-MM"
    Count tokens = 0;
    double share = 0.0;
    std::size_t types = 0;  // distinct forms within the month
};

struct CorpusSummary {
    std::vector<MonthRow> rows;
};

/// One row per calendar month. Throws EmptyCorpus without any token.
CorpusSummary monthly_summary(const Corpus& corpus);

}  // namespace newsgram::ngram
