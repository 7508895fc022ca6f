#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "newsgram/ngram/corpus.hpp"

namespace newsgram::ngram {

enum class Granularity { daily, weekly };
enum class NgramKind { unigram, bigram };

/// Aggregated counts over one day or one week. Weeks are numbered from the
/// corpus start: day 1 of week 1 is corpus_start.
struct FrequencyList {
    Granularity granularity = Granularity::daily;
    NgramKind kind = NgramKind::unigram;
    Date start;   // the day, or the first day of the week
    int week = 0; // 1-based, weekly lists only
    std::vector<UnigramRow> unigrams;
    std::vector<BigramRow> bigrams;
};

int week_index(Date corpus_start, Date day);
Date week_start(Date corpus_start, int week);

/// Lists for every day (or week containing at least one day) inside
/// [from, to]. Rows are sorted count descending, ties by form ascending.
/// Throws EmptyRange when no corpus day falls in the range.
std::vector<FrequencyList> frequency_lists(const Corpus& corpus, Granularity granularity,
                                           NgramKind kind, Date corpus_start,
                                           std::optional<Date> from = std::nullopt,
                                           std::optional<Date> to = std::nullopt);

/// Header line plus one row per entry: `form<TAB>count` or
/// `form1<TAB>form2<TAB>count`.
void write_frequency_list(std::ostream& out, const FrequencyList& list);

/// "unigrams-D.tsv" for daily lists (the snapshot file name),
/// "weekly-unigrams-D.tsv" for weekly ones, D being the start date.
std::string frequency_list_filename(const FrequencyList& list);

}  // namespace newsgram::ngram
