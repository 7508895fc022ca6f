#include "newsgram/ngram/export.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "newsgram/errors.hpp"

namespace newsgram::ngram {

namespace {

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

void sort_rows(std::vector<UnigramRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const UnigramRow& a, const UnigramRow& b) {
        return a.count != b.count ? a.count > b.count : a.form < b.form;
    });
}

void sort_rows(std::vector<BigramRow>& rows) {
    std::sort(rows.begin(), rows.end(), [](const BigramRow& a, const BigramRow& b) {
        if (a.count != b.count) return a.count > b.count;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
}

}  // namespace

int week_index(Date corpus_start, Date day) {
    return static_cast<int>(floor_div(days_between(corpus_start, day), 7)) + 1;
}

Date week_start(Date corpus_start, int week) { return corpus_start + std::chrono::days{7L * (week - 1)}; }

std::vector<FrequencyList> frequency_lists(const Corpus& corpus, Granularity granularity, NgramKind kind,
                                           Date corpus_start, std::optional<Date> from,
                                           std::optional<Date> to) {
    std::vector<const DailyTable*> days;
    for (const auto& [d, t] : corpus.tables())
        if ((!from || d >= *from) && (!to || d <= *to)) days.push_back(&t);
    if (days.empty()) throw EmptyRange("no corpus day in the requested range");

    std::vector<FrequencyList> lists;
    if (granularity == Granularity::daily) {
        for (const auto* t : days) {
            FrequencyList list{granularity, kind, t->date(), 0, {}, {}};
            if (kind == NgramKind::unigram)
                list.unigrams = t->sorted_unigrams();
            else
                list.bigrams = t->sorted_bigrams();
            lists.push_back(std::move(list));
        }
        return lists;
    }

    std::map<int, std::vector<const DailyTable*>> weeks;
    for (const auto* t : days) weeks[week_index(corpus_start, t->date())].push_back(t);
    for (const auto& [week, tables] : weeks) {
        FrequencyList list{granularity, kind, week_start(corpus_start, week), week, {}, {}};
        if (kind == NgramKind::unigram) {
            std::map<std::string, Count, std::less<>> merged;
            for (const auto* t : tables)
                for (std::size_t i = 0; i < t->forms().size(); ++i) merged[t->forms()[i]] += t->counts()[i];
            for (auto& [form, n] : merged) list.unigrams.push_back({form, n});
            sort_rows(list.unigrams);
        } else {
            std::map<std::pair<std::string, std::string>, Count> merged;
            for (const auto* t : tables)
                t->for_each_bigram([&](std::string_view a, std::string_view b, Count n) {
                    merged[{std::string(a), std::string(b)}] += n;
                });
            for (auto& [pair, n] : merged) list.bigrams.push_back({pair.first, pair.second, n});
            sort_rows(list.bigrams);
        }
        lists.push_back(std::move(list));
    }
    return lists;
}

void write_frequency_list(std::ostream& out, const FrequencyList& list) {
    if (list.kind == NgramKind::unigram) {
        out << "form\tcount\n";
        for (const auto& r : list.unigrams) out << r.form << '\t' << r.count << '\n';
    } else {
        out << "form1\tform2\tcount\n";
        for (const auto& r : list.bigrams) out << r.first << '\t' << r.second << '\t' << r.count << '\n';
    }
}

std::string frequency_list_filename(const FrequencyList& list) {
    std::string name = list.granularity == Granularity::weekly ? "weekly-" : "";
    name += list.kind == NgramKind::unigram ? "unigrams-" : "bigrams-";
    return name + format_date(list.start) + ".tsv";
}

}  // namespace newsgram::ngram
