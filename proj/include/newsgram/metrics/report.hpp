#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "newsgram/metrics/diversity.hpp"
#include "newsgram/metrics/trend.hpp"
#include "newsgram/ngram/corpus.hpp"
#include "newsgram/ngram/export.hpp"

namespace newsgram::metrics {

struct ReportOptions {
    std::size_t segment_length = kDefaultSegmentLength;
    bool include_daily_lists = true;
};

/// Weekly analysis bundle: per-day diversity measures, the corpus-size trend,
/// frequency lists and a static HTML page.
struct ReportBundle {
    Date as_of;
    Date corpus_start;
    std::size_t segment_length = kDefaultSegmentLength;
    std::vector<DiversityRecord> records;     // non-empty days only
    std::vector<Date> empty_days;             // days present without tokens
    std::vector<Date> short_days;             // shorter than one MSTTR segment
    std::vector<std::pair<Date, double>> daily_tokens;
    std::optional<TrendFit> trend;            // needs three non-empty days
    std::vector<WeekMean> weekly_tokens;
    ngram::CorpusSummary summary;
    std::vector<ngram::FrequencyList> daily_lists;
    std::vector<ngram::FrequencyList> weekly_lists;
    std::size_t token_total = 0;
    std::size_t type_total = 0;
    std::size_t source_count = 0;
};

/// Uses the days up to and including as_of. Throws EmptyCorpus.
ReportBundle generate_report(const ngram::Corpus& corpus, Date as_of, const ReportOptions& options = {});

/// `date,redundancy,msttr,top100_share` with six decimals; blank msttr for
/// days shorter than one segment.
std::string metrics_csv(const std::vector<DiversityRecord>& records);

std::string render_html(const ReportBundle& bundle);

/// metrics.csv, report.html, monthly-summary.tsv, daily-unigrams-D.tsv and
/// weekly-unigrams-D.tsv.
void write_report(const ReportBundle& bundle, const std::filesystem::path& dir);

}  // namespace newsgram::metrics
