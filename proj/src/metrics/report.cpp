#include "newsgram/metrics/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "newsgram/errors.hpp"
#include "newsgram/kernels/kernels.hpp"
#include "newsgram/ngram/snapshot_io.hpp"

namespace newsgram::metrics {

namespace {

std::string html_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Segment {
    Date from, to;
    double value;
};

/// Minimal line chart: one polyline, optional straight trend line and
/// horizontal segments (weekly means).
std::string svg_chart(const std::string& title, const std::vector<std::pair<Date, double>>& points,
                      const std::optional<std::pair<double, double>>& line = std::nullopt,
                      const std::vector<Segment>& segments = {}) {
    constexpr double W = 720, H = 240, L = 60, R = 10, T = 24, B = 30;
    std::string svg = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
        "<text x=\"{}\" y=\"16\" font-size=\"13\" font-family=\"sans-serif\">{}</text>\n",
        W, H, W, H, L, html_escape(title));
    if (points.empty()) return svg + "</svg>\n";

    const Date d0 = points.front().first, d1 = points.back().first;
    double lo = points.front().second, hi = lo;
    for (const auto& [d, v] : points) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    for (const auto& s : segments) {
        lo = std::min(lo, s.value);
        hi = std::max(hi, s.value);
    }
    if (hi == lo) {
        hi += 0.5;
        lo -= 0.5;
    }
    const double span_days = std::max<long>(1, days_between(d0, d1));
    auto px = [&](Date d) { return L + (W - L - R) * static_cast<double>(days_between(d0, d)) / span_days; };
    auto py = [&](double v) { return T + (H - T - B) * (hi - v) / (hi - lo); };

    svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#888\"/>\n", L, T, H - B);
    svg += fmt::format("<line x1=\"{0}\" y1=\"{2}\" x2=\"{1}\" y2=\"{2}\" stroke=\"#888\"/>\n", L, W - R, H - B);
    svg += fmt::format("<text x=\"2\" y=\"{:.1f}\" font-size=\"10\">{:.4g}</text>\n", py(hi) + 4, hi);
    svg += fmt::format("<text x=\"2\" y=\"{:.1f}\" font-size=\"10\">{:.4g}</text>\n", py(lo), lo);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\">{}</text>\n", L, H - 8, format_date(d0));
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"10\" text-anchor=\"end\">{}</text>\n", W - R, H - 8,
                       format_date(d1));

    std::string path;
    for (const auto& [d, v] : points) path += fmt::format("{:.1f},{:.1f} ", px(d), py(v));
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" + path + "\"/>\n";
    for (const auto& [d, v] : points)
        svg += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"2\" fill=\"#1f77b4\"/>\n", px(d), py(v));
    for (const auto& s : segments)
        svg += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#d62728\"/>\n",
                           px(std::max(s.from, d0)), py(s.value), px(std::min(s.to, d1)), py(s.value));
    if (line) {
        const auto [intercept, slope] = *line;
        svg += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#999\" "
                           "stroke-dasharray=\"4 3\"/>\n",
                           px(d0), py(intercept), px(d1), py(intercept + slope * span_days));
    }
    return svg + "</svg>\n";
}

std::string fmt_p(const std::optional<double>& v, int decimals) {
    return v ? fmt::format("{:.{}f}", *v, decimals) : std::string("undefined");
}

}  // namespace

ReportBundle generate_report(const ngram::Corpus& corpus, Date as_of, const ReportOptions& options) {
    const auto scoped = corpus.until(as_of);
    if (scoped.empty() || scoped.token_total() == 0) throw EmptyCorpus("no tokens up to " + format_date(as_of));
    if (options.segment_length < 1) throw StreamTooShort("segment length must be positive");

    ReportBundle b;
    b.as_of = as_of;
    b.corpus_start = *scoped.first_date();
    b.segment_length = options.segment_length;
    b.token_total = scoped.token_total();
    b.type_total = scoped.type_total();
    b.source_count = scoped.source_ids().size();

    std::vector<const ngram::DailyTable*> tables;
    for (const auto& [d, t] : scoped.tables()) {
        tables.push_back(&t);
        if (t.empty()) {
            b.empty_days.push_back(d);
            continue;
        }
        b.daily_tokens.emplace_back(d, static_cast<double>(t.token_total()));
        if (t.token_ids().size() < options.segment_length) b.short_days.push_back(d);
    }
    b.records = kernels::parallel::diversity_records(tables, options.segment_length);
    if (b.daily_tokens.size() >= 3) {
        try {
            b.trend = fit_linear_trend(b.daily_tokens);
        } catch (const DegenerateFit&) {
        }
    }
    b.weekly_tokens = weekly_mean(b.daily_tokens, b.corpus_start);
    b.summary = ngram::monthly_summary(scoped);
    if (options.include_daily_lists)
        b.daily_lists = ngram::frequency_lists(scoped, ngram::Granularity::daily, ngram::NgramKind::unigram,
                                               b.corpus_start);
    b.weekly_lists = ngram::frequency_lists(scoped, ngram::Granularity::weekly, ngram::NgramKind::unigram,
                                            b.corpus_start);
    return b;
}

std::string metrics_csv(const std::vector<DiversityRecord>& records) {
    std::string out = "date,redundancy,msttr,top100_share\n";
    for (const auto& r : records) {
        out += fmt::format("{},{:.6f},{},{:.6f}\n", format_date(r.date), r.redundancy,
                           r.msttr ? fmt::format("{:.6f}", *r.msttr) : std::string(), r.top100_share);
    }
    return out;
}

std::string render_html(const ReportBundle& b) {
    std::string h;
    h += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    h += "<title>Vocabulary diversity report</title>\n";
    h += "<style>body{font-family:sans-serif;max-width:780px;margin:2em auto;color:#222}"
         "table{border-collapse:collapse}td,th{border:1px solid #ccc;padding:2px 8px;text-align:right}"
         "th{background:#f3f3f3}</style>\n</head>\n<body>\n";
    h += "<h1>Vocabulary diversity in the news feed corpus</h1>\n";
    h += fmt::format("<p>Data from {} up to and including <strong>{}</strong>. {} tokens, {} types, {} sources.</p>\n",
                     format_date(b.corpus_start), format_date(b.as_of), b.token_total, b.type_total, b.source_count);

    h += "<h2>Corpus size by month</h2>\n<table>\n<tr><th>Month</th><th>Tokens</th><th>Share</th><th>Types</th></tr>\n";
    for (const auto& r : b.summary.rows)
        h += fmt::format("<tr><td>{}</td><td>{}</td><td>{:.1f} %</td><td>{}</td></tr>\n", r.month, r.tokens,
                         100.0 * r.share, r.types);
    h += "</table>\n";

    h += "<h2>Daily corpus size</h2>\n";
    std::vector<Segment> weeks;
    for (const auto& w : b.weekly_tokens) weeks.push_back({w.start, w.start + std::chrono::days{6}, w.mean});
    std::optional<std::pair<double, double>> line;
    if (b.trend) line = std::pair{b.trend->intercept, b.trend->slope};
    h += svg_chart("Tokens per day (red: weekly mean, dashed: linear fit)", b.daily_tokens, line, weeks);
    if (b.trend) {
        h += fmt::format("<p>Linear model of daily tokens on date: &beta; = {:.2f}, SE = {:.2f}, t = {}, p = {} (n = {}).</p>\n",
                         b.trend->slope, b.trend->slope_se, fmt_p(b.trend->t_stat, 3), fmt_p(b.trend->p_value, 3),
                         b.trend->n);
    } else {
        h += "<p>Too few days for a linear model.</p>\n";
    }
    h += "<table>\n<tr><th>Week</th><th>From</th><th>Days</th><th>Mean tokens</th></tr>\n";
    for (const auto& w : b.weekly_tokens)
        h += fmt::format("<tr><td>{}</td><td>{}</td><td>{}</td><td>{:.1f}</td></tr>\n", w.week, format_date(w.start),
                         w.days, w.mean);
    h += "</table>\n";

    std::vector<std::pair<Date, double>> red, ms, top;
    for (const auto& r : b.records) {
        red.emplace_back(r.date, r.redundancy);
        if (r.msttr) ms.emplace_back(r.date, *r.msttr);
        top.emplace_back(r.date, r.top100_share);
    }
    h += "<h2>Diversity measures</h2>\n";
    h += svg_chart("Redundancy (1 - H/Hmax)", red);
    h += svg_chart(fmt::format("MSTTR (segment length {})", b.segment_length), ms);
    h += svg_chart("Token share of the 100 most frequent word forms", top);

    if (!b.empty_days.empty() || !b.short_days.empty()) {
        h += "<h2>Notes</h2>\n<ul>\n";
        for (Date d : b.empty_days) h += fmt::format("<li>{}: no tokens after normalization; omitted.</li>\n", format_date(d));
        for (Date d : b.short_days)
            h += fmt::format("<li>{}: fewer than {} tokens; MSTTR not defined.</li>\n", format_date(d), b.segment_length);
        h += "</ul>\n";
    }

    h += "<h2>Downloads</h2>\n<ul>\n<li><a href=\"metrics.csv\">metrics.csv</a> (daily measures)</li>\n";
    for (const auto& l : b.weekly_lists) {
        const auto name = ngram::frequency_list_filename(l);
        h += fmt::format("<li><a href=\"{0}\">{0}</a> (week {1})</li>\n", name, l.week);
    }
    h += "</ul>\n</body>\n</html>\n";
    return h;
}

void write_report(const ReportBundle& b, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    ngram::write_file_atomic(dir / "metrics.csv", metrics_csv(b.records));
    ngram::write_file_atomic(dir / "report.html", render_html(b));

    std::string summary = "month\ttokens\tshare\ttypes\n";
    for (const auto& r : b.summary.rows)
        summary += fmt::format("{}\t{}\t{:.6f}\t{}\n", r.month, r.tokens, r.share, r.types);
    ngram::write_file_atomic(dir / "monthly-summary.tsv", summary);

    for (const auto& l : b.daily_lists) {
        std::ostringstream out;
        ngram::write_frequency_list(out, l);
        ngram::write_file_atomic(dir / ("daily-" + ngram::frequency_list_filename(l)), out.str());
    }
    for (const auto& l : b.weekly_lists) {
        std::ostringstream out;
        ngram::write_frequency_list(out, l);
        ngram::write_file_atomic(dir / ngram::frequency_list_filename(l), out.str());
    }
}

}  // namespace newsgram::metrics
