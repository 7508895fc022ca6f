// Operator entry point: harvest, build, metrics, query, bigrams, serve.
// Exit codes: 0 success, 1 runtime error, 2 usage error.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <thread>

#include <pthread.h>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"
#include "newsgram/errors.hpp"
#include "newsgram/feed/harvest.hpp"
#include "newsgram/metrics/report.hpp"
#include "newsgram/ngram/snapshot_io.hpp"
#include "newsgram/query/engine.hpp"
#include "newsgram/service/api.hpp"
#include "newsgram/service/render.hpp"
#include "newsgram/service/scheduler.hpp"
#include "newsgram/service/snapshot_store.hpp"

namespace fs = std::filesystem;
using namespace newsgram;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOptions {
    fs::path data_dir = "data";
    fs::path sources = "config/sources.tsv";
    fs::path exclusions;  // empty: built-in list
    std::string timezone = "UTC";
    std::size_t msttr_segment = metrics::kDefaultSegmentLength;
    int verbosity = 0;
};

service::DataLayout layout_of(const GlobalOptions& g) { return service::DataLayout{g.data_dir}; }

text::ExclusionList exclusions_of(const GlobalOptions& g) {
    if (g.exclusions.empty()) return text::ExclusionList::defaults();
    if (!fs::exists(g.exclusions)) throw UsageError("exclusion list not found: " + g.exclusions.string());
    return text::ExclusionList::load(g.exclusions);
}

std::vector<feed::FeedSource> sources_of(const GlobalOptions& g) {
    if (!fs::exists(g.sources)) throw UsageError("sources file not found: " + g.sources.string());
    try {
        return feed::load_sources(g.sources);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
}

feed::HarvestOptions harvest_options_of(const GlobalOptions& g) {
    const auto layout = layout_of(g);
    feed::HarvestOptions options;
    options.archive_path = layout.archive();
    options.lock_path = layout.harvest_lock();
    try {
        options.zone = feed::ReferenceZone(g.timezone);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return options;
}

service::BuildOptions build_options_of(const GlobalOptions& g) {
    service::BuildOptions options;
    options.exclusions = exclusions_of(g);
    options.segment_length = g.msttr_segment;
    return options;
}

std::shared_ptr<const service::Snapshot> require_snapshot(const GlobalOptions& g) {
    auto snap = service::load_current(layout_of(g));
    if (!snap) throw SnapshotError("no snapshot published under " + g.data_dir.string() + "; run `build` first");
    return snap;
}

void print_harvest(const feed::HarvestReport& report) {
    std::printf("source\tfetched\taccepted\tduplicates\tdropped_empty\terror\n");
    for (const auto& s : report.sources)
        std::printf("%s\t%zu\t%zu\t%zu\t%zu\t%s\n", s.source_id.c_str(), s.fetched, s.accepted, s.duplicates,
                    s.dropped_empty, s.error ? s.error->c_str() : "");
    std::fflush(stdout);
}

// --- harvest ---------------------------------------------------------------

struct HarvestArgs {
    bool loop = false;
    int interval_minutes = 180;
};

int cmd_harvest(const GlobalOptions& g, const HarvestArgs& a) {
    const auto sources = sources_of(g);
    const auto options = harvest_options_of(g);
    if (!a.loop) {
        const auto report = feed::harvest_once(sources, options);
        print_harvest(report);
        return report.all_failed() ? kExitRuntime : kExitOk;
    }
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    service::SchedulerConfig config;
    config.harvest_interval = std::chrono::minutes{a.interval_minutes};
    service::Scheduler scheduler(
        config, [&] { print_harvest(feed::harvest_once(sources, options)); }, {});
    scheduler.start();
    int sig = 0;
    sigwait(&set, &sig);
    scheduler.stop();
    return kExitOk;
}

// --- build / metrics -------------------------------------------------------

int cmd_build(const GlobalOptions& g) {
    const auto generation = service::rebuild_and_publish(layout_of(g), build_options_of(g));
    std::printf("published generation %llu\n", static_cast<unsigned long long>(generation));
    return kExitOk;
}

struct MetricsArgs {
    std::string as_of;
    fs::path out;
};

int cmd_metrics(const GlobalOptions& g, const MetricsArgs& a) {
    auto snap = require_snapshot(g);
    const auto corpus = ngram::read_corpus(snap->days_dir(), true);
    const Date as_of = a.as_of.empty() ? snap->meta.last_date : parse_date_or_throw(a.as_of);
    metrics::ReportOptions options;
    options.segment_length = g.msttr_segment;
    const auto bundle = metrics::generate_report(corpus, as_of, options);
    const fs::path out = a.out.empty() ? g.data_dir / "reports" / format_date(as_of) : a.out;
    metrics::write_report(bundle, out);
    std::printf("wrote report for %s to %s\n", format_date(as_of).c_str(), out.string().c_str());
    return kExitOk;
}

// --- query / bigrams -------------------------------------------------------

struct QueryArgs {
    std::string patterns;
    std::string mode = "exact";
    std::string from;
    std::string to;
    int window = 1;
    bool json = false;
};

int cmd_query(const GlobalOptions& g, const QueryArgs& a) {
    auto snap = require_snapshot(g);
    service::Params params{{"patterns", a.patterns}, {"mode", a.mode}, {"from", a.from},
                           {"to", a.to},             {"window", std::to_string(a.window)}};
    // The API handlers are the single implementation of request parsing.
    service::SnapshotStore store;
    store.publish(snap);
    service::Api local(store);
    const auto r = a.json ? local.query(params) : local.export_csv(params);
    if (r.status == 400 || r.status == 413) throw UsageError(r.body);
    if (r.status != 200) throw std::runtime_error(r.body);
    std::fwrite(r.body.data(), 1, r.body.size(), stdout);
    return kExitOk;
}

struct BigramArgs {
    std::string pattern;
    std::string bmode = "anywhere";
    std::string from;
    std::string to;
    std::size_t limit = query::kDefaultBigramLimit;
    bool json = false;
};

int cmd_bigrams(const GlobalOptions& g, const BigramArgs& a) {
    service::SnapshotStore store;
    store.publish(require_snapshot(g));
    service::Api local(store);
    service::Params params{{"pattern", a.pattern}, {"bmode", a.bmode}, {"from", a.from},
                           {"to", a.to},           {"limit", std::to_string(a.limit)}};
    const auto r = local.bigrams(params);
    if (r.status == 400 || r.status == 413) throw UsageError(r.body);
    if (r.status != 200) throw std::runtime_error(r.body);
    if (a.json) {
        std::fwrite(r.body.data(), 1, r.body.size(), stdout);
        return kExitOk;
    }
    std::vector<query::BigramHit> hits;
    const auto body = nlohmann::json::parse(r.body);
    for (const auto& row : body["results"])
        hits.push_back({row["first"], row["second"], row["count"]});
    const auto csv = service::bigrams_csv(hits);
    std::fwrite(csv.data(), 1, csv.size(), stdout);
    return kExitOk;
}

// --- serve -----------------------------------------------------------------

struct ServeArgs {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string cors_origin = "*";
    int harvest_interval_minutes = 180;
    std::string rebuild_schedule = "mon@03:00";
    bool no_scheduler = false;
    bool no_harvest_on_start = false;
};

int cmd_serve(const GlobalOptions& g, const ServeArgs& a) {
    const auto layout = layout_of(g);
    const auto schedule = service::parse_weekly_schedule(a.rebuild_schedule);
    if (!schedule) throw UsageError("bad --rebuild-schedule '" + a.rebuild_schedule + "', expected e.g. mon@03:00");
    std::vector<feed::FeedSource> sources;
    feed::HarvestOptions harvest;
    if (!a.no_scheduler) {
        sources = sources_of(g);
        harvest = harvest_options_of(g);
    }
    const auto build = build_options_of(g);

    service::SnapshotStore store;
    store.refresh(layout);
    if (!store.get()) spdlog::warn("no snapshot published yet; API answers 503 until the first rebuild");

    // Signals go to the waiter thread only.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);

    httplib::Server server;
    service::Api api(store, a.cors_origin);
    api.mount(server);

    service::SchedulerConfig config;
    config.harvest_interval = std::chrono::minutes{a.harvest_interval_minutes};
    config.harvest_on_start = !a.no_harvest_on_start;
    config.next_rebuild = [s = *schedule](service::Clock::time_point t) { return s.next_after(t); };
    service::Scheduler scheduler(
        config,
        [&] {
            const auto report = feed::harvest_once(sources, harvest);
            spdlog::info("harvest accepted {} items ({} sources failed)", report.accepted(), report.failed_sources());
        },
        [&] {
            service::rebuild_and_publish(layout, build);
            store.refresh(layout);
        });
    if (!a.no_scheduler) scheduler.start();

    std::thread waiter([&] {
        int sig = 0;
        sigwait(&set, &sig);
        spdlog::info("signal {}, shutting down", sig);
        server.stop();
    });

    spdlog::info("listening on {}:{}", a.host, a.port);
    const bool ok = server.listen(a.host, a.port);
    if (!ok) {
        spdlog::error("cannot listen on {}:{}", a.host, a.port);
        pthread_kill(waiter.native_handle(), SIGTERM);
    }
    waiter.join();
    scheduler.stop();
    return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"newsgram: daily n-gram corpus from news RSS feeds"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI/TOML file with option defaults");

    GlobalOptions g;
    app.add_option("--data-dir", g.data_dir, "Corpus data directory")->capture_default_str();
    app.add_option("--sources", g.sources, "Feed source list (TSV)")->capture_default_str();
    app.add_option("--exclusions", g.exclusions, "Exclusion list (default: built-in)");
    app.add_option("--timezone", g.timezone, "Reference zone for day bucketing")->capture_default_str();
    app.add_option("--msttr-segment", g.msttr_segment, "MSTTR segment length")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    app.add_flag("-v,--verbose", g.verbosity, "More logging (repeatable)");

    HarvestArgs harvest;
    auto* harvest_cmd = app.add_subcommand("harvest", "Fetch all feeds once (or on an interval) into the archive");
    harvest_cmd->add_flag("--loop", harvest.loop, "Repeat every --interval minutes until interrupted");
    harvest_cmd->add_option("--interval", harvest.interval_minutes, "Minutes between cycles")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* build_cmd = app.add_subcommand("build", "Rebuild daily tables, exports and metrics; publish a generation");

    MetricsArgs metrics_args;
    auto* metrics_cmd = app.add_subcommand("metrics", "Write metrics CSV, HTML report and weekly lists");
    metrics_cmd->add_option("--as-of", metrics_args.as_of, "Report date (default: last corpus day)");
    metrics_cmd->add_option("--out", metrics_args.out, "Output directory (default: DATA/reports/AS_OF)");

    QueryArgs query_args;
    auto* query_cmd = app.add_subcommand("query", "Frequency series as CSV (same as /api/v1/export.csv)");
    query_cmd->add_option("--patterns", query_args.patterns, "Comma-separated patterns")->required();
    query_cmd->add_option("--mode", query_args.mode, "exact|within")
        ->check(CLI::IsMember({"exact", "within"}))
        ->capture_default_str();
    query_cmd->add_option("--from", query_args.from, "First day (YYYY-MM-DD)");
    query_cmd->add_option("--to", query_args.to, "Last day (YYYY-MM-DD)");
    query_cmd->add_option("--window", query_args.window, "Rolling-mean window in days")
        ->check(CLI::Range(query::kMinWindow, query::kMaxWindow))
        ->capture_default_str();
    query_cmd->add_flag("--json", query_args.json, "Emit the /api/v1/query body instead");

    BigramArgs bigram_args;
    auto* bigrams_cmd = app.add_subcommand("bigrams", "Ranked bigrams containing a pattern");
    bigrams_cmd->add_option("--pattern", bigram_args.pattern, "Single word")->required();
    bigrams_cmd->add_option("--bmode", bigram_args.bmode, "anywhere|first|second")
        ->check(CLI::IsMember({"anywhere", "first", "second"}))
        ->capture_default_str();
    bigrams_cmd->add_option("--from", bigram_args.from, "First day (YYYY-MM-DD)");
    bigrams_cmd->add_option("--to", bigram_args.to, "Last day (YYYY-MM-DD)");
    bigrams_cmd->add_option("--limit", bigram_args.limit, "Maximum rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bigrams_cmd->add_flag("--json", bigram_args.json, "Emit the /api/v1/bigrams body instead");

    ServeArgs serve_args;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP API plus scheduled harvest and weekly rebuild");
    serve_cmd->add_option("--host", serve_args.host, "Listen address")->capture_default_str();
    serve_cmd->add_option("--port", serve_args.port, "Listen port")->check(CLI::Range(1, 65535))->capture_default_str();
    serve_cmd->add_option("--cors-origin", serve_args.cors_origin, "Allowed UI origin")->capture_default_str();
    serve_cmd->add_option("--harvest-interval", serve_args.harvest_interval_minutes, "Minutes between harvests")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    serve_cmd->add_option("--rebuild-schedule", serve_args.rebuild_schedule, "Weekly rebuild slot, UTC")
        ->capture_default_str();
    serve_cmd->add_flag("--no-scheduler", serve_args.no_scheduler, "Serve the published snapshot only");
    serve_cmd->add_flag("--no-harvest-on-start", serve_args.no_harvest_on_start, "Wait one interval first");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto logger = spdlog::stderr_color_mt("newsgram");
    spdlog::set_default_logger(logger);
    spdlog::set_level(g.verbosity >= 2 ? spdlog::level::debug
                      : g.verbosity == 1 ? spdlog::level::info
                                         : spdlog::level::warn);

    try {
        if (*harvest_cmd) return cmd_harvest(g, harvest);
        if (*build_cmd) return cmd_build(g);
        if (*metrics_cmd) return cmd_metrics(g, metrics_args);
        if (*query_cmd) return cmd_query(g, query_args);
        if (*bigrams_cmd) return cmd_bigrams(g, bigram_args);
        if (*serve_cmd) return cmd_serve(g, serve_args);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const InvalidQuery& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitRuntime;
    }
    return kExitUsage;
}
