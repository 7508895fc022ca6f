#include "newsgram/service/snapshot_store.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "json.hpp"
#include "newsgram/errors.hpp"
#include "newsgram/feed/harvest.hpp"
#include "newsgram/metrics/report.hpp"
#include "newsgram/ngram/snapshot_io.hpp"
#include "newsgram/service/render.hpp"

namespace newsgram::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string generation_name(std::uint64_t generation) { return fmt::format("gen-{:06d}", generation); }

std::optional<std::uint64_t> parse_generation_name(std::string_view name) {
    if (name.size() != 10 || name.substr(0, 4) != "gen-") return std::nullopt;
    std::uint64_t g = 0;
    for (char c : name.substr(4)) {
        if (c < '0' || c > '9') return std::nullopt;
        g = g * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return g;
}

std::vector<std::uint64_t> existing_generations(const DataLayout& layout) {
    std::vector<std::uint64_t> gens;
    if (!fs::is_directory(layout.generations())) return gens;
    for (const auto& entry : fs::directory_iterator(layout.generations()))
        if (auto g = parse_generation_name(entry.path().filename().string())) gens.push_back(*g);
    std::sort(gens.begin(), gens.end());
    return gens;
}

void hit(const BuildOptions& options, std::string_view stage) {
    if (options.failpoint) options.failpoint(stage);
}

void prune(const DataLayout& layout, std::uint64_t current, std::size_t keep) {
    auto gens = existing_generations(layout);
    if (gens.size() <= keep) return;
    for (std::size_t i = 0; i + keep < gens.size(); ++i) {
        if (gens[i] == current) continue;
        std::error_code ec;
        fs::remove_all(layout.generation_dir(gens[i]), ec);
        if (ec) spdlog::warn("could not remove old generation {}: {}", gens[i], ec.message());
    }
}

}  // namespace

fs::path DataLayout::generation_dir(std::uint64_t generation) const {
    return generations() / generation_name(generation);
}

std::optional<std::uint64_t> current_generation(const DataLayout& layout) {
    std::ifstream in(layout.current_file());
    if (!in) return std::nullopt;
    std::string name;
    std::getline(in, name);
    return parse_generation_name(name);
}

std::uint64_t rebuild_and_publish(const DataLayout& layout, const BuildOptions& options) {
    feed::FileLock lock(layout.rebuild_lock());

    const auto records = feed::read_archive(layout.archive());
    const auto corpus = ngram::build_corpus(records, options.exclusions);
    if (corpus.token_total() == 0) throw EmptyCorpus("archive " + layout.archive().string() + " yields no tokens");
    hit(options, "corpus_built");

    const auto gens = existing_generations(layout);
    const std::uint64_t generation =
        std::max<std::uint64_t>(gens.empty() ? 0 : gens.back(), current_generation(layout).value_or(0)) + 1;
    const fs::path final_dir = layout.generation_dir(generation);
    const fs::path tmp_dir = layout.generations() / ("." + generation_name(generation) + ".tmp");

    try {
        fs::remove_all(tmp_dir);
        ngram::write_corpus(tmp_dir / "days", corpus);
        hit(options, "days_written");

        metrics::ReportOptions report_options;
        report_options.segment_length = options.segment_length;
        report_options.include_daily_lists = false;
        const auto bundle = metrics::generate_report(corpus, *corpus.last_date(), report_options);
        metrics::write_report(bundle, tmp_dir / "exports");
        hit(options, "exports_written");

        CorpusMeta meta;
        meta.generation = generation;
        meta.first_date = *corpus.first_date();
        meta.last_date = *corpus.last_date();
        meta.last_update_instant = format_instant(std::chrono::system_clock::now());
        meta.token_total = corpus.token_total();
        meta.type_total = corpus.type_total();
        meta.source_count = corpus.source_ids().size();
        meta.msttr_segment = options.segment_length;
        ngram::write_file_atomic(tmp_dir / "meta.json", meta_json(meta));
        hit(options, "before_publish");

        fs::rename(tmp_dir, final_dir);
        ngram::write_file_atomic(layout.current_file(), generation_name(generation) + "\n");
    } catch (...) {
        std::error_code ec;
        fs::remove_all(tmp_dir, ec);
        throw;
    }
    spdlog::info("published generation {} ({} days, {} tokens)", generation, corpus.tables().size(),
                 corpus.token_total());
    prune(layout, generation, options.keep_generations);
    return generation;
}

std::shared_ptr<const Snapshot> load_snapshot(const DataLayout& layout, std::uint64_t generation) {
    auto snap = std::make_shared<Snapshot>();
    snap->generation = generation;
    snap->dir = layout.generation_dir(generation);

    std::ifstream in(snap->dir / "meta.json");
    if (!in) throw SnapshotError("generation " + std::to_string(generation) + " has no meta.json");
    json j;
    try {
        j = json::parse(in);
        snap->meta.generation = j.at("generation").get<std::uint64_t>();
        snap->meta.first_date = parse_date_or_throw(j.at("first_date").get<std::string>());
        snap->meta.last_date = parse_date_or_throw(j.at("last_date").get<std::string>());
        snap->meta.last_update_instant = j.at("last_update_instant").get<std::string>();
        snap->meta.token_total = j.at("token_total").get<std::uint64_t>();
        snap->meta.type_total = j.at("type_total").get<std::uint64_t>();
        snap->meta.source_count = j.at("source_count").get<std::uint64_t>();
        snap->meta.msttr_segment = j.value("msttr_segment", std::uint64_t{0});
    } catch (const std::exception& e) {
        throw SnapshotError("bad meta.json in generation " + std::to_string(generation) + ": " + e.what());
    }
    snap->index = query::CorpusIndex::build(ngram::read_corpus(snap->days_dir(), false));
    return snap;
}

std::shared_ptr<const Snapshot> load_current(const DataLayout& layout) {
    auto g = current_generation(layout);
    if (!g) return nullptr;
    return load_snapshot(layout, *g);
}

bool SnapshotStore::refresh(const DataLayout& layout) {
    auto g = current_generation(layout);
    if (!g) return false;
    if (auto held = get(); held && held->generation == *g) return false;
    publish(load_snapshot(layout, *g));
    return true;
}

}  // namespace newsgram::service
