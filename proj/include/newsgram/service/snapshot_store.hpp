#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "newsgram/query/index.hpp"
#include "newsgram/text/tokenize.hpp"

namespace newsgram::service {

/// Where everything lives under the data directory.
///
///   archive/raw-items.tsv        append-only raw archive
///   generations/gen-NNNNNN/      one published snapshot generation
///       days/                    unigrams-D.tsv, bigrams-D.tsv, tokens-D.txt
///       exports/                 metrics.csv, report.html, weekly lists
///       meta.json
///   CURRENT                      name of the published generation
struct DataLayout {
    std::filesystem::path root;

    std::filesystem::path archive() const { return root / "archive" / "raw-items.tsv"; }
    std::filesystem::path generations() const { return root / "generations"; }
    std::filesystem::path current_file() const { return root / "CURRENT"; }
    std::filesystem::path harvest_lock() const { return root / "harvest.lock"; }
    std::filesystem::path rebuild_lock() const { return root / "rebuild.lock"; }
    std::filesystem::path generation_dir(std::uint64_t generation) const;
};

struct CorpusMeta {
    std::uint64_t generation = 0;
    Date first_date;
    Date last_date;
    std::string last_update_instant;
    std::uint64_t token_total = 0;
    std::uint64_t type_total = 0;
    std::uint64_t source_count = 0;
    std::uint64_t msttr_segment = 0;
};

/// An immutable published generation, ready for querying.
struct Snapshot {
    std::uint64_t generation = 0;
    std::filesystem::path dir;
    CorpusMeta meta;
    query::CorpusIndex index;

    std::filesystem::path days_dir() const { return dir / "days"; }
    std::filesystem::path exports_dir() const { return dir / "exports"; }
};

struct BuildOptions {
    text::ExclusionList exclusions = text::ExclusionList::defaults();
    std::size_t segment_length = 100;
    std::size_t keep_generations = 3;
    /// Called at named stages of a rebuild; throwing aborts it. Test hook.
    std::function<void(std::string_view stage)> failpoint;
};

/// Rebuilds every daily table from the raw archive, writes a complete new
/// generation beside the published one and then switches CURRENT to it with
/// a rename. A failure at any point leaves the published generation intact.
/// Holds the rebuild lock for its duration. Returns the new generation.
/// Throws EmptyCorpus when the archive yields no tokens, CycleBusy when
/// another rebuild runs.
std::uint64_t rebuild_and_publish(const DataLayout& layout, const BuildOptions& options);

std::optional<std::uint64_t> current_generation(const DataLayout& layout);

/// Loads a generation from disk (without token sidecars).
std::shared_ptr<const Snapshot> load_snapshot(const DataLayout& layout, std::uint64_t generation);

/// Loads whatever CURRENT points at; nullptr when nothing is published.
std::shared_ptr<const Snapshot> load_current(const DataLayout& layout);

/// Holder of the snapshot served to readers. A reader keeps the pointer it
/// got for the whole request, so a swap never affects it.
class SnapshotStore {
public:
    std::shared_ptr<const Snapshot> get() const {
        std::lock_guard lock(mutex_);
        return current_;
    }
    void publish(std::shared_ptr<const Snapshot> snapshot) {
        std::lock_guard lock(mutex_);
        current_ = std::move(snapshot);
    }
    /// Loads CURRENT if its generation differs from the held one.
    /// Returns true when a new snapshot was installed.
    bool refresh(const DataLayout& layout);

private:
    mutable std::mutex mutex_;
    std::shared_ptr<const Snapshot> current_;
};

}  // namespace newsgram::service
