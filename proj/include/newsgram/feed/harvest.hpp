#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "newsgram/feed/dedup.hpp"
#include "newsgram/feed/source.hpp"
#include "newsgram/feed/timestamp.hpp"

namespace newsgram::feed {

using FeedFetcher = std::function<std::vector<RawFeedItem>(const FeedSource&)>;

struct SourceOutcome {
    std::string source_id;
    std::size_t fetched = 0;
    std::size_t accepted = 0;
    std::size_t duplicates = 0;
    std::size_t dropped_empty = 0;
    std::size_t timestamp_fallbacks = 0;
    std::optional<std::string> error;
};

struct HarvestReport {
    std::vector<SourceOutcome> sources;  // configuration order

    std::size_t accepted() const;
    std::size_t failed_sources() const;
    bool all_failed() const { return !sources.empty() && failed_sources() == sources.size(); }
};

/// Exclusive, non-blocking advisory lock on a file (flock). Held for the
/// lifetime of the object.
class FileLock {
public:
    /// Throws CycleBusy if another holder exists.
    explicit FileLock(const std::filesystem::path& path);
    ~FileLock();
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

private:
    int fd_ = -1;
};

struct HarvestOptions {
    std::filesystem::path archive_path;
    std::filesystem::path lock_path;  // cycle lock; empty disables locking
    ReferenceZone zone;
};

/// One harvest cycle: fetch every source (concurrently), then, in
/// configuration order, drop items without text, deduplicate against
/// `seen`, bucket to days and append the survivors to the archive.
/// A failing source is logged and skipped. Throws CycleBusy if another
/// cycle holds the lock.
HarvestReport harvest_cycle(const std::vector<FeedSource>& sources, const HarvestOptions& options,
                            KeyStore& seen, const FeedFetcher& fetch = {});

/// Seeds a key store from the archive and runs one cycle.
HarvestReport harvest_once(const std::vector<FeedSource>& sources, const HarvestOptions& options,
                           const FeedFetcher& fetch = {});

}  // namespace newsgram::feed
