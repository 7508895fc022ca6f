#include "newsgram/feed/harvest.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <future>

#include <spdlog/spdlog.h>

#include "newsgram/errors.hpp"
#include "newsgram/feed/fetch.hpp"
#include "newsgram/text/markup.hpp"

namespace newsgram::feed {

std::size_t HarvestReport::accepted() const {
    std::size_t n = 0;
    for (const auto& s : sources) n += s.accepted;
    return n;
}

std::size_t HarvestReport::failed_sources() const {
    std::size_t n = 0;
    for (const auto& s : sources) n += s.error.has_value();
    return n;
}

FileLock::FileLock(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    fd_ = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0) throw ConfigError("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw CycleBusy("lock " + path.string() + " is held by another cycle");
    }
}

FileLock::~FileLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

HarvestReport harvest_cycle(const std::vector<FeedSource>& sources, const HarvestOptions& options,
                            KeyStore& seen, const FeedFetcher& fetch) {
    std::optional<FileLock> lock;
    if (!options.lock_path.empty()) lock.emplace(options.lock_path);

    const FeedFetcher fetcher = fetch ? fetch : FeedFetcher([](const FeedSource& s) { return fetch_feed(s); });

    std::vector<std::future<std::vector<RawFeedItem>>> pending;
    pending.reserve(sources.size());
    for (const auto& source : sources)
        pending.push_back(std::async(std::launch::async, fetcher, std::cref(source)));

    // Single sink: everything below runs on this thread in configuration order.
    HarvestReport report;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        SourceOutcome outcome;
        outcome.source_id = sources[i].id;
        std::vector<RawFeedItem> items;
        try {
            items = pending[i].get();
        } catch (const std::exception& e) {
            outcome.error = e.what();
            spdlog::error("source {}: {}", sources[i].id, e.what());
            report.sources.push_back(std::move(outcome));
            continue;
        }
        outcome.fetched = items.size();

        std::vector<RawFeedItem> with_text;
        for (auto& item : items) {
            if (text::strip_markup(item.title).empty() && text::strip_markup(item.description).empty())
                ++outcome.dropped_empty;
            else
                with_text.push_back(std::move(item));
        }
        const auto fresh = dedupe(with_text, seen);
        outcome.duplicates = with_text.size() - fresh.size();

        std::vector<ArchiveRecord> records;
        records.reserve(fresh.size());
        for (const auto& item : fresh) {
            bool fallback = false;
            const Date day = assign_day(item.published_raw, options.zone, item.fetched_at, &fallback);
            outcome.timestamp_fallbacks += fallback;
            records.push_back(ArchiveRecord{archive_field(item.source_id), day, archive_field(item.title),
                                            archive_field(item.description), archive_field(item.link),
                                            format_instant(item.fetched_at)});
        }
        append_records(options.archive_path, records);
        outcome.accepted = records.size();
        spdlog::info("source {}: {} fetched, {} accepted, {} duplicate, {} without text", outcome.source_id,
                     outcome.fetched, outcome.accepted, outcome.duplicates, outcome.dropped_empty);
        report.sources.push_back(std::move(outcome));
    }
    return report;
}

HarvestReport harvest_once(const std::vector<FeedSource>& sources, const HarvestOptions& options,
                           const FeedFetcher& fetch) {
    std::optional<FileLock> lock;
    if (!options.lock_path.empty()) lock.emplace(options.lock_path);
    auto seen = KeyStore::from_archive(read_archive(options.archive_path));
    HarvestOptions unlocked = options;
    unlocked.lock_path.clear();
    return harvest_cycle(sources, unlocked, seen, fetch);
}

}  // namespace newsgram::feed
