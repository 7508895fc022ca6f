#include "newsgram/feed/dedup.hpp"

namespace newsgram::feed {

DedupKey DedupKey::of(const RawFeedItem& item) {
    return DedupKey{archive_field(item.source_id), archive_field(item.title),
                    archive_field(item.description), archive_field(item.link)};
}

DedupKey DedupKey::of(const ArchiveRecord& record) {
    return DedupKey{record.source_id, record.title, record.description, record.link};
}

std::string DedupKey::encoded() const {
    std::string out;
    out.reserve(source_id.size() + title.size() + description.size() + link.size() + 3);
    out.append(source_id).append(1, '\t').append(title).append(1, '\t');
    out.append(description).append(1, '\t').append(link);
    return out;
}

KeyStore KeyStore::from_archive(std::span<const ArchiveRecord> records) {
    KeyStore store;
    for (const auto& r : records) store.insert(DedupKey::of(r));
    return store;
}

std::vector<RawFeedItem> dedupe(std::span<const RawFeedItem> items, KeyStore& seen) {
    std::vector<RawFeedItem> fresh;
    for (const auto& item : items)
        if (seen.insert(DedupKey::of(item))) fresh.push_back(item);
    return fresh;
}

}  // namespace newsgram::feed
