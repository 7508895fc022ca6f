#pragma once

#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "newsgram/feed/archive.hpp"
#include "newsgram/feed/item.hpp"

namespace newsgram::feed {

/// Identity of a corpus item: (source_id, title, description, link), taken
/// in their archived form.
struct DedupKey {
    std::string source_id;
    std::string title;
    std::string description;
    std::string link;

    static DedupKey of(const RawFeedItem& item);
    static DedupKey of(const ArchiveRecord& record);

    /// Unambiguous single-string encoding (fields cannot contain tabs).
    std::string encoded() const;
    bool operator==(const DedupKey&) const = default;
};

/// Set of keys of every accepted item. Persistence is the raw archive
/// itself: a store is seeded from it on startup.
class KeyStore {
public:
    KeyStore() = default;
    static KeyStore from_archive(std::span<const ArchiveRecord> records);

    bool contains(const DedupKey& key) const { return keys_.count(key.encoded()) != 0; }
    /// Returns false if the key was already present.
    bool insert(const DedupKey& key) { return keys_.insert(key.encoded()).second; }
    std::size_t size() const { return keys_.size(); }

private:
    std::unordered_set<std::string> keys_;
};

/// Items whose key is not in `seen`, in input order; their keys are added.
/// Duplicates within `items` are collapsed to their first occurrence.
std::vector<RawFeedItem> dedupe(std::span<const RawFeedItem> items, KeyStore& seen);

}  // namespace newsgram::feed
