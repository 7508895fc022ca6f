#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "newsgram/date.hpp"

namespace newsgram::feed {

/// One accepted item in the append-only raw archive. Text fields are raw
/// (markup intact) with tabs and line breaks replaced by spaces.
struct ArchiveRecord {
    std::string source_id;
    Date date;
    std::string title;
    std::string description;
    std::string link;
    std::string fetched_at;  // UTC instant, ISO-8601

    bool operator==(const ArchiveRecord&) const = default;
};

/// Replaces every tab, CR and LF by a single space.
std::string archive_field(std::string_view text);

/// `source_id date title description link fetched_at`, tab-separated.
std::string format_record(const ArchiveRecord& record);
/// Throws SnapshotError on a malformed line.
ArchiveRecord parse_record(std::string_view line);

/// Appends and flushes. Creates the file (and parent directories) on demand.
void append_records(const std::filesystem::path& path, std::span<const ArchiveRecord> records);

/// Whole archive in file order; a missing file is an empty archive.
std::vector<ArchiveRecord> read_archive(const std::filesystem::path& path);

}  // namespace newsgram::feed
