#include "newsgram/feed/archive.hpp"

#include <fstream>

#include "newsgram/errors.hpp"

namespace newsgram::feed {

std::string archive_field(std::string_view text) {
    std::string out(text);
    for (char& c : out)
        if (c == '\t' || c == '\n' || c == '\r') c = ' ';
    return out;
}

std::string format_record(const ArchiveRecord& r) {
    std::string line = archive_field(r.source_id);
    line += '\t';
    line += format_date(r.date);
    for (const auto* field : {&r.title, &r.description, &r.link, &r.fetched_at}) {
        line += '\t';
        line += archive_field(*field);
    }
    return line;
}

ArchiveRecord parse_record(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) break;
        start = tab + 1;
    }
    if (fields.size() != 6) throw SnapshotError("archive record with " + std::to_string(fields.size()) + " fields");
    auto date = parse_date(fields[1]);
    if (!date) throw SnapshotError("archive record with invalid date '" + std::string(fields[1]) + "'");
    return ArchiveRecord{std::string(fields[0]), *date, std::string(fields[2]), std::string(fields[3]),
                         std::string(fields[4]), std::string(fields[5])};
}

void append_records(const std::filesystem::path& path, std::span<const ArchiveRecord> records) {
    if (records.empty()) return;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw SnapshotError("cannot open archive " + path.string() + " for appending");
    for (const auto& r : records) out << format_record(r) << '\n';
    out.flush();
    if (!out) throw SnapshotError("write to archive " + path.string() + " failed");
}

std::vector<ArchiveRecord> read_archive(const std::filesystem::path& path) {
    std::vector<ArchiveRecord> records;
    if (!std::filesystem::exists(path)) return records;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot read archive " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            records.push_back(parse_record(line));
        } catch (const SnapshotError& e) {
            throw SnapshotError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

}  // namespace newsgram::feed
