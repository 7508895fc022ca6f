#include "newsgram/ngram/snapshot_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "newsgram/errors.hpp"
#include "newsgram/ngram/export.hpp"

namespace newsgram::ngram {

namespace fs = std::filesystem;

namespace {

std::string day_file(std::string_view prefix, Date d, std::string_view ext) {
    return std::string(prefix) + format_date(d) + std::string(ext);
}

Count parse_count(std::string_view text, const fs::path& path) {
    Count n = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw SnapshotError(path.string() + ": bad count '" + std::string(text) + "'");
    return n;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
        if (tab == std::string_view::npos) return out;
        start = tab + 1;
    }
}

std::vector<std::string> read_lines(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError("cannot read " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(std::move(line));
    return lines;
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw SnapshotError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw SnapshotError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path);
}

void write_day_files(const fs::path& dir, const DailyTable& table) {
    const Date d = table.date();
    {
        std::ostringstream out;
        write_frequency_list(out, FrequencyList{Granularity::daily, NgramKind::unigram, d, 0, table.sorted_unigrams(), {}});
        write_file_atomic(dir / day_file("unigrams-", d, ".tsv"), out.str());
    }
    {
        std::ostringstream out;
        write_frequency_list(out, FrequencyList{Granularity::daily, NgramKind::bigram, d, 0, {}, table.sorted_bigrams()});
        write_file_atomic(dir / day_file("bigrams-", d, ".tsv"), out.str());
    }
    std::string tokens;
    for (auto id : table.token_ids()) {
        tokens += table.forms()[id];
        tokens += '\n';
    }
    write_file_atomic(dir / day_file("tokens-", d, ".txt"), tokens);
}

void write_corpus(const fs::path& dir, const Corpus& corpus) {
    fs::create_directories(dir);
    for (const auto& [d, t] : corpus.tables()) write_day_files(dir, t);
    std::string sources;
    for (const auto& id : corpus.source_ids()) sources += id + '\n';
    write_file_atomic(dir / "sources.txt", sources);
}

std::vector<Date> list_days(const fs::path& dir) {
    std::vector<Date> days;
    if (!fs::is_directory(dir)) return days;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        constexpr std::string_view prefix = "unigrams-";
        if (name.size() != prefix.size() + 10 + 4 || name.rfind(prefix, 0) != 0 || !name.ends_with(".tsv"))
            continue;
        if (auto d = parse_date(std::string_view(name).substr(prefix.size(), 10))) days.push_back(*d);
    }
    std::sort(days.begin(), days.end());
    return days;
}

DailyTable read_day(const fs::path& dir, Date date, bool with_tokens) {
    const auto uni_path = dir / day_file("unigrams-", date, ".tsv");
    const auto bi_path = dir / day_file("bigrams-", date, ".tsv");

    std::vector<UnigramRow> unigrams;
    auto lines = read_lines(uni_path);
    if (lines.empty() || lines.front() != "form\tcount") throw SnapshotError(uni_path.string() + ": bad header");
    unigrams.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split_tabs(lines[i]);
        if (f.size() != 2) throw SnapshotError(uni_path.string() + ": malformed row " + std::to_string(i + 1));
        unigrams.push_back({std::string(f[0]), parse_count(f[1], uni_path)});
    }

    std::vector<BigramRow> bigrams;
    lines = read_lines(bi_path);
    if (lines.empty() || lines.front() != "form1\tform2\tcount")
        throw SnapshotError(bi_path.string() + ": bad header");
    bigrams.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        auto f = split_tabs(lines[i]);
        if (f.size() != 3) throw SnapshotError(bi_path.string() + ": malformed row " + std::to_string(i + 1));
        bigrams.push_back({std::string(f[0]), std::string(f[1]), parse_count(f[2], bi_path)});
    }

    std::vector<std::string> tokens;
    if (with_tokens) tokens = read_lines(dir / day_file("tokens-", date, ".txt"));
    return DailyTable::restore(date, unigrams, bigrams, tokens, with_tokens);
}

Corpus read_corpus(const fs::path& dir, bool with_tokens) {
    Corpus corpus;
    for (Date d : list_days(dir)) corpus.insert(read_day(dir, d, with_tokens));
    if (fs::exists(dir / "sources.txt"))
        for (const auto& id : read_lines(dir / "sources.txt"))
            if (!id.empty()) corpus.note_source(id);
    return corpus;
}

}  // namespace newsgram::ngram
