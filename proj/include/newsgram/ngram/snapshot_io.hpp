#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "newsgram/ngram/corpus.hpp"

namespace newsgram::ngram {

/// Writes unigrams-D.tsv, bigrams-D.tsv and tokens-D.txt for one day.
void write_day_files(const std::filesystem::path& dir, const DailyTable& table);

/// Writes day files for every table of the corpus, plus sources.txt with
/// the contributing source ids.
void write_corpus(const std::filesystem::path& dir, const Corpus& corpus);

/// Dates that have a unigram file in dir, ascending.
std::vector<Date> list_days(const std::filesystem::path& dir);

/// Reads one day back. Without the token sidecar the token stream stays
/// empty (enough for querying, not for MSTTR).
DailyTable read_day(const std::filesystem::path& dir, Date date, bool with_tokens = true);

Corpus read_corpus(const std::filesystem::path& dir, bool with_tokens = true);

/// Writes content to path through a sibling temp file and a rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace newsgram::ngram
