#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newsgram/query/engine.hpp"
#include "newsgram/service/snapshot_store.hpp"

namespace newsgram::service {

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal text that parses back to exactly the same double.
std::string format_number(double value);

std::string meta_json(const CorpusMeta& meta);
std::string query_json(const query::QueryResult& result, std::uint64_t generation);
/// `date,pattern,abs,rel,smoothed`, one row per (day, pattern), days
/// ascending and patterns in query order; blank smoothed when absent.
std::string query_csv(const query::QueryResult& result);

struct BigramQuery {
    std::string pattern;
    query::BigramMode mode = query::BigramMode::anywhere;
    Date from;
    Date to;
    std::size_t limit = query::kDefaultBigramLimit;
};

std::string bigrams_json(const BigramQuery& q, const std::vector<query::BigramHit>& hits, std::uint64_t generation);
/// `form1,form2,count`
std::string bigrams_csv(const std::vector<query::BigramHit>& hits);

std::string error_json(std::string_view kind, std::string_view message);

}  // namespace newsgram::service
