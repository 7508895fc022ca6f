#include "newsgram/service/render.hpp"

#include <charconv>

#include "json.hpp"

namespace newsgram::service {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_number(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

std::string meta_json(const CorpusMeta& m) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generation"] = m.generation;
    j["first_date"] = format_date(m.first_date);
    j["last_date"] = format_date(m.last_date);
    j["last_update_instant"] = m.last_update_instant;
    j["token_total"] = m.token_total;
    j["type_total"] = m.type_total;
    j["source_count"] = m.source_count;
    j["msttr_segment"] = m.msttr_segment;
    return j.dump(2) + "\n";
}

std::string query_json(const query::QueryResult& r, std::uint64_t generation) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generation"] = generation;
    j["mode"] = std::string(query::to_string(r.spec.mode));
    j["from"] = format_date(r.spec.from);
    j["to"] = format_date(r.spec.to);
    j["window"] = r.spec.window;
    j["denominators"] = {{"unigram", "tokens of the day"}, {"bigram", "bigrams of the day"}};
    j["notices"] = r.notices;
    j["series"] = ordered_json::array();
    for (const auto& s : r.series) {
        ordered_json points = ordered_json::array();
        for (const auto& p : s.points) {
            ordered_json pj;
            pj["date"] = format_date(p.date);
            pj["abs"] = p.abs;
            pj["rel"] = p.rel;
            pj["smoothed"] = p.smoothed ? ordered_json(*p.smoothed) : ordered_json(nullptr);
            points.push_back(std::move(pj));
        }
        j["series"].push_back({{"pattern", s.pattern}, {"kind", std::string(query::to_string(s.kind))},
                               {"points", std::move(points)}});
    }
    if (r.spec.mode == query::MatchMode::within) {
        j["hits"] = ordered_json::array();
        for (const auto& h : r.hits)
            j["hits"].push_back({{"word_form", h.word_form}, {"pattern", h.pattern}, {"count", h.count}});
    }
    return j.dump() + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string query_csv(const query::QueryResult& r) {
    std::string out = "date,pattern,abs,rel,smoothed\n";
    if (r.series.empty()) return out;
    const std::size_t days = r.series.front().points.size();
    for (std::size_t d = 0; d < days; ++d) {
        for (const auto& s : r.series) {
            const auto& p = s.points[d];
            out += format_date(p.date);
            out += ',';
            out += csv_field(s.pattern);
            out += ',';
            out += std::to_string(p.abs);
            out += ',';
            out += format_number(p.rel);
            out += ',';
            if (p.smoothed) out += format_number(*p.smoothed);
            out += '\n';
        }
    }
    return out;
}

std::string bigrams_json(const BigramQuery& q, const std::vector<query::BigramHit>& hits, std::uint64_t generation) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["generation"] = generation;
    j["pattern"] = q.pattern;
    j["bmode"] = std::string(query::to_string(q.mode));
    j["from"] = format_date(q.from);
    j["to"] = format_date(q.to);
    j["limit"] = q.limit;
    j["results"] = ordered_json::array();
    for (const auto& h : hits)
        j["results"].push_back(
            {{"first", h.first}, {"second", h.second}, {"bigram", h.first + " " + h.second}, {"count", h.count}});
    return j.dump() + "\n";
}

std::string bigrams_csv(const std::vector<query::BigramHit>& hits) {
    std::string out = "form1,form2,count\n";
    for (const auto& h : hits) out += csv_field(h.first) + "," + csv_field(h.second) + "," + std::to_string(h.count) + "\n";
    return out;
}

std::string error_json(std::string_view kind, std::string_view message) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["error"] = std::string(kind);
    j["message"] = std::string(message);
    return j.dump() + "\n";
}

}  // namespace newsgram::service
