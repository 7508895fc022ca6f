#include "newsgram/service/api.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "httplib.h"
#include "newsgram/errors.hpp"
#include "newsgram/query/pattern.hpp"
#include "newsgram/service/render.hpp"

namespace newsgram::service {

namespace {

std::optional<std::string> param(const Params& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end()) return std::nullopt;
    return it->second;
}

std::optional<Date> date_param(const Params& params, const std::string& key) {
    auto v = param(params, key);
    if (!v || v->empty()) return std::nullopt;
    return parse_date_or_throw(*v);
}

long long integer_param(const std::string& key, const std::string& text) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidQuery(key + " must be an integer, got '" + text + "'");
    return value;
}

query::QueryRequest query_request(const Params& params) {
    query::QueryRequest req;
    req.patterns = param(params, "patterns").value_or("");
    if (auto m = param(params, "mode"); m && !m->empty()) {
        auto mode = query::parse_match_mode(*m);
        if (!mode) throw InvalidQuery("unknown mode '" + *m + "'");
        req.mode = *mode;
    }
    req.from = date_param(params, "from");
    req.to = date_param(params, "to");
    if (auto w = param(params, "window"); w && !w->empty()) {
        const long long window = integer_param("window", *w);
        if (window < query::kMinWindow || window > query::kMaxWindow)
            throw InvalidQuery("window must be in [1, 14]");
        req.window = static_cast<int>(window);
    }
    return req;
}

ApiResponse error(int status, std::string_view kind, std::string_view message) {
    ApiResponse r;
    r.status = status;
    r.body = error_json(kind, message);
    return r;
}

ApiResponse unavailable() { return error(503, "NoSnapshot", "no corpus snapshot has been published yet"); }

template <class F>
ApiResponse guarded(F&& f) {
    try {
        return f();
    } catch (const TooManyPatterns& e) {
        return error(413, "TooManyPatterns", e.what());
    } catch (const InvalidQuery& e) {
        return error(400, "InvalidQuery", e.what());
    } catch (const EmptyRange& e) {
        return error(400, "EmptyRange", e.what());
    }
}

bool safe_download_name(const std::string& name) {
    if (name.empty() || name.front() == '.') return false;
    for (char c : name)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.' || c == '_')) return false;
    return true;
}

std::optional<std::string> read_whole(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

Params to_params(const httplib::Request& req) {
    Params params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    return params;
}

}  // namespace

Api::Api(const SnapshotStore& store, std::string cors_origin) : store_(store), cors_origin_(std::move(cors_origin)) {}

ApiResponse Api::finish(ApiResponse response, const Snapshot* snapshot) const {
    if (snapshot) response.headers.emplace_back("X-Snapshot-Generation", std::to_string(snapshot->generation));
    if (!cors_origin_.empty()) {
        response.headers.emplace_back("Access-Control-Allow-Origin", cors_origin_);
        response.headers.emplace_back("Access-Control-Expose-Headers", "X-Snapshot-Generation");
    }
    return response;
}

ApiResponse Api::meta() const {
    auto snap = store_.get();
    if (!snap) return finish(unavailable(), nullptr);
    ApiResponse r;
    r.body = meta_json(snap->meta);
    return finish(std::move(r), snap.get());
}

ApiResponse Api::query(const Params& params) const {
    auto snap = store_.get();
    if (!snap) return finish(unavailable(), nullptr);
    return finish(guarded([&] {
                      auto prepared = query::prepare_query(query_request(params), snap->index);
                      auto result = query::run_query(prepared.spec, snap->index);
                      result.notices.insert(result.notices.begin(), prepared.notices.begin(), prepared.notices.end());
                      ApiResponse r;
                      r.body = query_json(result, snap->generation);
                      return r;
                  }),
                  snap.get());
}

ApiResponse Api::export_csv(const Params& params) const {
    auto snap = store_.get();
    if (!snap) return finish(unavailable(), nullptr);
    return finish(guarded([&] {
                      auto prepared = query::prepare_query(query_request(params), snap->index);
                      ApiResponse r;
                      r.content_type = "text/csv; charset=utf-8";
                      r.body = query_csv(query::run_query(prepared.spec, snap->index));
                      r.headers.emplace_back("Content-Disposition", "attachment; filename=\"query.csv\"");
                      return r;
                  }),
                  snap.get());
}

ApiResponse Api::bigrams(const Params& params) const {
    auto snap = store_.get();
    if (!snap) return finish(unavailable(), nullptr);
    return finish(guarded([&] {
                      BigramQuery q;
                      q.pattern = query::sanitize_pattern(param(params, "pattern").value_or(""));
                      if (auto m = param(params, "bmode"); m && !m->empty()) {
                          auto mode = query::parse_bigram_mode(*m);
                          if (!mode) throw InvalidQuery("unknown bmode '" + *m + "'");
                          q.mode = *mode;
                      }
                      if (snap->index.empty()) throw EmptyRange("corpus is empty");
                      q.from = date_param(params, "from").value_or(snap->index.days().front());
                      q.to = date_param(params, "to").value_or(snap->index.days().back());
                      if (auto l = param(params, "limit"); l && !l->empty()) {
                          const long long limit = integer_param("limit", *l);
                          if (limit < 1) throw InvalidQuery("limit must be positive");
                          q.limit = static_cast<std::size_t>(limit);
                      }
                      auto hits = query::find_bigrams(snap->index, q.pattern, q.mode, q.from, q.to, q.limit);
                      ApiResponse r;
                      r.body = bigrams_json(q, hits, snap->generation);
                      return r;
                  }),
                  snap.get());
}

ApiResponse Api::download(const std::string& name) const {
    auto snap = store_.get();
    if (!snap) return finish(unavailable(), nullptr);
    if (!safe_download_name(name)) return finish(error(404, "NotFound", "no such download"), snap.get());

    std::filesystem::path path;
    std::string content_type = "text/tab-separated-values; charset=utf-8";
    constexpr std::string_view daily_prefix = "daily-";
    if (name.rfind(daily_prefix, 0) == 0) {
        path = snap->days_dir() / name.substr(daily_prefix.size());
    } else if (name.rfind("weekly-", 0) == 0 || name == "monthly-summary.tsv") {
        path = snap->exports_dir() / name;
    } else if (name == "metrics.csv") {
        path = snap->exports_dir() / name;
        content_type = "text/csv; charset=utf-8";
    } else if (name == "report.html") {
        path = snap->exports_dir() / name;
        content_type = "text/html; charset=utf-8";
    }
    std::optional<std::string> body;
    if (!path.empty()) body = read_whole(path);
    if (!body) return finish(error(404, "NotFound", "no such download: " + name), snap.get());
    ApiResponse r;
    r.content_type = content_type;
    r.body = std::move(*body);
    return finish(std::move(r), snap.get());
}

void Api::mount(httplib::Server& server) const {
    auto send = [](httplib::Response& res, const ApiResponse& r) {
        res.status = r.status;
        for (const auto& [k, v] : r.headers) res.set_header(k, v);
        res.set_content(r.body, r.content_type);
    };
    server.Get("/api/v1/meta", [this, send](const httplib::Request&, httplib::Response& res) { send(res, meta()); });
    server.Get("/api/v1/query", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, query(to_params(req)));
    });
    server.Get("/api/v1/export.csv", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, export_csv(to_params(req)));
    });
    server.Get("/api/v1/bigrams", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, bigrams(to_params(req)));
    });
    server.Get(R"(/downloads/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, download(req.matches[1]));
    });
    server.Options(R"(/.*)", [this](const httplib::Request&, httplib::Response& res) {
        res.status = 204;
        res.set_header("Access-Control-Allow-Origin", cors_origin_);
        res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.set_exception_handler([this](const httplib::Request& req, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "unknown error";
        try {
            std::rethrow_exception(ep);
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        spdlog::error("{} {}: {}", req.method, req.path, what);
        res.status = 500;
        if (!cors_origin_.empty()) res.set_header("Access-Control-Allow-Origin", cors_origin_);
        res.set_content(error_json("InternalError", "internal error"), "application/json");
    });
}

}  // namespace newsgram::service
