#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "newsgram/service/snapshot_store.hpp"

namespace httplib {
class Server;
}

namespace newsgram::service {

using Params = std::multimap<std::string, std::string>;

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;
};

/// HTTP-independent request handlers over a SnapshotStore. Every handler
/// takes one snapshot reference up front and answers from it alone; the
/// generation it used is reported in the body (JSON) and in the
/// X-Snapshot-Generation header.
class Api {
public:
    explicit Api(const SnapshotStore& store, std::string cors_origin = "*");

    ApiResponse meta() const;
    ApiResponse query(const Params& params) const;
    ApiResponse export_csv(const Params& params) const;
    ApiResponse bigrams(const Params& params) const;
    /// daily-unigrams-D.tsv, weekly-unigrams-D.tsv, metrics.csv, report.html
    ApiResponse download(const std::string& name) const;

    /// Registers every route on an httplib server.
    void mount(httplib::Server& server) const;

private:
    ApiResponse finish(ApiResponse response, const Snapshot* snapshot) const;

    const SnapshotStore& store_;
    std::string cors_origin_;
};

}  // namespace newsgram::service
