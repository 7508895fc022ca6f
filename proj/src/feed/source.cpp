#include "newsgram/feed/source.hpp"

#include <fstream>
#include <set>

#include <fmt/format.h>

#include "newsgram/errors.hpp"

namespace newsgram::feed {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return fields;
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

bool is_valid_feed_url(std::string_view url) {
    if (url.empty()) return false;
    if (url.front() == '/') return true;
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) return false;
    auto scheme = url.substr(0, scheme_end);
    auto rest = url.substr(scheme_end + 3);
    if (scheme == "file") return !rest.empty() && rest.front() == '/';
    if (scheme != "http" && scheme != "https") return false;
    auto host_end = rest.find_first_of("/?#");
    auto host = rest.substr(0, host_end);
    return !host.empty() && host.find(' ') == std::string_view::npos;
}

std::vector<FeedSource> load_sources(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open sources file " + path.string());

    std::vector<FeedSource> sources;
    std::set<std::string> ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line) || line.front() == '#') continue;
        auto fields = split_tabs(line);
        if (fields.size() < 4 || fields.size() > 5)
            throw ConfigError(fmt::format("{}:{}: expected 4 or 5 tab-separated fields, got {}",
                                          path.string(), lineno, fields.size()));
        FeedSource src{fields[0], fields[1], fields[2], fields[3], fields.size() == 5 ? fields[4] : ""};
        if (src.id.empty()) throw ConfigError(fmt::format("{}:{}: empty source id", path.string(), lineno));
        if (!is_valid_feed_url(src.url))
            throw ConfigError(fmt::format("{}:{}: invalid url '{}'", path.string(), lineno, src.url));
        if (!ids.insert(src.id).second)
            throw ConfigError(fmt::format("{}:{}: duplicate source id '{}'", path.string(), lineno, src.id));
        sources.push_back(std::move(src));
    }
    return sources;
}

}  // namespace newsgram::feed
