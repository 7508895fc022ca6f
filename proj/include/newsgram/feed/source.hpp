#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace newsgram::feed {

struct FeedSource {
    std::string id;
    std::string name;
    std::string url;
    std::string country;
    std::string notes;
};

/// Accepts scheme-qualified URLs (http, https, file) and absolute local paths.
bool is_valid_feed_url(std::string_view url);

/// Tab-separated `id name url country notes`, one source per line.
/// `#` lines and blank lines are skipped; notes may be omitted.
/// Throws ConfigError on a missing file, a malformed line, a duplicate id
/// or an invalid URL.
std::vector<FeedSource> load_sources(const std::filesystem::path& path);

}  // namespace newsgram::feed
