#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "newsgram/feed/item.hpp"
#include "newsgram/feed/source.hpp"

namespace newsgram::feed {

inline constexpr std::chrono::seconds kDefaultFetchTimeout{30};

/// Retrieves the raw document behind a feed URL. http(s) goes through
/// libcurl (redirects followed, status >= 400 is an error); file:// URLs and
/// absolute paths are read from disk. Throws NetworkError.
std::string fetch_document(const std::string& url,
                           std::chrono::seconds timeout = kDefaultFetchTimeout);

/// One fetch of one source: fetch_document + parse_feed.
/// Throws NetworkError or FeedParseError.
std::vector<RawFeedItem> fetch_feed(const FeedSource& source,
                                    std::chrono::seconds timeout = kDefaultFetchTimeout);

}  // namespace newsgram::feed
