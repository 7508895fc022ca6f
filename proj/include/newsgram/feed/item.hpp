#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

namespace newsgram::feed {

/// One entry as delivered by a feed; text is carried verbatim.
struct RawFeedItem {
    std::string source_id;
    std::string title;
    std::string description;
    std::string link;
    std::string published_raw;
    std::chrono::system_clock::time_point fetched_at;
};

/// Parses RSS 2.0, RSS 1.0 (RDF) and Atom documents. Items are returned in
/// document order. Documents declaring ISO-8859-1 or windows-1252 are
/// transcoded to UTF-8 first. Throws FeedParseError on malformed XML or an
/// unrecognized root element.
std::vector<RawFeedItem> parse_feed(std::string_view document, std::string_view source_id,
                                    std::chrono::system_clock::time_point fetched_at);

}  // namespace newsgram::feed
