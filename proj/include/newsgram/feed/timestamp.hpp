#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "newsgram/date.hpp"

namespace newsgram::feed {

/// Time zone used to bucket instants into calendar days.
class ReferenceZone {
public:
    /// Throws ConfigError for unknown zone ids. "UTC" needs no tz data.
    explicit ReferenceZone(const std::string& id = "UTC");
    ~ReferenceZone();
    ReferenceZone(const ReferenceZone& other);
    ReferenceZone& operator=(const ReferenceZone& other);
    ReferenceZone(ReferenceZone&&) noexcept;
    ReferenceZone& operator=(ReferenceZone&&) noexcept;

    const std::string& id() const { return id_; }

    /// Offset from UTC at the given instant, including DST.
    std::chrono::seconds offset_at(std::chrono::sys_seconds instant) const;
    /// Offset for a wall-clock time in this zone (earlier offset on ambiguity).
    std::chrono::seconds offset_for_local(std::chrono::sys_seconds local_as_utc) const;

    Date date_of(std::chrono::sys_seconds instant) const;

private:
    struct Impl;
    std::string id_;
    std::unique_ptr<Impl> impl_;
};

/// Parses RFC-822 style ("Wed, 15 Apr 2020 23:30:00 +0200") and ISO-8601
/// style ("2020-03-22T00:00:00Z") timestamps to an instant. Timestamps
/// without zone information are read as wall time in `zone`.
/// Throws TimestampParseError.
std::chrono::sys_seconds parse_timestamp(std::string_view raw, const ReferenceZone& zone);

/// Calendar day of the timestamp in the reference zone.
/// Throws TimestampParseError.
Date normalize_timestamp(std::string_view raw, const ReferenceZone& zone);

/// normalize_timestamp, falling back to the day of fetched_at (logged as a
/// warning) when the timestamp cannot be parsed.
Date assign_day(std::string_view raw, const ReferenceZone& zone,
                std::chrono::system_clock::time_point fetched_at, bool* used_fallback = nullptr);

}  // namespace newsgram::feed
