#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace newsgram {

/// Calendar day. All corpus bucketing happens at this granularity.
using Date = std::chrono::sys_days;

/// Parses "YYYY-MM-DD". Returns nullopt for anything else, including
/// out-of-range months/days.
std::optional<Date> parse_date(std::string_view text);

/// Same as parse_date but throws InvalidQuery with the offending text.
Date parse_date_or_throw(std::string_view text);

std::string format_date(Date d);

/// "YYYY-MM" label of the month containing d.
std::string format_month(Date d);

/// UTC instant as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_instant(std::chrono::system_clock::time_point t);

inline long days_between(Date from, Date to) { return (to - from).count(); }

}  // namespace newsgram
