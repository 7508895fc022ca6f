#include "newsgram/date.hpp"

#include <charconv>

#include <fmt/format.h>

#include "newsgram/errors.hpp"

namespace newsgram {

namespace {

bool read_int(std::string_view text, int& out) {
    if (text.empty()) return false;
    for (char c : text)
        if (c < '0' || c > '9') return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!read_int(text.substr(0, 4), y) || !read_int(text.substr(5, 2), m) ||
        !read_int(text.substr(8, 2), d))
        return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) return std::nullopt;
    return Date{ymd};
}

Date parse_date_or_throw(std::string_view text) {
    auto d = parse_date(text);
    if (!d) throw InvalidQuery(fmt::format("invalid date '{}', expected YYYY-MM-DD", text));
    return *d;
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    return fmt::format("{:04d}-{:02d}-{:02d}", int(ymd.year()), unsigned(ymd.month()),
                       unsigned(ymd.day()));
}

std::string format_month(Date d) {
    std::chrono::year_month_day ymd{d};
    return fmt::format("{:04d}-{:02d}", int(ymd.year()), unsigned(ymd.month()));
}

std::string format_instant(std::chrono::system_clock::time_point t) {
    using namespace std::chrono;
    auto secs = floor<seconds>(t);
    auto day = floor<days>(secs);
    hh_mm_ss hms{secs - day};
    return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_date(day), hms.hours().count(),
                       hms.minutes().count(), hms.seconds().count());
}

}  // namespace newsgram
