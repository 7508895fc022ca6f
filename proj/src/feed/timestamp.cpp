#include "newsgram/feed/timestamp.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>

#include <spdlog/spdlog.h>
#include <unicode/timezone.h>
#include <unicode/unistr.h>

#include "newsgram/errors.hpp"

namespace newsgram::feed {

using namespace std::chrono;

struct ReferenceZone::Impl {
    std::unique_ptr<icu::TimeZone> tz;
};

ReferenceZone::ReferenceZone(const std::string& id) : id_(id) {
    if (id == "UTC") return;
    std::unique_ptr<icu::TimeZone> tz(icu::TimeZone::createTimeZone(icu::UnicodeString::fromUTF8(id)));
    icu::UnicodeString resolved;
    if (tz) tz->getID(resolved);
    if (!tz || resolved == icu::UnicodeString(UCAL_UNKNOWN_ZONE_ID))
        throw ConfigError("unknown time zone '" + id + "'");
    impl_ = std::make_unique<Impl>(Impl{std::move(tz)});
}

ReferenceZone::~ReferenceZone() = default;
ReferenceZone::ReferenceZone(ReferenceZone&&) noexcept = default;
ReferenceZone& ReferenceZone::operator=(ReferenceZone&&) noexcept = default;

ReferenceZone::ReferenceZone(const ReferenceZone& other) : id_(other.id_) {
    if (other.impl_) impl_ = std::make_unique<Impl>(Impl{std::unique_ptr<icu::TimeZone>(other.impl_->tz->clone())});
}

ReferenceZone& ReferenceZone::operator=(const ReferenceZone& other) {
    if (this != &other) *this = ReferenceZone(other);
    return *this;
}

seconds ReferenceZone::offset_at(sys_seconds instant) const {
    if (!impl_) return seconds{0};
    UErrorCode status = U_ZERO_ERROR;
    int32_t raw = 0, dst = 0;
    impl_->tz->getOffset(static_cast<UDate>(instant.time_since_epoch().count()) * 1000.0, false, raw, dst, status);
    if (U_FAILURE(status)) throw ConfigError("time zone lookup failed for " + id_);
    return duration_cast<seconds>(milliseconds{raw + dst});
}

seconds ReferenceZone::offset_for_local(sys_seconds local_as_utc) const {
    if (!impl_) return seconds{0};
    UErrorCode status = U_ZERO_ERROR;
    int32_t raw = 0, dst = 0;
    impl_->tz->getOffset(static_cast<UDate>(local_as_utc.time_since_epoch().count()) * 1000.0, true, raw, dst, status);
    if (U_FAILURE(status)) throw ConfigError("time zone lookup failed for " + id_);
    return duration_cast<seconds>(milliseconds{raw + dst});
}

Date ReferenceZone::date_of(sys_seconds instant) const {
    return floor<days>(instant + offset_at(instant));
}

namespace {

/// Cursor over an ASCII timestamp.
class Scanner {
public:
    explicit Scanner(std::string_view s) : s_(s) {}

    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }
    void skip_space() {
        while (!done() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    std::optional<int> number(std::size_t min_digits, std::size_t max_digits) {
        std::size_t end = pos_;
        while (end < s_.size() && end - pos_ < max_digits && std::isdigit(static_cast<unsigned char>(s_[end]))) ++end;
        if (end - pos_ < min_digits) return std::nullopt;
        int v = 0;
        std::from_chars(s_.data() + pos_, s_.data() + end, v);
        pos_ = end;
        return v;
    }
    std::string_view word() {
        std::size_t end = pos_;
        while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end])) && s_[end] != ',' &&
               !std::isdigit(static_cast<unsigned char>(s_[end])) && s_[end] != '+' && s_[end] != '-')
            ++end;
        auto w = s_.substr(pos_, end - pos_);
        pos_ = end;
        return w;
    }
    std::string_view rest() const { return done() ? std::string_view{} : s_.substr(pos_); }
    std::size_t pos() const { return pos_; }
    void seek(std::size_t p) { pos_ = p; }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::string lower_ascii(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

std::optional<unsigned> month_number(std::string_view name) {
    // English names plus the German forms that differ in the first letters.
    static constexpr std::array<std::pair<std::string_view, unsigned>, 18> kMonths{{
        {"jan", 1}, {"feb", 2}, {"mar", 3}, {"apr", 4}, {"may", 5}, {"jun", 6},
        {"jul", 7}, {"aug", 8}, {"sep", 9}, {"oct", 10}, {"nov", 11}, {"dec", 12},
        {"m\xc3\xa4r", 3}, {"mrz", 3}, {"mai", 5}, {"okt", 10}, {"dez", 12}, {"sept", 9},
    }};
    const auto lowered = lower_ascii(name);
    if (lowered.size() < 3) return std::nullopt;
    for (const auto& [prefix, month] : kMonths)
        if (lowered.compare(0, prefix.size(), prefix) == 0) return month;
    return std::nullopt;
}

std::optional<seconds> named_zone(std::string_view name) {
    static constexpr std::array<std::pair<std::string_view, int>, 18> kZones{{
        {"z", 0},    {"ut", 0},   {"utc", 0},  {"gmt", 0},   {"est", -5}, {"edt", -4},
        {"cst", -6}, {"cdt", -5}, {"mst", -7}, {"mdt", -6},  {"pst", -8}, {"pdt", -7},
        {"cet", 1},  {"cest", 2}, {"mez", 1},  {"mesz", 2},  {"wet", 0},  {"west", 1},
    }};
    const auto lowered = lower_ascii(name);
    for (const auto& [zone, hours] : kZones)
        if (lowered == zone) return hours * 3600s;
    return std::nullopt;
}

/// "+0200", "+02:00", "+02", "-0530" ... ; empty optional on mismatch.
std::optional<seconds> numeric_offset(Scanner& sc) {
    const auto start = sc.pos();
    int sign = 0;
    if (sc.eat('+'))
        sign = 1;
    else if (sc.eat('-'))
        sign = -1;
    else
        return std::nullopt;
    auto hh = sc.number(2, 2);
    if (!hh) {
        sc.seek(start);
        return std::nullopt;
    }
    int mm = 0;
    sc.eat(':');
    if (auto m = sc.number(2, 2)) mm = *m;
    if (*hh > 18 || mm > 59) return std::nullopt;
    return sign * (hours{*hh} + minutes{mm});
}

struct WallClock {
    year_month_day date;
    int hour = 0, minute = 0, second = 0;
    std::optional<seconds> offset;  // nullopt: wall time in the reference zone
};

bool read_time(Scanner& sc, WallClock& wc) {
    auto hh = sc.number(1, 2);
    if (!hh || !sc.eat(':')) return false;
    auto mm = sc.number(2, 2);
    if (!mm) return false;
    wc.hour = *hh;
    wc.minute = *mm;
    if (sc.eat(':')) {
        auto ss = sc.number(2, 2);
        if (!ss) return false;
        wc.second = *ss;
        if (sc.eat('.') || sc.eat(','))
            if (!sc.number(1, 9)) return false;
    }
    return wc.hour < 24 && wc.minute < 60 && wc.second <= 60;
}

std::optional<WallClock> parse_iso(std::string_view raw) {
    Scanner sc(raw);
    WallClock wc;
    auto y = sc.number(4, 4);
    if (!y || !sc.eat('-')) return std::nullopt;
    auto m = sc.number(2, 2);
    if (!m || !sc.eat('-')) return std::nullopt;
    auto d = sc.number(2, 2);
    if (!d) return std::nullopt;
    wc.date = year{*y} / month{unsigned(*m)} / day{unsigned(*d)};
    if (sc.done()) return wc;
    if (!sc.eat('T') && !sc.eat('t') && !sc.eat(' ')) return std::nullopt;
    if (!read_time(sc, wc)) return std::nullopt;
    sc.skip_space();
    if (sc.done()) return wc;
    if (sc.eat('Z') || sc.eat('z')) {
        wc.offset = 0s;
    } else {
        wc.offset = numeric_offset(sc);
        if (!wc.offset) return std::nullopt;
    }
    sc.skip_space();
    return sc.done() ? std::optional(wc) : std::nullopt;
}

std::optional<WallClock> parse_rfc822(std::string_view raw) {
    Scanner sc(raw);
    WallClock wc;
    sc.skip_space();
    // Optional weekday in any language, terminated by a comma.
    if (!std::isdigit(static_cast<unsigned char>(sc.peek()))) {
        auto comma = raw.find(',');
        if (comma == std::string_view::npos) return std::nullopt;
        sc.seek(comma + 1);
        sc.skip_space();
    }
    auto d = sc.number(1, 2);
    if (!d) return std::nullopt;
    sc.eat('.');
    sc.skip_space();
    auto mon = month_number(sc.word());
    if (!mon) return std::nullopt;
    sc.eat('.');
    sc.skip_space();
    auto y = sc.number(2, 4);
    if (!y) return std::nullopt;
    int full_year = *y;
    if (full_year < 100) full_year += full_year < 50 ? 2000 : 1900;
    wc.date = year{full_year} / month{*mon} / day{unsigned(*d)};
    sc.skip_space();
    if (sc.done()) return wc;
    if (!read_time(sc, wc)) return std::nullopt;
    sc.skip_space();
    if (sc.done()) return wc;
    if (auto off = numeric_offset(sc)) {
        wc.offset = off;
    } else {
        auto name = sc.word();
        wc.offset = named_zone(name);
        if (!wc.offset) return std::nullopt;
    }
    sc.skip_space();
    return sc.done() ? std::optional(wc) : std::nullopt;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

sys_seconds parse_timestamp(std::string_view raw, const ReferenceZone& zone) {
    const auto text = trim(raw);
    auto wc = parse_iso(text);
    if (!wc) wc = parse_rfc822(text);
    if (!wc || !wc->date.ok())
        throw TimestampParseError("unrecognized timestamp '" + std::string(raw) + "'");
    const sys_seconds wall = sys_days{wc->date} + hours{wc->hour} + minutes{wc->minute} +
                             seconds{std::min(wc->second, 59)};
    if (wc->offset) return wall - *wc->offset;
    return wall - zone.offset_for_local(wall);
}

Date normalize_timestamp(std::string_view raw, const ReferenceZone& zone) {
    return zone.date_of(parse_timestamp(raw, zone));
}

Date assign_day(std::string_view raw, const ReferenceZone& zone, system_clock::time_point fetched_at,
                bool* used_fallback) {
    if (used_fallback) *used_fallback = false;
    try {
        return normalize_timestamp(raw, zone);
    } catch (const TimestampParseError& e) {
        spdlog::warn("{}; using fetch date instead", e.what());
        if (used_fallback) *used_fallback = true;
        return zone.date_of(floor<seconds>(fetched_at));
    }
}

}  // namespace newsgram::feed
