#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "core/result.hpp"

namespace ocam::core {

/// Civil calendar date (proleptic Gregorian), interpreted in UTC.
struct Date {
    int year = 1970;
    unsigned month = 1;  // 1..12
    unsigned day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (negative before). Howard Hinnant's civil algorithm.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);
Date civil_from_days(std::int64_t days);

inline std::int64_t day_number(const Date& d) {
    return days_from_civil(d.year, d.month, d.day);
}

bool is_monday(const Date& d);

/// Parses "YYYY-MM-DD".
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& d);

/// A point in time: seconds since the Unix epoch, always UTC.
struct Instant {
    std::int64_t seconds = 0;

    auto operator<=>(const Instant&) const = default;

    Date utc_date() const { return civil_from_days(utc_day()); }
    std::int64_t utc_day() const {
        // floor division so pre-1970 instants land on the right day
        std::int64_t d = seconds / 86400;
        if (seconds % 86400 < 0) --d;
        return d;
    }
};

/// Parses an ISO-8601 timestamp and normalises it to UTC.
/// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM[:SS[.frac]]" with 'T' or ' '
/// separator, and offsets "Z", "+HH:MM", "+HHMM" or "+HH". Fractional
/// seconds are truncated.
std::optional<Instant> parse_instant(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ"
std::string format_instant_utc(Instant t);

/// 1-based count of 7-day buckets since a configured epoch Monday.
struct WeekIndex {
    std::int64_t value = 1;

    auto operator<=>(const WeekIndex&) const = default;
};

/// Maps a timestamp to its week bucket. The epoch must be a Monday and
/// the timestamp must not precede it.
Result<WeekIndex> week_of(Instant timestamp, const Date& epoch);

/// First instant (midnight UTC) of the given week.
Instant week_start(WeekIndex week, const Date& epoch);

}  // namespace ocam::core

template <>
struct std::hash<ocam::core::WeekIndex> {
    std::size_t operator()(const ocam::core::WeekIndex& w) const noexcept {
        return std::hash<std::int64_t>()(w.value);
    }
};
