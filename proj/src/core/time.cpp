#include "core/time.hpp"

#include <array>
#include <charconv>
#include <cstdio>

namespace ocam::core {

std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + doe - 719468;
}

Date civil_from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), m, d};
}

bool is_monday(const Date& d) {
    // 1970-01-05 (day 4) was a Monday
    const std::int64_t days = day_number(d);
    return ((days - 4) % 7 + 7) % 7 == 0;
}

namespace {

bool parse_uint(std::string_view s, std::size_t pos, std::size_t len, unsigned& out) {
    if (pos + len > s.size()) return false;
    unsigned v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        const char c = s[i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + static_cast<unsigned>(c - '0');
    }
    out = v;
    return true;
}

bool days_in_month_ok(int year, unsigned month, unsigned day) {
    static constexpr std::array<unsigned, 13> lengths = {0, 31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (month < 1 || month > 12 || day < 1) return false;
    unsigned max = lengths[month];
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    if (month == 2 && leap) max = 29;
    return day <= max;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
    unsigned y = 0, m = 0, d = 0;
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    if (!parse_uint(text, 0, 4, y) || !parse_uint(text, 5, 2, m) || !parse_uint(text, 8, 2, d))
        return std::nullopt;
    if (!days_in_month_ok(static_cast<int>(y), m, d)) return std::nullopt;
    return Date{static_cast<int>(y), m, d};
}

std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", d.year, d.month, d.day);
    return buf;
}

std::optional<Instant> parse_instant(std::string_view text) {
    auto date = parse_date(text.substr(0, text.size() < 10 ? text.size() : 10));
    if (!date) return std::nullopt;
    std::int64_t secs = day_number(*date) * 86400;
    if (text.size() == 10) return Instant{secs};

    const char sep = text[10];
    if (sep != 'T' && sep != ' ' && sep != 't') return std::nullopt;
    std::size_t i = 11;
    unsigned hh = 0, mm = 0, ss = 0;
    if (!parse_uint(text, i, 2, hh) || hh > 23) return std::nullopt;
    i += 2;
    if (i >= text.size() || text[i] != ':') return std::nullopt;
    ++i;
    if (!parse_uint(text, i, 2, mm) || mm > 59) return std::nullopt;
    i += 2;
    if (i < text.size() && text[i] == ':') {
        ++i;
        if (!parse_uint(text, i, 2, ss) || ss > 60) return std::nullopt;
        i += 2;
    }
    if (i < text.size() && text[i] == '.') {
        ++i;
        if (i >= text.size() || text[i] < '0' || text[i] > '9') return std::nullopt;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    }
    secs += hh * 3600 + mm * 60 + ss;

    if (i == text.size()) return Instant{secs};  // no zone: treat as UTC
    if (text[i] == ' ' && i + 1 < text.size()) ++i;  // "... 10:00:00 +0100"
    const char zc = text[i];
    if (zc == 'Z' || zc == 'z') {
        return i + 1 == text.size() ? std::optional<Instant>(Instant{secs}) : std::nullopt;
    }
    if (zc != '+' && zc != '-') return std::nullopt;
    const int sign = zc == '+' ? 1 : -1;
    ++i;
    unsigned oh = 0, om = 0;
    if (!parse_uint(text, i, 2, oh) || oh > 23) return std::nullopt;
    i += 2;
    if (i < text.size()) {
        if (text[i] == ':') ++i;
        if (!parse_uint(text, i, 2, om) || om > 59) return std::nullopt;
        i += 2;
    }
    if (i != text.size()) return std::nullopt;
    secs -= sign * static_cast<std::int64_t>(oh * 3600 + om * 60);
    return Instant{secs};
}

std::string format_instant_utc(Instant t) {
    const Date d = t.utc_date();
    std::int64_t rem = t.seconds - t.utc_day() * 86400;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", d.year, d.month,
                  d.day, static_cast<long long>(rem / 3600),
                  static_cast<long long>(rem % 3600 / 60), static_cast<long long>(rem % 60));
    return buf;
}

Result<WeekIndex> week_of(Instant timestamp, const Date& epoch) {
    if (!is_monday(epoch)) {
        return Result<WeekIndex>::failure(Errc::invalid_argument,
                                          "epoch " + format_date(epoch) + " is not a Monday");
    }
    const std::int64_t epoch_day = day_number(epoch);
    const std::int64_t ts_day = timestamp.utc_day();
    if (ts_day < epoch_day) {
        return Result<WeekIndex>::failure(
            Errc::out_of_range, "timestamp " + format_instant_utc(timestamp) +
                                    " precedes epoch " + format_date(epoch));
    }
    return WeekIndex{1 + (ts_day - epoch_day) / 7};
}

Instant week_start(WeekIndex week, const Date& epoch) {
    return Instant{(day_number(epoch) + (week.value - 1) * 7) * 86400};
}

}  // namespace ocam::core
