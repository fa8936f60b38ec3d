#pragma once

// UTC instants as epoch seconds. Accepted forms are "YYYY-MM-DDTHH:MM:SSZ"
// and the minute-precision "YYYY-MM-DDTHH:MMZ" (seconds taken as 0); the
// trailing Z is mandatory. Formatting always emits the full-seconds form.

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <string>

#include "locustradar/errors.hpp"

namespace locust {

using UtcSeconds = std::int64_t;

namespace detail {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

inline bool all_digits(const std::string& s, std::size_t pos, std::size_t n) {
    if (pos + n > s.size()) return false;
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[pos + i]))) return false;
    return true;
}

} // namespace detail

inline UtcSeconds parse_utc(const std::string& s) {
    // YYYY-MM-DDTHH:MM:SSZ (20 chars) or YYYY-MM-DDTHH:MMZ (17 chars)
    const bool with_seconds = s.size() == 20;
    if ((s.size() != 20 && s.size() != 17) || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
        (with_seconds && s[16] != ':'))
        throw ParseError("malformed timestamp '" + s + "' (expected YYYY-MM-DDTHH:MM:SSZ)");
    if (s.back() != 'Z') throw ParseError("non-UTC timestamp '" + s + "' (Z suffix required)");
    if (!detail::all_digits(s, 0, 4) || !detail::all_digits(s, 5, 2) || !detail::all_digits(s, 8, 2) ||
        !detail::all_digits(s, 11, 2) || !detail::all_digits(s, 14, 2) ||
        (with_seconds && !detail::all_digits(s, 17, 2)))
        throw ParseError("non-numeric field in timestamp '" + s + "'");
    const int y = std::stoi(s.substr(0, 4));
    const int mo = std::stoi(s.substr(5, 2));
    const int d = std::stoi(s.substr(8, 2));
    const int h = std::stoi(s.substr(11, 2));
    const int mi = std::stoi(s.substr(14, 2));
    const int se = with_seconds ? std::stoi(s.substr(17, 2)) : 0;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || se > 60)
        throw ParseError("out-of-range field in timestamp '" + s + "'");
    return detail::days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

inline std::string format_utc(UtcSeconds t) {
    std::int64_t days = t / 86400;
    std::int64_t sod = t % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    int y, m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d, static_cast<int>(sod / 3600),
                  static_cast<int>((sod / 60) % 60), static_cast<int>(sod % 60));
    return buf;
}

} // namespace locust
