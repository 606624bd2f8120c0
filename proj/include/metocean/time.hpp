#ifndef METOCEAN_TIME_HPP
#define METOCEAN_TIME_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace metocean {

/// Hours since 1970-01-01T00:00:00Z. All timestamps in this library are UTC;
/// there is no local-time or DST handling anywhere.
using HourIndex = std::int64_t;

/// Seconds since 1970-01-01T00:00:00Z, used only for raw (sub-hourly) samples.
using SecondIndex = std::int64_t;

constexpr SecondIndex kSecondsPerHour = 3600;

constexpr HourIndex floor_to_hour(SecondIndex t) {
    // Floor division; raw archives never predate 1970 but keep it correct anyway.
    return (t >= 0) ? t / kSecondsPerHour : -((-t + kSecondsPerHour - 1) / kSecondsPerHour);
}

constexpr SecondIndex hour_to_seconds(HourIndex h) { return h * kSecondsPerHour; }

/// Civil UTC calendar fields of an instant.
struct CivilTime {
    int year;
    int month;  // 1..12
    int day;    // 1..31
    int hour;   // 0..23
    int minute; // 0..59
    int second; // 0..59
};

SecondIndex to_seconds(const CivilTime& c);
CivilTime to_civil(SecondIndex t);

HourIndex utc_hour(int year, int month, int day, int hour = 0);

/// Calendar month (1..12) of an hourly grid slot.
int month_of(HourIndex h);
int year_of(HourIndex h);

/// Parses "YYYY-MM-DD HH:MM[:SS]" or "YYYY-MM-DDTHH:MM[:SS][Z]".
/// Throws std::invalid_argument on malformed input.
SecondIndex parse_utc(std::string_view text);

/// As parse_utc but requires minutes and seconds to be zero.
HourIndex parse_utc_hour(std::string_view text);

std::string format_utc(SecondIndex t);      // "YYYY-MM-DDTHH:MM:SSZ"
std::string format_utc_hour(HourIndex h);   // "YYYY-MM-DDTHH:00Z"

} // namespace metocean

#endif
