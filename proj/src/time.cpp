#include "metocean/time.hpp"

#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace metocean {

namespace {

std::chrono::sys_days civil_days(int year, int month, int day) {
    using namespace std::chrono;
    const year_month_day ymd{std::chrono::year{year}, std::chrono::month{unsigned(month)},
                             std::chrono::day{unsigned(day)}};
    if (!ymd.ok())
        throw std::invalid_argument("invalid calendar date: " + std::to_string(year) + "-" +
                                    std::to_string(month) + "-" + std::to_string(day));
    return sys_days{ymd};
}

} // namespace

SecondIndex to_seconds(const CivilTime& c) {
    if (c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 || c.second < 0 || c.second > 60)
        throw std::invalid_argument("invalid time of day");
    const auto days = civil_days(c.year, c.month, c.day).time_since_epoch().count();
    return SecondIndex(days) * 86400 + c.hour * 3600 + c.minute * 60 + c.second;
}

CivilTime to_civil(SecondIndex t) {
    using namespace std::chrono;
    const auto days = (t >= 0) ? t / 86400 : -((-t + 86399) / 86400);
    const int secs_of_day = int(t - days * 86400);
    const year_month_day ymd{sys_days{std::chrono::days{days}}};
    CivilTime c;
    c.year = int(ymd.year());
    c.month = int(unsigned(ymd.month()));
    c.day = int(unsigned(ymd.day()));
    c.hour = secs_of_day / 3600;
    c.minute = (secs_of_day % 3600) / 60;
    c.second = secs_of_day % 60;
    return c;
}

HourIndex utc_hour(int year, int month, int day, int hour) {
    return floor_to_hour(to_seconds(CivilTime{year, month, day, hour, 0, 0}));
}

int month_of(HourIndex h) { return to_civil(hour_to_seconds(h)).month; }
int year_of(HourIndex h) { return to_civil(hour_to_seconds(h)).year; }

SecondIndex parse_utc(std::string_view text) {
    CivilTime c{0, 0, 0, 0, 0, 0};
    char sep = 0;
    int consumed = -1;
    const std::string buf(text);
    const auto fail = [&buf]() -> SecondIndex {
        throw std::invalid_argument("unparseable UTC timestamp: \"" + buf + "\"");
    };
    int n = std::sscanf(buf.c_str(), "%4d-%2d-%2d%c%2d:%2d%n", &c.year, &c.month, &c.day, &sep,
                        &c.hour, &c.minute, &consumed);
    if (n != 6 || (sep != ' ' && sep != 'T'))
        return fail();
    std::string_view tail = std::string_view(buf).substr(size_t(consumed));
    if (!tail.empty() && tail.front() == ':') {
        int secs = -1;
        int extra = -1;
        if (std::sscanf(buf.c_str() + consumed, ":%2d%n", &secs, &extra) != 1)
            return fail();
        c.second = secs;
        tail = tail.substr(size_t(extra));
    }
    if (!tail.empty() && tail != "Z")
        return fail();
    return to_seconds(c);
}

HourIndex parse_utc_hour(std::string_view text) {
    const SecondIndex t = parse_utc(text);
    if (t % kSecondsPerHour != 0)
        throw std::invalid_argument("timestamp \"" + std::string(text) +
                                    "\" is not aligned to a whole hour");
    return t / kSecondsPerHour;
}

std::string format_utc(SecondIndex t) {
    const CivilTime c = to_civil(t);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day, c.hour,
                  c.minute, c.second);
    return buf;
}

std::string format_utc_hour(HourIndex h) {
    const CivilTime c = to_civil(hour_to_seconds(h));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00Z", c.year, c.month, c.day, c.hour);
    return buf;
}

} // namespace metocean
