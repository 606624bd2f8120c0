#include <doctest.h>

#include "metocean/time.hpp"

#include <stdexcept>

using namespace metocean;

TEST_CASE("civil round trip") {
    const SecondIndex t = to_seconds(CivilTime{2019, 1, 1, 0, 0, 0});
    CHECK(t == 17897LL * 86400);
    const CivilTime c = to_civil(t);
    CHECK(c.year == 2019);
    CHECK(c.month == 1);
    CHECK(c.day == 1);
    CHECK(c.hour == 0);

    // leap day
    CHECK_NOTHROW(to_seconds(CivilTime{2020, 2, 29, 12, 0, 0}));
    CHECK_THROWS_AS(to_seconds(CivilTime{2019, 2, 29, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("parse_utc accepts both separators and optional seconds/Z") {
    const SecondIndex want = to_seconds(CivilTime{2019, 3, 5, 14, 30, 0});
    CHECK(parse_utc("2019-03-05T14:30Z") == want);
    CHECK(parse_utc("2019-03-05 14:30") == want);
    CHECK(parse_utc("2019-03-05T14:30:00Z") == want);
    CHECK(parse_utc("2019-03-05 14:30:45") == want + 45);

    CHECK_THROWS_AS(parse_utc("2019/03/05 14:30"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("2019-03-05T14:30xyz"), std::invalid_argument);
    CHECK_THROWS_AS(parse_utc("garbage"), std::invalid_argument);
}

TEST_CASE("parse_utc_hour requires whole hours") {
    CHECK(parse_utc_hour("2019-01-01T00:00Z") == utc_hour(2019, 1, 1, 0));
    CHECK(parse_utc_hour("2019-01-02T05:00Z") == utc_hour(2019, 1, 1, 0) + 29);
    CHECK_THROWS_AS(parse_utc_hour("2019-01-01T00:30Z"), std::invalid_argument);
}

TEST_CASE("month_of over a year boundary") {
    const HourIndex dec31_23 = utc_hour(2019, 12, 31, 23);
    CHECK(month_of(dec31_23) == 12);
    CHECK(month_of(dec31_23 + 1) == 1);
    CHECK(year_of(dec31_23 + 1) == 2020);
}

TEST_CASE("format round trip") {
    const HourIndex h = utc_hour(2023, 7, 15, 9);
    CHECK(format_utc_hour(h) == "2023-07-15T09:00Z");
    CHECK(parse_utc_hour(format_utc_hour(h)) == h);
    const SecondIndex t = to_seconds(CivilTime{2023, 7, 15, 9, 10, 11});
    CHECK(format_utc(t) == "2023-07-15T09:10:11Z");
    CHECK(parse_utc(format_utc(t)) == t);
}
