#include "orbas/error.hpp"
#include "orbas/ratio.hpp"

#include <doctest.h>

using orbas::Ratio;

TEST_CASE("parse_ratio reads decimals and fractions exactly") {
    CHECK(orbas::parse_ratio("0.15") == Ratio(3, 20));
    CHECK(orbas::parse_ratio(".5") == Ratio(1, 2));
    CHECK(orbas::parse_ratio("1") == Ratio(1));
    CHECK(orbas::parse_ratio("2/3") == Ratio(2, 3));
    CHECK(orbas::parse_ratio("0.7") == Ratio(7, 10));
    CHECK(orbas::parse_ratio("1.000") == Ratio(1));
}

TEST_CASE("parse_ratio rejects malformed text") {
    for (const char* bad : {"", ".", "abc", "1/0", "0.5x", "-0.5", "1/", "/2", "0.1234567890123456", " 0.5"})
        CHECK_THROWS_AS(orbas::parse_ratio(bad), orbas::InvalidArgument);
}

TEST_CASE("parse_unit_ratio enforces [0,1]") {
    CHECK(orbas::parse_unit_ratio("0") == Ratio(0));
    CHECK(orbas::parse_unit_ratio("1") == Ratio(1));
    CHECK_THROWS_AS(orbas::parse_unit_ratio("1.01"), orbas::InvalidArgument);
    CHECK_THROWS_AS(orbas::parse_unit_ratio("3/2"), orbas::InvalidArgument);
}

TEST_CASE("formatting and ceiling") {
    CHECK(orbas::to_string(Ratio(1, 3)) == "1/3");
    CHECK(orbas::to_string(Ratio(4, 2)) == "2");
    CHECK(orbas::to_double(Ratio(1, 4)) == doctest::Approx(0.25));
    CHECK(orbas::ceil_nonneg(Ratio(3, 2)) == 2);
    CHECK(orbas::ceil_nonneg(Ratio(4, 2)) == 2);
    CHECK(orbas::ceil_nonneg(Ratio(0)) == 0);
    CHECK(orbas::ceil_nonneg(Ratio(1, 4) * 7) == 2);
}
