#include "phragmen/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace phragmen;

TEST_CASE("parse accepts fractions, integers and decimals") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("-1.5") == Rational(-3, 2));
    CHECK(parse_rational("6/4") == Rational(3, 2)); // reduced on construction
}

TEST_CASE("parse rejects malformed input") {
    for (const char* bad : {"", "x", "1/", "/3", "1/0", "1.2.3", "1 2", "--3"})
        CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("format round-trips random reduced fractions") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long long> num(-1'000'000, 1'000'000);
    std::uniform_int_distribution<long long> den(1, 1'000'000);
    for (int trial = 0; trial < 2000; ++trial) {
        Rational r(num(rng), den(rng));
        CHECK(parse_rational(format_rational(r)) == r);
        CHECK(parse_rational(format_fraction(r)) == r);
    }
}

TEST_CASE("stored values are always in lowest terms with positive denominator") {
    Rational r(4, 8);
    CHECK(numerator_of(r) == 1);
    CHECK(denominator_of(r) == 2);
    Rational negative(3, -6);
    CHECK(numerator_of(negative) == -1);
    CHECK(denominator_of(negative) == 2);
}

TEST_CASE("three-decimal rendering rounds half away from zero and trims") {
    CHECK(decimal3(Rational(1, 20)) == "0.05");
    CHECK(decimal3(Rational(1, 5)) == "0.2");
    CHECK(decimal3(Rational(13, 80)) == "0.163");  // 0.1625 rounds up
    CHECK(decimal3(Rational(161, 520)) == "0.31"); // 0.3096...
    CHECK(decimal3(Rational(16, 65)) == "0.246");
    CHECK(decimal3(Rational(0)) == "0");
    CHECK(decimal3(Rational(2)) == "2");
    CHECK(decimal3(Rational(-13, 80)) == "-0.163");
}

TEST_CASE("exact decimal expansion detects termination") {
    CHECK(exact_decimal(Rational(1, 4)) == std::string("0.25"));
    CHECK(exact_decimal(Rational(3)) == std::string("3"));
    CHECK(exact_decimal(Rational(1, 40)) == std::string("0.025"));
    CHECK(exact_decimal(Rational(-7, 2)) == std::string("-3.5"));
    CHECK(!exact_decimal(Rational(1, 3)).has_value());
    CHECK(!exact_decimal(Rational(5, 6)).has_value());
}

TEST_CASE("approximate decimal keeps 15 significant digits") {
    CHECK(approx_decimal(Rational(1, 3)) == "0.333333333333333");
    CHECK(approx_decimal(Rational(2, 3)) == "0.666666666666667");
    CHECK(approx_decimal(Rational(0)) == "0");
}
