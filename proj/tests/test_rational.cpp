#include <catch2/catch_amalgamated.hpp>

#include "causal/rational.hpp"

using causal::Rational;

TEST_CASE("rational arithmetic is exact and normalized") {
    REQUIRE(Rational(2, 4) == Rational(1, 2));
    REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    REQUIRE(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    REQUIRE(Rational(1, 2) - Rational(1, 2) == Rational(0));
    REQUIRE(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
    REQUIRE(Rational(-1, -2) == Rational(1, 2));
    REQUIRE(Rational(1, -2) == Rational(-1, 2));
}

TEST_CASE("rational comparisons") {
    REQUIRE(Rational(1, 3) < Rational(1, 2));
    REQUIRE(Rational(2, 3) > Rational(1, 2));
    REQUIRE(Rational(1, 2) <= Rational(2, 4));
    REQUIRE(Rational(1, 2) >= Rational(2, 4));
}

TEST_CASE("rational parsing accepts fractions, decimals and integers") {
    REQUIRE(Rational::parse("1/3") == Rational(1, 3));
    REQUIRE(Rational::parse("2/4") == Rational(1, 2));
    REQUIRE(Rational::parse("0.5") == Rational(1, 2));
    REQUIRE(Rational::parse("0.25") == Rational(1, 4));
    REQUIRE(Rational::parse("1") == Rational(1));
    REQUIRE(Rational::parse("0") == Rational(0));
    REQUIRE_THROWS_AS(Rational::parse("1/0"), causal::Error);
    REQUIRE_THROWS_AS(Rational::parse("x"), causal::Error);
}

TEST_CASE("rational printing is reduced") {
    REQUIRE(Rational(2, 4).str() == "1/2");
    REQUIRE(Rational(4, 4).str() == "1");
    REQUIRE(Rational(0, 7).str() == "0");
}
