#include <doctest.h>

#include "eulerstack/rational.hpp"

using namespace eulerstack;

TEST_CASE("rationals normalize and compute exactly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
    CHECK(Rational(7) / Rational(2) == Rational(7, 2));
    CHECK((Rational(1, 3) - Rational(1, 3)).is_zero());
    CHECK(Rational(5, 1).is_integer());
    CHECK(!Rational(5, 2).is_integer());
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("rational division by zero is an error") {
    CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
}

TEST_CASE("rational parse and print round-trip") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-3/2") == Rational(-3, 2));
    CHECK(Rational::parse("4/2") == Rational(2));
    CHECK(Rational::parse("0") == Rational(0));
    CHECK(Rational(3, 2).str() == "3/2");
    CHECK(Rational(-4, 2).str() == "-2");
    CHECK(Rational(0).str() == "0");

    for (std::int64_t n = -7; n <= 7; ++n)
        for (std::int64_t d = 1; d <= 5; ++d) {
            Rational r(n, d);
            CHECK(Rational::parse(r.str()) == r);
        }
}

TEST_CASE("rational parse rejects junk") {
    CHECK_THROWS_AS(Rational::parse("x"), Error);
    CHECK_THROWS_AS(Rational::parse("1/0"), Error);
    CHECK_THROWS_AS(Rational::parse("1/-2"), Error);
    CHECK_THROWS_AS(Rational::parse("1/2/3"), Error);
    CHECK_THROWS_AS(Rational::parse("1.5"), Error);
}

TEST_CASE("extended rationals confine infinity") {
    ExtRational inf = ExtRational::infinity();
    CHECK(inf.is_infinite());
    CHECK(inf.reciprocal() == ExtRational(0));
    CHECK(ExtRational(Rational(0)).reciprocal().is_infinite());
    CHECK(ExtRational(Rational(2)).reciprocal() == ExtRational(Rational(1, 2)));
    CHECK(inf * ExtRational(2) == inf);
    CHECK_THROWS_AS(inf * ExtRational(0), Error);
    CHECK_THROWS_AS((void)inf.finite_value(), Error);
    CHECK(inf.str() == "inf");
}
