#include <catch_amalgamated.hpp>

#include "forge/rational.hpp"
#include "forge/rng.hpp"

using forge::Rational;

TEST_CASE("rationals canonicalize eagerly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).numerator() == 2);
    CHECK(Rational(6, 3).denominator() == 1);
}

TEST_CASE("arithmetic is exact") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK((-a).numerator() == -1);
    CHECK(a.abs() == a);
    CHECK((-a).abs() == a);
}

TEST_CASE("ordering uses exact cross multiplication") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 6) <= Rational(1, 3));
    CHECK(forge::min(Rational(3, 4), Rational(2, 3)) == Rational(2, 3));
    CHECK(forge::max(Rational(3, 4), Rational(2, 3)) == Rational(3, 4));
}

TEST_CASE("parse and format round-trip") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(3, 4).str() == "3/4");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(-6, 4).str() == "-3/2");
    CHECK_THROWS_AS(Rational::parse("1/0"), forge::Error);
    CHECK_THROWS_AS(Rational::parse("a"), forge::Error);
    CHECK_THROWS_AS(Rational::parse(""), forge::Error);
    CHECK_THROWS_AS(Rational::parse("1.5"), forge::Error);
}

TEST_CASE("floor and ceil") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(4).floor() == 4);
    CHECK(Rational(4).ceil() == 4);
}

TEST_CASE("division by zero and overflow throw") {
    CHECK_THROWS_AS(Rational(1, 0), forge::Error);
    CHECK_THROWS_AS(Rational(1) / Rational(0), forge::Error);
    Rational big(INT64_MAX);
    CHECK_THROWS_AS(big * big, forge::Error);
}

TEST_CASE("field identities on sampled values") {
    forge::SplitMix64 rng(7);
    auto sample = [&]() {
        std::int64_t num = static_cast<std::int64_t>(rng.uniform(2001)) - 1000;
        std::int64_t den = static_cast<std::int64_t>(rng.uniform(50)) + 1;
        return Rational(num, den);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = sample(), b = sample();
        CHECK((a + b) - b == a);
        CHECK(a + b == b + a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
        CHECK((a - b).abs() == (b - a).abs());
    }
}
