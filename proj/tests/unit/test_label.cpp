#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>

#include "eppa/label.hpp"

using eppa::Label;
using eppa::parse_label;
using eppa::Rational;

TEST_CASE("construction reduces to canonical form") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(6, 4).numerator() == 3);
  CHECK(Rational(6, 4).denominator() == 2);
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(-3, -6).denominator() == 2);
  CHECK(Rational(0, 5).denominator() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("parse accepts only canonical spellings") {
  CHECK(parse_label("3") == Rational(3));
  CHECK(parse_label("3/2") == Rational(3, 2));
  CHECK(parse_label("10") == Rational(10));
  for (const char* bad : {"", "0", "-1", "+1", "01", "1/1", "2/4", "3/0", "1/", "/2", "a",
                          "1.5", " 1", "1 ", "1/02", "99999999999999999999"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_label(bad), std::invalid_argument);
  }
}

TEST_CASE("zero is a rational but not a label") {
  CHECK(Rational::parse("0") == Rational(0));
  CHECK_THROWS_AS(parse_label("0"), std::invalid_argument);
}

TEST_CASE("to_string round trips") {
  CHECK(Rational(7).to_string() == "7");
  CHECK(Rational(7, 3).to_string() == "7/3");
  CHECK(parse_label(Rational(22, 7).to_string()) == Rational(22, 7));
}

TEST_CASE("floor") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(6, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(1, 3).floor() == 0);
}

TEST_CASE("overflow throws instead of wrapping") {
  const Rational big(std::numeric_limits<std::int64_t>::max() - 1);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

// Randomized arithmetic against __int128 cross multiplication.
TEST_CASE("arithmetic and order agree with wide integer arithmetic") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::int64_t a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rational x(a, b), y(c, d);
    CAPTURE(a);
    CAPTURE(b);
    CAPTURE(c);
    CAPTURE(d);

    CHECK(std::gcd(x.numerator(), x.denominator()) == 1);
    CHECK(x.denominator() > 0);

    const __int128 lhs = static_cast<__int128>(a) * d, rhs = static_cast<__int128>(c) * b;
    CHECK((x < y) == (lhs < rhs));
    CHECK((x == y) == (lhs == rhs));

    const Rational s = x + y;
    CHECK(static_cast<__int128>(s.numerator()) * b * d ==
          (static_cast<__int128>(a) * d + static_cast<__int128>(c) * b) * s.denominator());
    CHECK(s - y == x);
    const Rational p = x * y;
    CHECK(static_cast<__int128>(p.numerator()) * b * d ==
          static_cast<__int128>(a) * c * p.denominator());
    if (c != 0) CHECK(p / y == x);
  }
}
