#include <doctest.h>

#include "holex/rational.hpp"

using namespace holex;

TEST_CASE("parse_rational accepts integers, decimals and fractions") {
  CHECK(parse_rational("3") == Rational(3));
  CHECK(parse_rational("-0.25") == Rational(-1, 4));
  CHECK(parse_rational("9/10") == Rational(9, 10));
  CHECK(parse_rational("0") == Rational(0));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational(""));
}

TEST_CASE("rational_from_double is exact on dyadics") {
  CHECK(rational_from_double(0.5) == Rational(1, 2));
  CHECK(rational_from_double(-0.375) == Rational(-3, 8));
  CHECK(to_double(rational_from_double(0.1)) == 0.1);
}

TEST_CASE("to_string round-trips through parse") {
  const Rational r(-355, 113);
  CHECK(parse_rational(to_string(r)) == r);
}

TEST_CASE("binomial small table and edge cases") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 10) == 1);
  CHECK(binomial(4, 7) == 0);
  CHECK(binomial(60, 30) == BigInt("118264581564861424"));
}
