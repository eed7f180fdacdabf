#include <doctest.h>

#include <cmath>

#include "holex/chern.hpp"
#include "holex/common.hpp"

using namespace holex;
using namespace holex::chern;

TEST_CASE("section space dimensions") {
  CHECK(h0_dimension(RingSpec::curve(0, 1), 4) == 5);
  CHECK(h0_dimension(RingSpec::curve(1, 3), 2) == 6);
  CHECK(h0_dimension(RingSpec::curve(1, 1), 5) == 5);
  CHECK(h0_dimension(RingSpec::proj_space(2), 3) == 10);
  CHECK(h0_dimension(RingSpec::proj_space(3), 2) == 10);
  CHECK_THROWS_AS(h0_dimension(RingSpec::curve(2, 1), 2), ValidationError);
}

TEST_CASE("ring arithmetic truncates at the top degree") {
  const CohomologyClass one = CohomologyClass::scalar(2, Rational(1));
  const CohomologyClass h = CohomologyClass::generator(2);
  const CohomologyClass cube = (one + h).pow(3);
  CHECK(cube.coeff(0) == Rational(1));
  CHECK(cube.coeff(1) == Rational(3));
  CHECK(cube.coeff(2) == Rational(3));
  CHECK(cube.integral() == Rational(3));
  CHECK((h * h * h).integral() == Rational(0));
}

TEST_CASE("ring evaluation equals the closed curve formula exactly") {
  for (int genus : {0, 1}) {
    for (int deg : {1, 2, 3}) {
      for (long long power = 1; power <= 6; ++power) {
        if (power * deg <= 2 * genus - 2) continue;
        if (power * deg - genus < 1) continue;
        for (int k = 0; k <= 8; ++k) {
          const Rational u(k, 8);
          const FormulaResult ring = ring_eval_expected_chi(RingSpec::curve(genus, deg), power, u);
          const FormulaResult closed = expected_chi_curve(genus, deg, power, u);
          REQUIRE(ring.exact.has_value());
          REQUIRE(closed.exact.has_value());
          CHECK(*ring.exact == *closed.exact);
        }
      }
    }
  }
}

TEST_CASE("projective line ring matches the genus-zero curve ring") {
  for (long long power : {1LL, 2LL, 5LL}) {
    const Rational u(3, 7);
    const FormulaResult a = ring_eval_expected_chi(RingSpec::proj_space(1), power, u);
    const FormulaResult b = ring_eval_expected_chi(RingSpec::curve(0, 1), power, u);
    REQUIRE(a.exact.has_value());
    CHECK(*a.exact == *b.exact);
  }
}

TEST_CASE("degenerate-threshold values of the curve formula") {
  // u = 1 with n = 1: the bracket collapses to 1.
  const FormulaResult unit = expected_chi_curve(0, 1, 1, Rational(1));
  CHECK(*unit.exact == Rational(1));
  // u = 1 with n >= 2: the prefactor kills everything.
  const FormulaResult zero = expected_chi_curve(0, 1, 4, Rational(1));
  CHECK(*zero.exact == Rational(0));
  // u = 0: bracket is -N degL + 2 (1 - u^2) terms only.
  const FormulaResult base = expected_chi_curve(0, 1, 3, Rational(0));
  CHECK(*base.exact == Rational(-1));  // (1)^2 [0 - 3(0 + 1) + 2] = -1
}

TEST_CASE("float scale survives double underflow") {
  // n = h0 - 1 = 860; (1 - u^2)^858 is far below double range.
  const FormulaResult r = ring_eval_expected_chi(RingSpec::proj_space(2), 40, Rational(9, 10));
  REQUIRE(r.exact.has_value());
  CHECK(!r.float_fallback);
  CHECK(r.sign != 0);
  CHECK(std::isfinite(r.log10_abs));
  CHECK(r.log10_abs < -300.0);
}

TEST_CASE("leading term, float and exact") {
  const int m = 1;
  const long long n = 10;
  const double u = 0.5;
  const double direct = std::pow(static_cast<double>(n), m + 1) *
                        std::pow(1.0 - u * u, static_cast<double>(n - m)) *
                        std::pow(u, 2.0 * m);
  CHECK(leading_term(m, n, u) == doctest::Approx(direct).epsilon(1e-13));
  const FormulaResult exact = leading_term_exact(m, n, Rational(1, 2));
  REQUIRE(exact.exact.has_value());
  CHECK(to_double(*exact.exact) == doctest::Approx(direct).epsilon(1e-13));
  CHECK_THROWS_AS(leading_term(2, 2, 0.5), ValidationError);
}

TEST_CASE("tube volume consistency") {
  // Zero tube at zero radius whenever the curve has positive codimension.
  const FormulaResult at_one = tube_volume_curve(0, 1, 4, Rational(1));
  CHECK(*at_one.exact == Rational(0));

  // Normalized and absolute values are the same number in two scales.
  const FormulaResult t = tube_volume_curve(1, 2, 3, Rational(1, 2));
  REQUIRE(t.exact.has_value());
  const long long n = h0_dimension(RingSpec::curve(1, 2), 3) - 1;
  double vol_cpn = 1.0;
  for (long long k = 1; k <= n; ++k) vol_cpn *= M_PI / static_cast<double>(k);
  CHECK(t.value == doctest::Approx(to_double(*t.exact) * vol_cpn).epsilon(1e-12));
}
