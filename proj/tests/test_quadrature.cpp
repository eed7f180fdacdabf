#include <doctest.h>

#include <cmath>

#include "holex/quadrature.hpp"

using namespace holex;

TEST_CASE("gauss_legendre integrates polynomials at the exactness order") {
  const auto rule = gauss_legendre(2, 0.0, 2.0);
  double cubic = 0.0;
  for (const auto& [x, w] : rule) cubic += w * x * x * x;
  CHECK(cubic == doctest::Approx(4.0).epsilon(1e-13));

  const auto fine = gauss_legendre(12, 0.0, 1.0);
  double cosine = 0.0;
  for (const auto& [x, w] : fine) cosine += w * std::cos(x);
  CHECK(cosine == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("rule weights are positive and sum to the volume") {
  for (long long power : {1LL, 4LL, 32LL}) {
    const Geometry line(GeometrySpec::projective(1), power);
    const QuadratureRule rule = build_quadrature(line);
    for (const auto& node : rule.nodes) CHECK(node.weight > 0.0);
    CHECK(rule.total_weight() == doctest::Approx(line.total_volume()).epsilon(1e-12));
  }

  const Geometry plane(GeometrySpec::projective(2), 3);
  const QuadratureRule prule = build_quadrature(plane);
  CHECK(prule.total_weight() == doctest::Approx(plane.total_volume()).epsilon(1e-11));

  const Geometry torus(GeometrySpec::elliptic(cdouble(0.2, 0.9), 2), 2);
  const QuadratureRule trule = build_quadrature(torus);
  for (const auto& node : trule.nodes) CHECK(node.weight > 0.0);
  CHECK(trule.total_weight() == doctest::Approx(torus.total_volume()).epsilon(1e-12));
}

TEST_CASE("raising the order only adds nodes, never moves totals") {
  const Geometry line(GeometrySpec::projective(1), 6);
  const QuadratureRule base = build_quadrature(line, 8);
  const QuadratureRule more = build_quadrature(line, 16);
  CHECK(more.nodes.size() > base.nodes.size());
  CHECK(base.total_weight() == doctest::Approx(more.total_weight()).epsilon(1e-13));
  CHECK_THROWS_AS(build_quadrature(line, 0), ValidationError);
}
