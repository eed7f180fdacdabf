#pragma once

#include <vector>

#include "holex/geometry.hpp"

namespace holex {

struct QuadratureNode {
  ChartPoint point;
  double weight;  // against the power-N volume form
};

struct QuadratureRule {
  std::vector<QuadratureNode> nodes;
  double total_weight() const;
};

// Gauss-Legendre nodes and weights on [a, b].
std::vector<std::pair<double, double>> gauss_legendre(int count, double a, double b);

inline constexpr int kDefaultQuadratureOrder = 8;

// Rule that integrates products of two sections in the h-metric exactly
// (projective case) or to far below double rounding (elliptic case). The
// order knob only adds nodes beyond the exactness minimum, so raising it
// must not move any integral.
QuadratureRule build_quadrature(const Geometry& geom, int order = kDefaultQuadratureOrder);

}  // namespace holex
