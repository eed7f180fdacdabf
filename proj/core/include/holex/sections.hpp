#pragma once

#include <Eigen/Dense>
#include <vector>

#include "holex/geometry.hpp"
#include "holex/quadrature.hpp"

namespace holex {

// Lattice truncation radius that keeps the discarded theta tail far
// below the working tolerance.
int theta_truncation_window(long long sections, double im_tau);

// Raw holomorphic sections in local trivializations: degree-N monomials
// on projective space, the classical theta basis on the elliptic curve.
class RawBasis {
 public:
  static RawBasis make(const Geometry& geom);

  const Geometry& geometry() const { return *geom_; }
  long long count() const;

  Eigen::VectorXcd evaluate(const ChartPoint& p) const;
  // Values plus the holomorphic gradient in the chart of p (dim x count).
  void evaluate_with_gradient(const ChartPoint& p, Eigen::VectorXcd* value,
                              Eigen::MatrixXcd* gradient) const;

 private:
  explicit RawBasis(const Geometry& geom);

  void eval_projective(const ChartPoint& p, Eigen::VectorXcd* value,
                       Eigen::MatrixXcd* gradient) const;
  void eval_theta(const ChartPoint& p, Eigen::VectorXcd* value,
                  Eigen::MatrixXcd* gradient) const;

  const Geometry* geom_;
  std::vector<std::vector<int>> exponents_;  // homogeneous multi-indices
};

// gram(j, k) = <S_j, S_k> in L^2 of the h-metric against the power-1
// volume form.
Eigen::MatrixXcd gram_matrix(const RawBasis& basis, const QuadratureRule& rule);

struct GramFactor {
  // orthonormal_k = sum_j transform(j, k) raw_j
  Eigen::MatrixXcd transform;
  double condition = 1.0;  // of the diagonally equilibrated Gram matrix
};

GramFactor orthonormalize_gram(const Eigen::MatrixXcd& gram);

class OrthonormalBasis {
 public:
  OrthonormalBasis(const Geometry& geom, RawBasis raw, GramFactor factor);

  const Geometry& geometry() const { return raw_.geometry(); }
  const RawBasis& raw() const { return raw_; }
  long long count() const { return raw_.count(); }
  const Eigen::MatrixXcd& transform() const { return factor_.transform; }
  double gram_condition() const { return factor_.condition; }

  Eigen::VectorXcd evaluate(const ChartPoint& p) const;
  void evaluate_with_gradient(const ChartPoint& p, Eigen::VectorXcd* value,
                              Eigen::MatrixXcd* gradient) const;

 private:
  RawBasis raw_;
  GramFactor factor_;
};

OrthonormalBasis make_orthonormal_basis(const Geometry& geom,
                                        int quadrature_order = kDefaultQuadratureOrder);

}  // namespace holex
