#pragma once

#include <Eigen/Dense>

#include "holex/kernel.hpp"
#include "holex/rng.hpp"

// Test-side reference implementations, written independently of the library
// paths they check: finite differences instead of closed derivatives, direct
// sphere search instead of projection algebra, special-function closed forms
// instead of quadrature.
namespace oracle {

using holex::cdouble;
using holex::OrthonormalBasis;

// E(z, w) evaluated from scratch at arbitrary chart coordinates of a
// one-dimensional geometry, no derivative formulas involved.
double squared_kernel(const OrthonormalBasis& basis, cdouble z, cdouble w, int chart_z = 0,
                      int chart_w = 0);

struct NumericDerivs {
  cdouble e_z;
  cdouble e_zwbar;
  double e_zwbar_diag_z;
};

// Richardson-extrapolated central differences of E in the chart coordinates.
NumericDerivs numeric_e_derivatives(const OrthonormalBasis& basis, cdouble z, cdouble w,
                                    double h = 1e-3);

// Exact two-point kernel of the degree-N model on the line, |z| charts.
double model_line_kernel(long long power, cdouble z, cdouble w);

// Exact monomial pairing on the line: <z^j, z^k> = delta_jk pi j! (N-j)! / (N+1)!
double model_line_gram_diagonal(long long power, int j);

// Distance from [p] to the projectivized orthogonal complement of
// span{a, b}, by random search plus compass refinement over the complement.
// Never forms the orthogonal projection of p.
double slice_distance_by_search(const Eigen::VectorXcd& p, const Eigen::VectorXcd& a,
                                const Eigen::VectorXcd& b, holex::CounterRng& rng,
                                int starts = 4000);

// Haar-ish random unitary via QR of a Gaussian matrix.
Eigen::MatrixXcd random_unitary(int size, holex::CounterRng& rng);

}  // namespace oracle
