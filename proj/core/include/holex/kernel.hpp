#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "holex/sections.hpp"

namespace holex {

// Values and first derivative of the orthonormal family along one complex
// parameter: the ambient chart coordinate of a curve point, or the line
// parameter of a restriction.
struct FrameVector {
  Eigen::VectorXcd f;
  Eigen::VectorXcd fprime;
};

// Frame at a point of a one-dimensional geometry, differentiated along the
// chart coordinate of p.
FrameVector frame_vector(const OrthonormalBasis& basis, const ChartPoint& p);

// <a, b> with the conjugation on the second slot.
inline cdouble pairing(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return b.dot(a); }

// Squared-norm density of the orthonormal family at p: sum_j |S_j(p)|^2
// in the h-metric. Integrates to the section count against the power-1
// volume form.
double szego_diag(const OrthonormalBasis& basis, const ChartPoint& p);

// |<F(z), F(w)>| / (|F(z)| |F(w)|), the metric-free two-point kernel.
double normalized_kernel(const OrthonormalBasis& basis, const ChartPoint& z, const ChartPoint& w);
double normalized_kernel(const FrameVector& fz, const FrameVector& fw);

// First and mixed-second derivative data of E = squared normalized kernel,
// in the parameters underlying the two frames.
struct KernelDerivs {
  double e = 0.0;               // E(z, w), in [0, 1]
  cdouble e_z;                  // d/dz E
  cdouble e_zwbar;              // d2/dz dwbar E at (z, w)
  double e_zwbar_diag_z = 0.0;  // d2/dz dwbar E at (z, z)
  double e_zwbar_diag_w = 0.0;  // d2/dz dwbar E at (w, w)
};

// All fields from closed inner-product expressions in F, F'; no numerical
// differentiation anywhere on this path.
KernelDerivs e_derivatives(const FrameVector& fz, const FrameVector& fw);
KernelDerivs e_derivatives(const OrthonormalBasis& basis, const ChartPoint& z,
                           const ChartPoint& w);

// Unnormalized tangent direction F'(z) - (<F'(z),F(z)>/|F(z)|^2) F(z); the
// line it spans is orthogonal to F(z).
Eigen::VectorXcd tangent_vector(const FrameVector& fz);

struct DensityReport {
  long long power = 0;
  double max_deviation = 0.0;  // max over probes of |pi^m rho / N^m - 1|
  double spread = 0.0;         // max minus min of pi^m rho / N^m
  long long probes = 0;
};

// Flatness of the normalized diagonal density over a probe set.
DensityReport density_check(const OrthonormalBasis& basis, const std::vector<ChartPoint>& probes);

struct GaussianPair {
  cdouble u;
  cdouble v;
  double kernel = 0.0;     // P at the offset pair
  double gaussian = 0.0;   // exp(-|u - v|^2 / 2)
  double deviation = 0.0;  // |kernel - gaussian|
};

struct GaussianReport {
  long long power = 0;
  double window = 0.0;   // admissible |u| + |v| bound, b sqrt(log N)
  double exponent = 0.0; // epsilon in the deviation shape
  double max_deviation = 0.0;
  double fitted_constant = 0.0;  // max over pairs of dev / (|u-v|^2 N^(eps-1/2))
  std::vector<GaussianPair> pairs;
};

// Kernel against its scaling limit on offsets u, v around a center, taken in
// the preferred chart rescaled by sqrt(N). Offsets must satisfy
// |u| + |v| < b sqrt(log N).
GaussianReport gaussian_check(const OrthonormalBasis& basis, const ChartPoint& center,
                              const std::vector<std::pair<cdouble, cdouble>>& offsets,
                              double b = 2.0, double epsilon = 0.25);

}  // namespace holex
