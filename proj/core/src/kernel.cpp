#include "holex/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holex {

FrameVector frame_vector(const OrthonormalBasis& basis, const ChartPoint& p) {
  if (basis.geometry().dim() != 1)
    throw ValidationError("chart-coordinate frames require a one-dimensional geometry");
  FrameVector out;
  Eigen::MatrixXcd gradient;
  basis.evaluate_with_gradient(p, &out.f, &gradient);
  out.fprime = gradient.row(0).transpose();
  if (!(out.f.squaredNorm() > 0.0)) throw NumericError("section frame vanished at a point");
  return out;
}

double szego_diag(const OrthonormalBasis& basis, const ChartPoint& p) {
  return basis.evaluate(p).squaredNorm() * std::exp(-basis.geometry().potential(p));
}

double normalized_kernel(const OrthonormalBasis& basis, const ChartPoint& z,
                         const ChartPoint& w) {
  const Eigen::VectorXcd fz = basis.evaluate(z);
  const Eigen::VectorXcd fw = basis.evaluate(w);
  const double denom = fz.norm() * fw.norm();
  if (!(denom > 0.0)) throw NumericError("section frame vanished at a point");
  return std::clamp(std::abs(pairing(fz, fw)) / denom, 0.0, 1.0);
}

double normalized_kernel(const FrameVector& fz, const FrameVector& fw) {
  const double denom = fz.f.norm() * fw.f.norm();
  if (!(denom > 0.0)) throw NumericError("section frame vanished at a point");
  return std::clamp(std::abs(pairing(fz.f, fw.f)) / denom, 0.0, 1.0);
}

Eigen::VectorXcd tangent_vector(const FrameVector& fz) {
  const double az = fz.f.squaredNorm();
  if (!(az > 0.0)) throw NumericError("section frame vanished at a point");
  return fz.fprime - (pairing(fz.fprime, fz.f) / az) * fz.f;
}

KernelDerivs e_derivatives(const FrameVector& fz, const FrameVector& fw) {
  const double az = fz.f.squaredNorm();
  const double aw = fw.f.squaredNorm();
  if (!(az > 0.0) || !(aw > 0.0)) throw NumericError("section frame vanished at a point");

  const cdouble g = pairing(fz.f, fw.f);
  const Eigen::VectorXcd tz = fz.fprime - (pairing(fz.fprime, fz.f) / az) * fz.f;
  const Eigen::VectorXcd tw = fw.fprime - (pairing(fw.fprime, fw.f) / aw) * fw.f;

  KernelDerivs out;
  out.e = std::min(1.0, std::norm(g) / (az * aw));
  const cdouble prefactor = std::conj(g) / (az * aw);
  out.e_z = prefactor * pairing(tz, fw.f);
  out.e_zwbar = prefactor * pairing(tz, tw);
  out.e_zwbar_diag_z = tz.squaredNorm() / az;
  out.e_zwbar_diag_w = tw.squaredNorm() / aw;
  return out;
}

KernelDerivs e_derivatives(const OrthonormalBasis& basis, const ChartPoint& z,
                           const ChartPoint& w) {
  return e_derivatives(frame_vector(basis, z), frame_vector(basis, w));
}

DensityReport density_check(const OrthonormalBasis& basis,
                            const std::vector<ChartPoint>& probes) {
  if (probes.empty()) throw ValidationError("density check needs at least one probe point");
  const Geometry& geom = basis.geometry();
  const double scale =
      std::pow(M_PI, geom.dim()) / std::pow(double(geom.power()), geom.dim());
  DensityReport report;
  report.power = geom.power();
  report.probes = (long long)probes.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const ChartPoint& p : probes) {
    const double ratio = scale * szego_diag(basis, p);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    report.max_deviation = std::max(report.max_deviation, std::abs(ratio - 1.0));
  }
  report.spread = hi - lo;
  return report;
}

GaussianReport gaussian_check(const OrthonormalBasis& basis, const ChartPoint& center,
                              const std::vector<std::pair<cdouble, cdouble>>& offsets,
                              double b, double epsilon) {
  const Geometry& geom = basis.geometry();
  const double n_power = double(geom.power());
  if (geom.power() < 2)
    throw ValidationError("the scaling window is empty below power 2");
  if (!(b > 0.0)) throw ValidationError("window multiplier must be positive");

  GaussianReport report;
  report.power = geom.power();
  report.window = b * std::sqrt(std::log(n_power));
  report.exponent = epsilon;

  const PreferredChart chart = geom.preferred_chart(center);
  const double rescale = 1.0 / std::sqrt(n_power);
  const int m = geom.dim();
  auto lift = [&](cdouble offset) {
    Eigen::VectorXcd zeta = Eigen::VectorXcd::Zero(m);
    zeta(0) = offset * rescale;
    return chart.to_manifold(zeta);
  };

  const double shape_scale = std::pow(n_power, epsilon - 0.5);
  report.pairs.reserve(offsets.size());
  for (const auto& [u, v] : offsets) {
    if (std::abs(u) + std::abs(v) >= report.window)
      throw ValidationError("offset pair leaves the admissible scaling window");
    GaussianPair pair;
    pair.u = u;
    pair.v = v;
    pair.kernel = normalized_kernel(basis, lift(u), lift(v));
    pair.gaussian = std::exp(-0.5 * std::norm(u - v));
    pair.deviation = std::abs(pair.kernel - pair.gaussian);
    report.max_deviation = std::max(report.max_deviation, pair.deviation);
    const double sep2 = std::norm(u - v);
    if (sep2 > 1e-16)
      report.fitted_constant =
          std::max(report.fitted_constant, pair.deviation / (sep2 * shape_scale));
    report.pairs.push_back(pair);
  }
  return report;
}

}  // namespace holex
