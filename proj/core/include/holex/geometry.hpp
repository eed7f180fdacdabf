#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "holex/chern.hpp"
#include "holex/common.hpp"
#include "holex/rng.hpp"

namespace holex {

enum class GeometryKind { ProjectiveSpace, EllipticCurve };

struct GeometrySpec {
  GeometryKind kind = GeometryKind::ProjectiveSpace;
  int m = 1;                        // complex dimension
  int deg_l = 1;                    // polarization degree (1 on projective space)
  cdouble tau = cdouble(0.0, 1.0);  // lattice modulus, elliptic only

  static GeometrySpec projective(int dim);
  static GeometrySpec elliptic(cdouble modulus, int degree);

  void validate() const;
  chern::RingSpec ring() const;
  std::string name() const;
};

struct ChartPoint {
  int chart = 0;
  Eigen::VectorXcd coord;

  ChartPoint() = default;
  ChartPoint(int chart_index, Eigen::VectorXcd c) : chart(chart_index), coord(std::move(c)) {}
  static ChartPoint scalar(int chart_index, cdouble z);
  // One-dimensional accessor.
  cdouble z() const { return coord(0); }
};

class Geometry;

// Coordinates centered at a point in which the power-1 metric is the
// identity at the origin. |zeta| equals the base distance on the flat
// torus and its tangent on projective space.
class PreferredChart {
 public:
  PreferredChart(const Geometry& geom, ChartPoint center);

  const ChartPoint& center() const { return center_; }
  ChartPoint to_manifold(const Eigen::VectorXcd& zeta) const;
  ChartPoint to_manifold_1d(cdouble zeta) const;
  Eigen::VectorXcd from_manifold(const ChartPoint& p) const;
  double coord_radius(const ChartPoint& p) const;

  // Point of t -> to_manifold(t * direction) together with the velocity of
  // its ambient chart coordinates at that t.
  std::pair<ChartPoint, Eigen::VectorXcd> line_jet(const Eigen::VectorXcd& direction,
                                                   cdouble t) const;

 private:
  const Geometry* geom_;
  ChartPoint center_;
  Eigen::MatrixXcd frame_;  // unitary with first column over the center
  double torus_scale_ = 1.0;
};

class Geometry {
 public:
  Geometry(GeometrySpec spec, long long power);

  const GeometrySpec& spec() const { return spec_; }
  long long power() const { return power_; }
  int dim() const { return spec_.m; }
  int chart_count() const;
  long long section_count() const;

  // Potential, curvature and volume density of the power-N structure.
  double potential(const ChartPoint& p) const;
  Eigen::MatrixXcd curvature(const ChartPoint& p) const;
  double volume_density(const ChartPoint& p) const;
  double total_volume() const;

  // Distances in the power-1 metric and its sqrt(N)-rescaling.
  double base_distance(const ChartPoint& a, const ChartPoint& b) const;
  double metric_distance(const ChartPoint& a, const ChartPoint& b) const;

  ChartPoint transition(const ChartPoint& p, int target_chart) const;
  int dominant_chart(const ChartPoint& p) const;
  Eigen::VectorXcd homogeneous(const ChartPoint& p) const;
  ChartPoint from_homogeneous(const Eigen::VectorXcd& h) const;

  // Translate into the fundamental parallelogram; reported shifts satisfy
  // z = reduced + shift_1 + shift_tau * tau.
  ChartPoint reduce_modulo_lattice(cdouble z, long long* shift_1 = nullptr,
                                   long long* shift_tau = nullptr) const;

  PreferredChart preferred_chart(const ChartPoint& center) const;

  // Volume-uniform random point (Gaussian homogeneous vector on projective
  // space, uniform fundamental-domain point on the torus).
  ChartPoint random_point(CounterRng& rng) const;

 private:
  ChartPoint from_homogeneous_chart_checked(const Eigen::VectorXcd& h, int chart) const;

  GeometrySpec spec_;
  long long power_;
};

}  // namespace holex
