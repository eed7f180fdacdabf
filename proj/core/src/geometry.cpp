#include "holex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace holex {

GeometrySpec GeometrySpec::projective(int dim) {
  GeometrySpec spec;
  spec.kind = GeometryKind::ProjectiveSpace;
  spec.m = dim;
  spec.deg_l = 1;
  spec.validate();
  return spec;
}

GeometrySpec GeometrySpec::elliptic(cdouble modulus, int degree) {
  GeometrySpec spec;
  spec.kind = GeometryKind::EllipticCurve;
  spec.m = 1;
  spec.deg_l = degree;
  spec.tau = modulus;
  spec.validate();
  return spec;
}

void GeometrySpec::validate() const {
  if (m < 1) throw ValidationError("complex dimension must be at least 1");
  switch (kind) {
    case GeometryKind::ProjectiveSpace:
      if (deg_l != 1) throw ValidationError("projective space uses the hyperplane class");
      break;
    case GeometryKind::EllipticCurve:
      if (m != 1) throw ValidationError("elliptic geometry is one-dimensional");
      if (deg_l < 1) throw ValidationError("polarization degree must be positive");
      if (tau.imag() <= 0.0) throw ValidationError("lattice modulus needs positive imaginary part");
      break;
  }
}

chern::RingSpec GeometrySpec::ring() const {
  if (kind == GeometryKind::ProjectiveSpace) return chern::RingSpec::proj_space(m);
  return chern::RingSpec::curve(1, deg_l);
}

std::string GeometrySpec::name() const {
  if (kind == GeometryKind::ProjectiveSpace) return "cp" + std::to_string(m);
  return "elliptic";
}

ChartPoint ChartPoint::scalar(int chart_index, cdouble z) {
  Eigen::VectorXcd c(1);
  c(0) = z;
  return ChartPoint(chart_index, std::move(c));
}

Geometry::Geometry(GeometrySpec spec, long long power) : spec_(std::move(spec)), power_(power) {
  spec_.validate();
  if (power_ < 1) throw ValidationError("power must be at least 1");
}

int Geometry::chart_count() const {
  return spec_.kind == GeometryKind::ProjectiveSpace ? spec_.m + 1 : 1;
}

long long Geometry::section_count() const { return h0_dimension(spec_.ring(), power_); }

double Geometry::potential(const ChartPoint& p) const {
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    return double(power_) * std::log1p(p.coord.squaredNorm());
  }
  const double y = p.z().imag();
  return 2.0 * M_PI * double(power_) * spec_.deg_l * y * y / spec_.tau.imag();
}

Eigen::MatrixXcd Geometry::curvature(const ChartPoint& p) const {
  const int m = spec_.m;
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    const double rho = 1.0 + p.coord.squaredNorm();
    Eigen::MatrixXcd form(m, m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        const cdouble off = -p.coord(k) * std::conj(p.coord(j));
        form(j, k) = (off + (j == k ? cdouble(rho) : cdouble(0.0))) * (double(power_) / (rho * rho));
      }
    return form;
  }
  Eigen::MatrixXcd form(1, 1);
  form(0, 0) = M_PI * double(power_) * spec_.deg_l / spec_.tau.imag();
  return form;
}

double Geometry::volume_density(const ChartPoint& p) const {
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    const double rho = 1.0 + p.coord.squaredNorm();
    return std::pow(double(power_), spec_.m) * std::pow(rho, -(spec_.m + 1));
  }
  return M_PI * double(power_) * spec_.deg_l / spec_.tau.imag();
}

double Geometry::total_volume() const {
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    double vol = 1.0;
    for (int j = 1; j <= spec_.m; ++j) vol *= M_PI * double(power_) / j;
    return vol;
  }
  return M_PI * double(power_) * spec_.deg_l;
}

double Geometry::base_distance(const ChartPoint& a, const ChartPoint& b) const {
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    const Eigen::VectorXcd ha = homogeneous(a);
    const Eigen::VectorXcd hb = homogeneous(b);
    const double cosine = std::abs(ha.dot(hb)) / (ha.norm() * hb.norm());
    return std::acos(std::clamp(cosine, 0.0, 1.0));
  }
  const cdouble delta = a.z() - b.z();
  long long n1 = 0;
  long long n2 = 0;
  const ChartPoint reduced = reduce_modulo_lattice(delta, &n1, &n2);
  double best = std::numeric_limits<double>::infinity();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      best = std::min(best, std::abs(reduced.z() - cdouble(i) - cdouble(j) * spec_.tau));
  return std::sqrt(M_PI * spec_.deg_l / spec_.tau.imag()) * best;
}

double Geometry::metric_distance(const ChartPoint& a, const ChartPoint& b) const {
  return std::sqrt(double(power_)) * base_distance(a, b);
}

ChartPoint Geometry::transition(const ChartPoint& p, int target_chart) const {
  if (target_chart < 0 || target_chart >= chart_count())
    throw ValidationError("chart index out of range");
  if (spec_.kind == GeometryKind::EllipticCurve) return reduce_modulo_lattice(p.z());
  if (p.chart == target_chart) return p;
  return from_homogeneous_chart_checked(homogeneous(p), target_chart);
}

ChartPoint Geometry::from_homogeneous_chart_checked(const Eigen::VectorXcd& h, int chart) const {
  if (std::abs(h(chart)) == 0.0)
    throw NumericError("point lies at infinity in the requested chart");
  const int m = spec_.m;
  Eigen::VectorXcd coord(m);
  int slot = 0;
  for (int j = 0; j <= m; ++j) {
    if (j == chart) continue;
    coord(slot++) = h(j) / h(chart);
  }
  return ChartPoint(chart, std::move(coord));
}

int Geometry::dominant_chart(const ChartPoint& p) const {
  if (spec_.kind == GeometryKind::EllipticCurve) return 0;
  const Eigen::VectorXcd h = homogeneous(p);
  int best = 0;
  for (int j = 1; j <= spec_.m; ++j)
    if (std::abs(h(j)) > std::abs(h(best))) best = j;
  return best;
}

Eigen::VectorXcd Geometry::homogeneous(const ChartPoint& p) const {
  if (spec_.kind != GeometryKind::ProjectiveSpace)
    throw ValidationError("homogeneous coordinates exist on projective space only");
  const int m = spec_.m;
  if (p.chart < 0 || p.chart > m) throw ValidationError("chart index out of range");
  if (p.coord.size() != m) throw ValidationError("coordinate size does not match the dimension");
  Eigen::VectorXcd h(m + 1);
  int slot = 0;
  for (int j = 0; j <= m; ++j) {
    if (j == p.chart) {
      h(j) = 1.0;
    } else {
      h(j) = p.coord(slot++);
    }
  }
  return h;
}

ChartPoint Geometry::from_homogeneous(const Eigen::VectorXcd& h) const {
  if (spec_.kind != GeometryKind::ProjectiveSpace)
    throw ValidationError("homogeneous coordinates exist on projective space only");
  if (h.size() != spec_.m + 1) throw ValidationError("homogeneous vector has wrong size");
  int best = 0;
  for (int j = 1; j <= spec_.m; ++j)
    if (std::abs(h(j)) > std::abs(h(best))) best = j;
  if (std::abs(h(best)) == 0.0) throw ValidationError("zero vector has no projective image");
  return from_homogeneous_chart_checked(h, best);
}

ChartPoint Geometry::reduce_modulo_lattice(cdouble z, long long* shift_1,
                                           long long* shift_tau) const {
  if (spec_.kind != GeometryKind::EllipticCurve)
    throw ValidationError("lattice reduction applies to the elliptic geometry only");
  const double y = z.imag() / spec_.tau.imag();
  const double x = z.real() - y * spec_.tau.real();
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const cdouble reduced = cdouble(x - fx, 0.0) + cdouble(y - fy, 0.0) * spec_.tau;
  if (shift_1) *shift_1 = static_cast<long long>(fx);
  if (shift_tau) *shift_tau = static_cast<long long>(fy);
  return ChartPoint::scalar(0, reduced);
}

PreferredChart Geometry::preferred_chart(const ChartPoint& center) const {
  return PreferredChart(*this, center);
}

ChartPoint Geometry::random_point(CounterRng& rng) const {
  if (spec_.kind == GeometryKind::ProjectiveSpace) {
    Eigen::VectorXcd h(spec_.m + 1);
    for (int j = 0; j <= spec_.m; ++j) h(j) = rng.next_complex_normal();
    return from_homogeneous(h);
  }
  const double u1 = rng.next_unit();
  const double u2 = rng.next_unit();
  return ChartPoint::scalar(0, cdouble(u1, 0.0) + cdouble(u2, 0.0) * spec_.tau);
}

PreferredChart::PreferredChart(const Geometry& geom, ChartPoint center)
    : geom_(&geom), center_(std::move(center)) {
  const GeometrySpec& spec = geom.spec();
  if (spec.kind == GeometryKind::ProjectiveSpace) {
    Eigen::VectorXcd v = geom.homogeneous(center_);
    v.normalize();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
    frame_ = qr.householderQ();
    // householderQ yields the first column up to a phase; repair it so the
    // chart is exactly centered.
    const cdouble phase = frame_.col(0).dot(v);
    frame_.col(0) *= phase;
  } else {
    torus_scale_ = std::sqrt(M_PI * spec.deg_l / spec.tau.imag());
  }
}

ChartPoint PreferredChart::to_manifold(const Eigen::VectorXcd& zeta) const {
  const GeometrySpec& spec = geom_->spec();
  if (spec.kind == GeometryKind::ProjectiveSpace) {
    if (zeta.size() != spec.m) throw ValidationError("chart vector has wrong size");
    Eigen::VectorXcd lifted(spec.m + 1);
    lifted(0) = 1.0;
    lifted.tail(spec.m) = zeta;
    return geom_->from_homogeneous(frame_ * lifted);
  }
  if (zeta.size() != 1) throw ValidationError("chart vector has wrong size");
  return geom_->reduce_modulo_lattice(center_.z() + zeta(0) / torus_scale_);
}

ChartPoint PreferredChart::to_manifold_1d(cdouble zeta) const {
  Eigen::VectorXcd v(1);
  v(0) = zeta;
  if (geom_->spec().kind == GeometryKind::ProjectiveSpace && geom_->dim() != 1)
    throw ValidationError("scalar chart access requires a one-dimensional geometry");
  return to_manifold(v);
}

Eigen::VectorXcd PreferredChart::from_manifold(const ChartPoint& p) const {
  const GeometrySpec& spec = geom_->spec();
  if (spec.kind == GeometryKind::ProjectiveSpace) {
    const Eigen::VectorXcd w = frame_.adjoint() * geom_->homogeneous(p);
    if (std::abs(w(0)) <= 1e-14 * w.norm())
      throw NumericError("point is too close to the cut locus of the chart center");
    return w.tail(spec.m) / w(0);
  }
  const cdouble delta = p.z() - center_.z();
  const ChartPoint reduced = geom_->reduce_modulo_lattice(delta);
  cdouble best = reduced.z();
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      const cdouble candidate = reduced.z() - cdouble(i) - cdouble(j) * spec.tau;
      if (std::abs(candidate) < std::abs(best)) best = candidate;
    }
  Eigen::VectorXcd zeta(1);
  zeta(0) = torus_scale_ * best;
  return zeta;
}

std::pair<ChartPoint, Eigen::VectorXcd> PreferredChart::line_jet(const Eigen::VectorXcd& direction,
                                                                 cdouble t) const {
  const GeometrySpec& spec = geom_->spec();
  const int m = geom_->dim();
  if (direction.size() != m) throw ValidationError("direction vector has wrong size");
  if (spec.kind == GeometryKind::EllipticCurve) {
    const ChartPoint p = to_manifold(t * direction);
    Eigen::VectorXcd velocity(1);
    velocity(0) = direction(0) / torus_scale_;
    return {p, std::move(velocity)};
  }
  Eigen::VectorXcd lifted(m + 1);
  lifted(0) = 1.0;
  lifted.tail(m) = t * direction;
  Eigen::VectorXcd lifted_dot(m + 1);
  lifted_dot(0) = 0.0;
  lifted_dot.tail(m) = direction;
  const Eigen::VectorXcd h = frame_ * lifted;
  const Eigen::VectorXcd h_dot = frame_ * lifted_dot;
  const ChartPoint p = geom_->from_homogeneous(h);
  const int chart = p.chart;
  Eigen::VectorXcd velocity(m);
  int slot = 0;
  for (int j = 0; j <= m; ++j) {
    if (j == chart) continue;
    velocity(slot++) = (h_dot(j) * h(chart) - h(j) * h_dot(chart)) / (h(chart) * h(chart));
  }
  return {p, std::move(velocity)};
}

double PreferredChart::coord_radius(const ChartPoint& p) const {
  const GeometrySpec& spec = geom_->spec();
  if (spec.kind == GeometryKind::ProjectiveSpace) {
    const Eigen::VectorXcd w = frame_.adjoint() * geom_->homogeneous(p);
    const double head = std::abs(w(0));
    const double tail = w.tail(spec.m).norm();
    if (head == 0.0) return std::numeric_limits<double>::infinity();
    return tail / head;
  }
  return from_manifold(p).norm();
}

}  // namespace holex
