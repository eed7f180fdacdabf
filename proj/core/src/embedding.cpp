#include "holex/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace holex {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Very-ampleness gate for embedding work on the torus geometries.
void require_embedding(const Geometry& geom) {
  if (geom.spec().kind == GeometryKind::EllipticCurve &&
      geom.power() * geom.spec().deg_l < 3)
    throw ValidationError(
        "the elliptic embedding needs power times degree at least 3; raise the power");
}

}  // namespace

ProjectivePoint make_projective(Eigen::VectorXcd v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw ValidationError("zero vector has no projective image");
  v /= n;
  return ProjectivePoint{std::move(v)};
}

double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
  if (a.h.size() != b.h.size()) throw ValidationError("projective points of different spaces");
  return std::acos(clamp01(std::abs(pairing(a.h, b.h))));
}

ProjectivePoint kodaira_point(const OrthonormalBasis& basis, const ChartPoint& p) {
  require_embedding(basis.geometry());
  return make_projective(basis.evaluate(p));
}

Eigen::VectorXcd tangent_infinity_vector(const FrameVector& fz) {
  Eigen::VectorXcd t = tangent_vector(fz);
  const double reference = fz.fprime.norm() + fz.f.norm();
  if (t.norm() <= 1e-14 * reference)
    throw NumericError("embedding is not an immersion at the requested point");
  return t;
}

ProjectivePoint tangent_infinity(const OrthonormalBasis& basis, const ChartPoint& p) {
  require_embedding(basis.geometry());
  return make_projective(tangent_infinity_vector(frame_vector(basis, p)));
}

ProjectivePoint project_from_tangent(const FrameVector& fz, const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd t = tangent_infinity_vector(fz);
  const Eigen::VectorXcd out = v - (pairing(v, t) / t.squaredNorm()) * t;
  if (out.norm() <= 1e-12 * v.norm())
    throw NumericError("projection from the tangent direction collapses this vector");
  return make_projective(out);
}

ProjectivePoint project_from_tangent(const OrthonormalBasis& basis, const ChartPoint& z,
                                     const Eigen::VectorXcd& v) {
  return project_from_tangent(frame_vector(basis, z), v);
}

namespace {

NormalSliceResult geometric_route(const FrameVector& fz, const FrameVector& fw,
                                  bool fell_back) {
  const Eigen::VectorXcd tz = tangent_infinity_vector(fz);
  const Eigen::VectorXcd tw = tangent_infinity_vector(fw);
  const Eigen::VectorXcd o = tz - (pairing(tz, tw) / tw.squaredNorm()) * tw;
  const double o2 = o.squaredNorm();
  if (o2 <= 1e-30 * tz.squaredNorm())
    throw NumericError("tangent directions coincide; the slice intersection degenerates");
  NormalSliceResult out;
  out.mode = SliceMode::GeometricPath;
  out.fell_back = fell_back;
  out.sin2 = clamp01(std::norm(pairing(fw.f, o)) / (fw.f.squaredNorm() * o2));
  return out;
}

}  // namespace

NormalSliceResult normal_slice_distance(const FrameVector& fz, const FrameVector& fw,
                                        SliceMode mode) {
  if (mode == SliceMode::GeometricPath) return geometric_route(fz, fw, false);

  const KernelDerivs kd = e_derivatives(fz, fw);
  if (kd.e < tol::kKernelUnderflowFloor) return geometric_route(fz, fw, true);
  const double bracket =
      1.0 - std::norm(kd.e_zwbar) / (kd.e_zwbar_diag_z * kd.e_zwbar_diag_w * kd.e);
  if (bracket < tol::kDenominatorFloor) return geometric_route(fz, fw, true);

  NormalSliceResult out;
  out.mode = SliceMode::KernelPath;
  out.sin2 = clamp01(std::norm(kd.e_z) / (kd.e * kd.e_zwbar_diag_z * bracket));
  return out;
}

NormalSliceResult normal_slice_distance(const OrthonormalBasis& basis, const ChartPoint& z,
                                        const ChartPoint& w, SliceMode mode) {
  require_embedding(basis.geometry());
  if (basis.geometry().base_distance(z, w) < tol::kNearDiagonalFloor)
    throw ValidationError(
        "points are separated below the near-diagonal floor; use the diagonal identities");
  return normal_slice_distance(frame_vector(basis, z), frame_vector(basis, w), mode);
}

LineRestriction::LineRestriction(const OrthonormalBasis& basis, PreferredChart chart,
                                 Eigen::VectorXcd direction)
    : basis_(&basis), chart_(std::move(chart)), direction_(std::move(direction)) {
  if (direction_.size() != basis.geometry().dim())
    throw ValidationError("line direction has wrong size");
  const double n = direction_.norm();
  if (!(n > 0.0)) throw ValidationError("line direction must be nonzero");
  direction_ /= n;
}

ChartPoint LineRestriction::point(cdouble t) const {
  return chart_.line_jet(direction_, t).first;
}

FrameVector LineRestriction::frame(cdouble t) const {
  const auto [p, velocity] = chart_.line_jet(direction_, t);
  FrameVector out;
  Eigen::MatrixXcd gradient;
  basis_->evaluate_with_gradient(p, &out.f, &gradient);
  out.fprime = gradient.transpose() * velocity;
  if (!(out.f.squaredNorm() > 0.0)) throw NumericError("section frame vanished at a point");
  return out;
}

LineRestriction restrict_to_line(const OrthonormalBasis& basis, const ChartPoint& z,
                                 const Eigen::VectorXcd& direction) {
  require_embedding(basis.geometry());
  return LineRestriction(basis, basis.geometry().preferred_chart(z), direction);
}

CriticalRadiusReport critical_radius(const OrthonormalBasis& basis, const TriMesh& mesh,
                                     long long pair_budget, std::uint64_t seed) {
  const Geometry& geom = basis.geometry();
  require_embedding(geom);
  if (geom.dim() != 1) throw ValidationError("radius estimation runs on curve geometries");
  if (pair_budget < 4) throw ValidationError("pair budget must be at least 4");
  const std::size_t count = mesh.vertices.size();
  if (count < 16) throw ValidationError("mesh is too small for radius estimation");

  CriticalRadiusReport report;
  report.power = geom.power();
  report.pair_budget = pair_budget;
  report.mesh_edge = mesh.max_edge_length(geom);
  if (report.mesh_edge > tol::kMeshChartEdgeLimit)
    throw ValidationError("mesh is too coarse for radius estimation; refine the edge length");

  // Unit frame per vertex for far-pair image distances; chart frames built
  // on demand for near pairs.
  const long long sections = basis.count();
  Eigen::MatrixXcd images(count, sections);
  for (std::size_t v = 0; v < count; ++v) {
    Eigen::VectorXcd value = basis.evaluate(mesh.vertices[v]);
    const double n = value.norm();
    if (!(n > 0.0)) throw NumericError("section frame vanished at a mesh vertex");
    images.row(v) = value.transpose() / n;
  }
  std::vector<std::optional<FrameVector>> frames(count);
  auto frame_at = [&](std::size_t v) -> const FrameVector& {
    if (!frames[v]) frames[v] = frame_vector(basis, mesh.vertices[v]);
    return *frames[v];
  };

  const double threshold = 1.0 / std::sqrt(2.0 * double(geom.power()));
  double r_hat = std::numeric_limits<double>::infinity();
  double near_min = std::numeric_limits<double>::infinity();
  double far_min = std::numeric_limits<double>::infinity();
  double near_min_sin2 = std::numeric_limits<double>::infinity();

  CounterRng rng(seed, 0x11);
  long long used = 0;

  auto far_value = [&](std::size_t a, std::size_t b) {
    const cdouble overlap = (images.row(a) * images.row(b).adjoint())(0, 0);
    return 0.5 * std::acos(clamp01(std::abs(overlap)));
  };
  auto near_value = [&](std::size_t a, std::size_t b) {
    const FrameVector& fa = frame_at(a);
    const FrameVector& fb = frame_at(b);
    double worst = std::numeric_limits<double>::infinity();
    for (int orientation = 0; orientation < 2; ++orientation) {
      const NormalSliceResult slice = orientation == 0
                                          ? normal_slice_distance(fa, fb, SliceMode::KernelPath)
                                          : normal_slice_distance(fb, fa, SliceMode::KernelPath);
      if (slice.fell_back) ++report.kernel_fallbacks;
      near_min_sin2 = std::min(near_min_sin2, slice.sin2);
      worst = std::min(worst, std::asin(std::sqrt(clamp01(slice.sin2))));
    }
    return worst;
  };

  std::vector<std::size_t> near_candidates;
  std::vector<std::size_t> far_candidates;
  while (used < pair_budget) {
    const std::size_t center = std::size_t(rng.next_u64() % count);
    const PreferredChart chart = geom.preferred_chart(mesh.vertices[center]);

    near_candidates.clear();
    far_candidates.clear();
    std::size_t widest_near = count;  // largest separation below the threshold
    std::size_t closest_far = count;  // smallest separation above it
    double widest_radius = -1.0;
    double closest_radius = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < count; ++v) {
      if (v == center) continue;
      const double radius = chart.coord_radius(mesh.vertices[v]);
      if (radius < tol::kNearDiagonalFloor) continue;
      if (radius < threshold) {
        near_candidates.push_back(v);
        if (radius > widest_radius) {
          widest_radius = radius;
          widest_near = v;
        }
      } else {
        far_candidates.push_back(v);
        if (radius < closest_radius) {
          closest_radius = radius;
          closest_far = v;
        }
      }
    }

    auto take_near = [&](std::size_t partner) {
      if (used >= pair_budget) return;
      const double value = near_value(center, partner);
      near_min = std::min(near_min, value);
      r_hat = std::min(r_hat, value);
      ++report.near_pairs;
      ++used;
    };
    auto take_far = [&](std::size_t partner) {
      if (used >= pair_budget) return;
      const double value = far_value(center, partner);
      far_min = std::min(far_min, value);
      r_hat = std::min(r_hat, value);
      ++report.far_pairs;
      ++used;
    };

    const long long before = used;
    if (widest_near != count) take_near(widest_near);
    if (closest_far != count) take_far(closest_far);
    if (!near_candidates.empty())
      take_near(near_candidates[std::size_t(rng.next_u64() % near_candidates.size())]);
    if (!far_candidates.empty())
      take_far(far_candidates[std::size_t(rng.next_u64() % far_candidates.size())]);
    if (used == before)
      throw NumericError("pair sampling found no admissible partners; refine the mesh");
  }

  if (report.near_pairs == 0 || report.far_pairs == 0)
    throw NumericError("pair sampling failed to populate both separation regimes");
  report.r_hat = r_hat;
  report.near_min = near_min;
  report.far_min = far_min;
  report.near_min_sin2 = near_min_sin2;
  return report;
}

void check_embedding_injectivity(const OrthonormalBasis& basis, const TriMesh& mesh,
                                 double min_separation) {
  const Geometry& geom = basis.geometry();
  require_embedding(geom);
  const std::size_t count = mesh.vertices.size();
  const long long sections = basis.count();
  Eigen::MatrixXcd images(count, sections);
  for (std::size_t v = 0; v < count; ++v) {
    Eigen::VectorXcd value = basis.evaluate(mesh.vertices[v]);
    const double n = value.norm();
    if (!(n > 0.0)) throw NumericError("section frame vanished at a mesh vertex");
    images.row(v) = value.transpose() / n;
  }

  // Overlaps very close to 1 are re-measured through the orthogonal
  // complement, which stays accurate where acos does not.
  const double suspicious = 1.0 - 1e-8;
  for (std::size_t a = 0; a < count; ++a) {
    const Eigen::VectorXcd ra = images.row(a).transpose();
    for (std::size_t b = a + 1; b < count; ++b) {
      const Eigen::VectorXcd rb = images.row(b).transpose();
      const double overlap = std::abs(pairing(ra, rb));
      if (overlap < suspicious) continue;
      const double sine = (rb - ra * ra.dot(rb)).norm();
      if (sine < min_separation)
        throw NumericError(
            "two mesh vertices map to nearly the same projective point; "
            "increase the power for an injective embedding");
    }
  }
}

}  // namespace holex
