#include <doctest.h>

#include <cmath>
#include <vector>

#include "holex/embedding.hpp"
#include "holex/rng.hpp"

#include "oracle.hpp"

using namespace holex;

namespace {

const cdouble kTauI(0.0, 1.0);

}  // namespace

TEST_CASE("projective distance basics") {
  Eigen::VectorXcd a(3);
  a << cdouble(2.0, 0.0), cdouble(0.0, 0.0), cdouble(0.0, 0.0);
  Eigen::VectorXcd b(3);
  b << cdouble(0.0, 0.0), cdouble(0.0, 3.0), cdouble(0.0, 0.0);
  const ProjectivePoint pa = make_projective(a);
  const ProjectivePoint pb = make_projective(b);
  CHECK(pa.h.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fs_distance(pa, pa) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fs_distance(pa, pb) == doctest::Approx(M_PI / 2.0).epsilon(1e-14));
  CHECK(fs_distance(pa, pb) == doctest::Approx(fs_distance(pb, pa)).epsilon(1e-15));

  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(3);
  CHECK_THROWS_AS(make_projective(zero), ValidationError);
}

TEST_CASE("embedded image and its tangent direction") {
  const Geometry line(GeometrySpec::projective(1), 5);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const ChartPoint z = ChartPoint::scalar(0, cdouble(0.35, -0.15));

  const ProjectivePoint image = kodaira_point(basis, z);
  CHECK(image.h.norm() == doctest::Approx(1.0).epsilon(1e-14));

  const ProjectivePoint tangent = tangent_infinity(basis, z);
  CHECK(fs_distance(image, tangent) == doctest::Approx(M_PI / 2.0).epsilon(1e-12));

  // Projecting the image away from its own tangent direction fixes it.
  const FrameVector frame = frame_vector(basis, z);
  const ProjectivePoint projected = project_from_tangent(frame, frame.f);
  CHECK(fs_distance(projected, image) < 1e-12);

  const Eigen::VectorXcd t = tangent_infinity_vector(frame);
  const ProjectivePoint away = project_from_tangent(frame, frame.f + t);
  CHECK(std::abs(pairing(away.h, t)) < 1e-12);
  CHECK_THROWS_AS(project_from_tangent(frame, t), NumericError);
}

TEST_CASE("embedded pullback reproduces the kernel distance") {
  // fs distance between images equals arccos P for the two-point kernel.
  const Geometry line(GeometrySpec::projective(1), 6);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  CounterRng rng(3, 0x8001);
  for (int i = 0; i < 10; ++i) {
    const ChartPoint z = line.random_point(rng);
    const ChartPoint w = line.random_point(rng);
    const double p = normalized_kernel(basis, z, w);
    const double d = fs_distance(kodaira_point(basis, z), kodaira_point(basis, w));
    CHECK(std::cos(d) == doctest::Approx(p).epsilon(1e-12));
  }
}

TEST_CASE("both slice routes agree away from degeneracies") {
  for (long long power : {2LL, 6LL}) {
    const Geometry line(GeometrySpec::projective(1), power);
    const OrthonormalBasis basis = make_orthonormal_basis(line);
    CounterRng rng(17, 0x8002);
    int compared = 0;
    int attempts = 0;
    while (compared < 60 && ++attempts < 10000) {
      const ChartPoint z = line.random_point(rng);
      const ChartPoint w = line.random_point(rng);
      if (line.base_distance(z, w) < 1e-3) continue;
      const NormalSliceResult geo = normal_slice_distance(basis, z, w, SliceMode::GeometricPath);
      const NormalSliceResult ker = normal_slice_distance(basis, z, w, SliceMode::KernelPath);
      if (ker.fell_back) continue;
      CHECK(std::abs(geo.sin2 - ker.sin2) < tol::kModeAgreement);
      CHECK(geo.mode == SliceMode::GeometricPath);
      CHECK(ker.mode == SliceMode::KernelPath);
      ++compared;
    }
    CHECK(compared == 60);
  }
}

TEST_CASE("degree-two slice distance is flat near the diagonal") {
  // With the conic embedding the normal slice sits at a constant squared
  // sine of one half, independent of the pair.
  const Geometry line(GeometrySpec::projective(1), 2);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  CounterRng rng(23, 0x8003);
  for (int i = 0; i < 20; ++i) {
    const ChartPoint z = line.random_point(rng);
    const cdouble step(0.12 * rng.next_unit(), 0.12 * rng.next_unit());
    const ChartPoint w = ChartPoint::scalar(z.chart, z.z() + step + 0.01);
    const NormalSliceResult geo = normal_slice_distance(basis, z, w, SliceMode::GeometricPath);
    CHECK(geo.sin2 == doctest::Approx(0.5).epsilon(1e-10));
  }
}

TEST_CASE("slice distance agrees with a direct search over the slice") {
  const Geometry line(GeometrySpec::projective(1), 4);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  CounterRng rng(29, 0x8004);
  for (int i = 0; i < 10; ++i) {
    const ChartPoint z = line.random_point(rng);
    const ChartPoint w = line.random_point(rng);
    if (line.base_distance(z, w) < 0.05) continue;
    const FrameVector fz = frame_vector(basis, z);
    const FrameVector fw = frame_vector(basis, w);
    const NormalSliceResult slice = normal_slice_distance(fz, fw, SliceMode::GeometricPath);
    const double direct = oracle::slice_distance_by_search(
        fw.f, tangent_infinity_vector(fz), tangent_infinity_vector(fw), rng);
    CHECK(std::abs(std::asin(std::sqrt(slice.sin2)) - direct) < tol::kBruteForceBand);
  }
}

TEST_CASE("line restriction carries the chain rule") {
  const Geometry line(GeometrySpec::projective(1), 5);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const ChartPoint center = ChartPoint::scalar(0, cdouble(0.2, 0.1));
  Eigen::VectorXcd dir(1);
  dir(0) = cdouble(0.8, 0.6);
  const LineRestriction restriction = restrict_to_line(basis, center, dir);

  const cdouble t(0.2, -0.05);
  const FrameVector frame = restriction.frame(t);
  const FrameVector direct = frame_vector(basis, restriction.point(t));
  CHECK((frame.f - direct.f).cwiseAbs().maxCoeff() < 1e-12);

  const double h = 1e-5;
  const FrameVector fp = restriction.frame(t + h);
  const FrameVector fm = restriction.frame(t - h);
  for (Eigen::Index j = 0; j < frame.f.size(); ++j) {
    const cdouble fd = (fp.f(j) - fm.f(j)) / (2.0 * h);
    CHECK(std::abs(fd - frame.fprime(j)) < 1e-7 * std::max(1.0, std::abs(frame.fprime(j))));
  }
}

TEST_CASE("critical radius estimation is stable") {
  const Geometry line(GeometrySpec::projective(1), 2);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.18);

  const CriticalRadiusReport report = critical_radius(basis, mesh, 600, 1);
  CHECK(report.power == 2);
  CHECK(report.pair_budget == 600);
  CHECK(report.near_pairs > 0);
  CHECK(report.far_pairs > 0);
  CHECK(report.mesh_edge <= tol::kMeshChartEdgeLimit);
  CHECK(report.r_hat == doctest::Approx(std::min(report.near_min, report.far_min)).epsilon(1e-15));
  CHECK(report.near_min_sin2 == doctest::Approx(0.5).epsilon(1e-9));

  const CriticalRadiusReport reseeded = critical_radius(basis, mesh, 600, 2);
  CHECK(std::abs(report.r_hat - reseeded.r_hat) <= 1e-3);

  const CriticalRadiusReport doubled = critical_radius(basis, mesh, 1200, 1);
  CHECK(std::abs(report.r_hat - doubled.r_hat) <= tol::kRadiusStability * report.r_hat);

  CHECK_THROWS_AS(critical_radius(basis, mesh, 2, 1), ValidationError);
  const TriMesh coarse = build_mesh(line, 0.45);
  CHECK_THROWS_AS(critical_radius(basis, coarse, 600, 1), ValidationError);
}

TEST_CASE("elliptic embedding demands an ample enough power") {
  const Geometry thin(GeometrySpec::elliptic(kTauI, 1), 2);
  const OrthonormalBasis basis = make_orthonormal_basis(thin);
  const TriMesh mesh = build_mesh(thin, 0.15);
  CHECK_THROWS_AS(critical_radius(basis, mesh, 200, 1), ValidationError);

  const Geometry ample(GeometrySpec::elliptic(kTauI, 3), 1);
  const OrthonormalBasis theta = make_orthonormal_basis(ample);
  const TriMesh tmesh = build_mesh(ample, 0.15);
  CHECK_NOTHROW(check_embedding_injectivity(theta, tmesh));
  const CriticalRadiusReport report = critical_radius(theta, tmesh, 400, 5);
  CHECK(report.r_hat > 0.0);
  CHECK(report.near_pairs > 0);
  CHECK(report.far_pairs > 0);
}

TEST_CASE("injectivity probe accepts honest embeddings") {
  const Geometry line(GeometrySpec::projective(1), 4);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.2);
  CHECK_NOTHROW(check_embedding_injectivity(basis, mesh));
}
