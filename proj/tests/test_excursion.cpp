#include <doctest.h>

#include <cmath>

#include "holex/embedding.hpp"
#include "holex/excursion.hpp"

using namespace holex;

namespace {

const cdouble kTauI(0.0, 1.0);

}  // namespace

TEST_CASE("coefficient samples are unit and reproducible") {
  const CoefficientVector a = sample_coefficients(42, 7, 9);
  const CoefficientVector b = sample_coefficients(42, 7, 9);
  CHECK(a.c.size() == 9);
  CHECK(a.c.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((a.c - b.c).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.seed == 42);
  CHECK(a.sample_index == 7);
  CHECK(a.retry == 0);

  const CoefficientVector other_index = sample_coefficients(42, 8, 9);
  CHECK((a.c - other_index.c).cwiseAbs().maxCoeff() > 1e-3);
  const CoefficientVector other_retry = sample_coefficients(42, 7, 9, 1);
  CHECK((a.c - other_retry.c).cwiseAbs().maxCoeff() > 1e-3);
  CHECK(other_retry.retry == 1);
}

TEST_CASE("field routes agree and match the embedded distance") {
  const Geometry line(GeometrySpec::projective(1), 4);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.2);
  const MeshFieldEvaluator eval(basis, mesh);

  for (int s = 0; s < 5; ++s) {
    const CoefficientVector coeff = sample_coefficients(11, s, basis.count());
    const Eigen::VectorXd direct = eval.field(coeff.c);
    const Eigen::VectorXd metric = eval.field_metric_route(coeff.c);
    CHECK((direct - metric).cwiseAbs().maxCoeff() < tol::kFieldIdentity);

    const ProjectivePoint dual = make_projective(coeff.c.conjugate());
    for (std::size_t v = 0; v < mesh.vertices.size(); v += 37) {
      const double d = fs_distance(dual, kodaira_point(basis, mesh.vertices[v]));
      CHECK(std::abs(direct(Eigen::Index(v)) - std::cos(d)) < tol::kFieldIdentity);
      CHECK(direct(Eigen::Index(v)) >= 0.0);
      CHECK(direct(Eigen::Index(v)) <= 1.0);
    }
    CHECK(eval.field_at(coeff.c, mesh.vertices[3]) ==
          doctest::Approx(direct(3)).epsilon(1e-13));
  }
}

TEST_CASE("superlevel topology of synthetic fields") {
  const Geometry line(GeometrySpec::projective(1), 1);
  const TriMesh sphere = build_mesh(line, 0.1);
  const Eigen::Index n = Eigen::Index(sphere.vertices.size());

  // Whole sphere.
  Eigen::VectorXd values = Eigen::VectorXd::Ones(n);
  LevelSetTopology full = superlevel_topology(sphere, values, 0.5);
  CHECK(full.euler == 2);
  CHECK(full.components == 1);
  CHECK(full.kept_vertices == n);
  CHECK(!full.degenerate);

  // Empty set.
  values.setZero();
  const LevelSetTopology empty = superlevel_topology(sphere, values, 0.5);
  CHECK(empty.euler == 0);
  CHECK(empty.components == 0);
  CHECK(empty.kept_vertices == 0);

  // Single vertex.
  values.setZero();
  values(5) = 1.0;
  const LevelSetTopology point = superlevel_topology(sphere, values, 0.5);
  CHECK(point.euler == 1);
  CHECK(point.components == 1);

  // Two antipodal caps.
  const ChartPoint north = ChartPoint::scalar(0, cdouble(0.0, 0.0));
  const ChartPoint south = ChartPoint::scalar(1, cdouble(0.0, 0.0));
  for (Eigen::Index v = 0; v < n; ++v) {
    const double dn = line.base_distance(sphere.vertices[std::size_t(v)], north);
    const double ds = line.base_distance(sphere.vertices[std::size_t(v)], south);
    values(v) = (dn < 0.4 || ds < 0.4) ? 1.0 : 0.0;
  }
  const LevelSetTopology caps = superlevel_topology(sphere, values, 0.5);
  CHECK(caps.euler == 2);
  CHECK(caps.components == 2);

  // Equatorial band.
  for (Eigen::Index v = 0; v < n; ++v) {
    const double dn = line.base_distance(sphere.vertices[std::size_t(v)], north);
    values(v) = (dn > M_PI / 4.0 - 0.35 && dn < M_PI / 4.0 + 0.35) ? 1.0 : 0.0;
  }
  const LevelSetTopology band = superlevel_topology(sphere, values, 0.5);
  CHECK(band.euler == 0);
  CHECK(band.components == 1);

  // Threshold collision flags degeneracy.
  values.setConstant(0.3);
  values(0) = 0.5;
  const LevelSetTopology flagged = superlevel_topology(sphere, values, 0.5);
  CHECK(flagged.degenerate);

  CHECK(superlevel_euler(sphere, values, 0.2) == 2);
  CHECK(component_count(sphere, values, 0.2) == 1);
}

TEST_CASE("torus superlevel topology") {
  const Geometry torus(GeometrySpec::elliptic(kTauI, 1), 1);
  const TriMesh mesh = build_mesh(torus, 0.12);
  const Eigen::Index n = Eigen::Index(mesh.vertices.size());

  Eigen::VectorXd values = Eigen::VectorXd::Ones(n);
  const LevelSetTopology full = superlevel_topology(mesh, values, 0.5);
  CHECK(full.euler == 0);
  CHECK(full.components == 1);

  // A noncontractible ring around one period: alpha coordinate in a band.
  for (Eigen::Index v = 0; v < n; ++v) {
    const cdouble z = mesh.vertices[std::size_t(v)].z();
    const double alpha = z.real();
    values(v) = (alpha > 0.2 && alpha < 0.55) ? 1.0 : 0.0;
  }
  const LevelSetTopology ring = superlevel_topology(mesh, values, 0.5);
  CHECK(ring.euler == 0);
  CHECK(ring.components == 1);
}

TEST_CASE("sup refinement clears every vertex value") {
  const Geometry line(GeometrySpec::projective(1), 3);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.25);
  const MeshFieldEvaluator eval(basis, mesh);

  for (int s = 0; s < 4; ++s) {
    const CoefficientVector coeff = sample_coefficients(5, s, basis.count());
    const Eigen::VectorXd field = eval.field(coeff.c);
    const double sup = sup_refine(eval, coeff.c, field);
    CHECK(sup >= field.maxCoeff());
    CHECK(sup <= 1.0 + 1e-12);
  }
}

TEST_CASE("degree-one field attains exact supremum one") {
  // The degree-one embedding of the line is the identity, so the field is
  // the cosine of a distance to a fixed point and its supremum is one.
  const Geometry line(GeometrySpec::projective(1), 1);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.2);
  for (int s = 0; s < 6; ++s) {
    const CoefficientVector coeff = sample_coefficients(77, s, basis.count());
    const double sup = sup_refine(basis, mesh, coeff.c);
    CHECK(sup == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("monte carlo runs are identical for any worker count") {
  const Geometry line(GeometrySpec::projective(1), 2);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.15);
  const MeshFieldEvaluator eval(basis, mesh);

  MCConfig config;
  config.threshold = 0.8;
  config.samples = 200;
  config.seed = 9;

  config.workers = 1;
  const MCReport one = mc_run(eval, config);
  config.workers = 3;
  const MCReport three = mc_run(eval, config);
  config.workers = 8;
  const MCReport eight = mc_run(eval, config);

  REQUIRE(one.records.size() == 200);
  REQUIRE(three.records.size() == 200);
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].index == three.records[i].index);
    CHECK(one.records[i].sup == three.records[i].sup);
    CHECK(one.records[i].euler == three.records[i].euler);
    CHECK(one.records[i].components == three.records[i].components);
    CHECK(one.records[i].sup == eight.records[i].sup);
    CHECK(one.records[i].euler == eight.records[i].euler);
  }
  CHECK(one.mean_euler == three.mean_euler);
  CHECK(one.stderr_euler == three.stderr_euler);
  CHECK(one.prob_nonempty == eight.prob_nonempty);

  long long nonempty = 0;
  for (const auto& [size, count] : one.component_histogram) {
    CHECK(size >= 1);
    nonempty += count;
  }
  CHECK(nonempty == std::llround(one.prob_nonempty * double(config.samples)));
}

TEST_CASE("degree-one monte carlo reproduces the deterministic topology") {
  const Geometry line(GeometrySpec::projective(1), 1);
  const OrthonormalBasis basis = make_orthonormal_basis(line);
  const TriMesh mesh = build_mesh(line, 0.15);
  const MeshFieldEvaluator eval(basis, mesh);

  MCConfig config;
  config.threshold = 0.9;
  config.samples = 100;
  config.seed = 31;
  config.workers = 2;
  const MCReport report = mc_run(eval, config);
  CHECK(report.mean_euler == 1.0);
  CHECK(report.prob_nonempty == 1.0);
  CHECK(report.stderr_euler == 0.0);
  for (const auto& record : report.records) {
    CHECK(record.euler == 1);
    CHECK(record.components == 1);
    CHECK(!record.empty);
  }

  // A threshold just under the supremum leaves caps the mesh cannot see;
  // the refined supremum promotes them to single contractible pieces.
  config.threshold = 0.9999;
  const MCReport promoted = mc_run(eval, config);
  CHECK(promoted.mean_euler == 1.0);
  CHECK(promoted.prob_nonempty == 1.0);
  CHECK(promoted.cap_promotions > config.samples / 2);
}

TEST_CASE("a cap split across a cell diagonal is certified back into one piece") {
  const Geometry torus(GeometrySpec::elliptic(kTauI, 3), 1);
  const OrthonormalBasis basis = make_orthonormal_basis(torus);
  const TriMesh mesh = build_mesh(torus, 0.10);
  const MeshFieldEvaluator eval(basis, mesh);

  // These draws clear u = 0.99 at exactly two opposite corners of one grid
  // cell whose triangulated diagonal runs the other way, so the raw vertex
  // subcomplex splits a single contractible cap in two.
  for (const long long index : {58481LL, 114984LL}) {
    const CoefficientVector coeff = sample_coefficients(424243, index, basis.count());
    const Eigen::VectorXd field = eval.field(coeff.c);

    const LevelSetTopology raw = superlevel_topology(mesh, field, 0.99, 0.0);
    REQUIRE(raw.kept_vertices == 2);
    REQUIRE(raw.components == 2);
    REQUIRE(raw.euler == 2);

    const LevelSetTopology refined =
        refined_superlevel_topology(eval, coeff.c, field, 0.99, 0.0);
    CHECK(refined.components == 1);
    CHECK(refined.euler == 1);
    CHECK(refined.bridges == 1);
  }
}

TEST_CASE("separate sheets are never bridged") {
  const Geometry torus(GeometrySpec::elliptic(kTauI, 3), 1);
  const OrthonormalBasis basis = make_orthonormal_basis(torus);
  const TriMesh mesh = build_mesh(torus, 0.10);
  const MeshFieldEvaluator eval(basis, mesh);

  // Center the field on the midpoint between two embedded points that are
  // far along the curve: both caps open at the same threshold and stay
  // genuinely disconnected until the threshold drops to their saddle.
  const ChartPoint za = ChartPoint::scalar(0, cdouble(0.10, 0.20));
  const ChartPoint zb = ChartPoint::scalar(0, cdouble(0.60, 0.70));
  const ProjectivePoint pa = kodaira_point(basis, za);
  const ProjectivePoint pb = kodaira_point(basis, zb);
  const double d = fs_distance(pa, pb);
  REQUIRE(d > 1.0);

  const cdouble inner = (pa.h.adjoint() * pb.h)(0, 0);
  Eigen::VectorXcd aligned = pb.h * (std::abs(inner) / inner);
  Eigen::VectorXcd perp = aligned - pa.h * std::abs(inner);
  perp.normalize();
  const ProjectivePoint mid =
      make_projective(std::cos(0.5 * d) * pa.h + std::sin(0.5 * d) * perp);
  REQUIRE(fs_distance(mid, pa) == doctest::Approx(0.5 * d).epsilon(1e-10));

  Eigen::VectorXcd coeff = mid.h.conjugate();
  coeff.normalize();
  const Eigen::VectorXd field = eval.field(coeff);

  for (const double extra : {0.04, 0.08}) {
    const double u = std::cos(0.5 * d + extra);
    const LevelSetTopology raw = superlevel_topology(mesh, field, u, 0.0);
    REQUIRE(raw.components == 2);
    const LevelSetTopology refined = refined_superlevel_topology(eval, coeff, field, u, 0.0);
    CHECK(refined.components == 2);
    CHECK(refined.euler == 2);
    CHECK(refined.bridges == 0);
  }

  // Past the saddle the pieces join on their own; with a single component
  // the repair leaves even nontrivial topology alone.
  const double u_joined = std::cos(0.5 * d + 0.12);
  const LevelSetTopology ring = refined_superlevel_topology(eval, coeff, field, u_joined, 0.0);
  CHECK(ring.components == 1);
  CHECK(ring.euler == 0);
  CHECK(ring.bridges == 0);
}
