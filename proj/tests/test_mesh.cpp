#include <doctest.h>

#include <algorithm>
#include <map>

#include "holex/mesh.hpp"

using namespace holex;

namespace {

// Every edge of a closed surface triangulation borders exactly two faces.
void check_closed_surface(const TriMesh& mesh) {
  std::map<std::pair<int, int>, int> incidence;
  for (const auto& tri : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = tri[e];
      int b = tri[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++incidence[{a, b}];
    }
  }
  CHECK(incidence.size() == mesh.edges.size());
  for (const auto& [edge, count] : incidence) CHECK(count == 2);
  for (const auto& edge : mesh.edges) {
    CHECK(edge[0] < edge[1]);
    CHECK(incidence.count({edge[0], edge[1]}) == 1);
  }
}

}  // namespace

TEST_CASE("sphere mesh topology and resolution") {
  const Geometry line(GeometrySpec::projective(1), 4);
  const TriMesh mesh = build_mesh(line, 0.3);
  CHECK(mesh.genus == 0);
  CHECK(mesh.euler_characteristic() == 2);
  CHECK(static_cast<long long>(mesh.vertices.size()) - static_cast<long long>(mesh.edges.size()) +
            static_cast<long long>(mesh.triangles.size()) ==
        2);
  check_closed_surface(mesh);
  CHECK(mesh.max_edge_length(line) <= 0.3 + 1e-12);
  for (const auto& v : mesh.vertices) {
    CHECK(v.chart >= 0);
    CHECK(v.chart < line.chart_count());
  }
}

TEST_CASE("sphere mesh refines under a smaller target") {
  const Geometry line(GeometrySpec::projective(1), 4);
  const TriMesh coarse = build_mesh(line, 0.4);
  const TriMesh fine = build_mesh(line, 0.2);
  CHECK(fine.max_edge_length(line) <= 0.2 + 1e-12);
  CHECK(fine.vertices.size() > coarse.vertices.size());
}

TEST_CASE("torus mesh topology and resolution") {
  const Geometry torus(GeometrySpec::elliptic(cdouble(0.0, 1.0), 3), 1);
  const TriMesh mesh = build_mesh(torus, 0.25);
  CHECK(mesh.genus == 1);
  CHECK(mesh.euler_characteristic() == 0);
  check_closed_surface(mesh);
  CHECK(mesh.max_edge_length(torus) <= 0.25 + 1e-12);
}

TEST_CASE("skew torus mesh stays closed") {
  const Geometry torus(GeometrySpec::elliptic(cdouble(0.35, 1.1), 2), 2);
  const TriMesh mesh = build_mesh(torus, 0.3);
  CHECK(mesh.euler_characteristic() == 0);
  check_closed_surface(mesh);
  CHECK(mesh.max_edge_length(torus) <= 0.3 + 1e-12);
}

TEST_CASE("mesh rejects a vacuous resolution") {
  const Geometry line(GeometrySpec::projective(1), 1);
  CHECK_THROWS_AS(build_mesh(line, 0.0), ValidationError);
  CHECK_THROWS_AS(build_mesh(line, -1.0), ValidationError);
}
