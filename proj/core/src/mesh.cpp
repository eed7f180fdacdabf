#include "holex/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

namespace holex {

namespace {

struct Vec3 {
  double x, y, z;
};

Vec3 normalize(const Vec3& v) {
  const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  return {v.x / n, v.y / n, v.z / n};
}

Vec3 midpoint_on_sphere(const Vec3& a, const Vec3& b) {
  return normalize({a.x + b.x, a.y + b.y, a.z + b.z});
}

double central_angle(const Vec3& a, const Vec3& b) {
  const double dot = std::clamp(a.x * b.x + a.y * b.y + a.z * b.z, -1.0, 1.0);
  return std::acos(dot);
}

ChartPoint sphere_to_chart(const Vec3& v) {
  // Hemisphere split keeps every coordinate inside the unit disk.
  if (v.z <= 0.0) return ChartPoint::scalar(0, cdouble(v.x, v.y) / (1.0 - v.z));
  return ChartPoint::scalar(1, cdouble(v.x, -v.y) / (1.0 + v.z));
}

TriMesh build_icosphere(const Geometry& geom, double target) {
  const double phi = 0.5 * (1.0 + std::sqrt(5.0));
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0}, {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi}, {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1}, {-phi, 0, -1}, {-phi, 0, 1}};
  for (Vec3& v : verts) v = normalize(v);
  std::vector<std::array<int, 3>> faces = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  // Power-N distance between sphere points is sqrt(N) * angle / 2.
  const double scale = 0.5 * std::sqrt(double(geom.power()));
  auto max_edge = [&]() {
    double worst = 0.0;
    for (const auto& f : faces)
      for (int e = 0; e < 3; ++e)
        worst = std::max(worst, central_angle(verts[f[e]], verts[f[(e + 1) % 3]]));
    return worst * scale;
  };

  while (max_edge() > target) {
    if (faces.size() > 6'000'000)
      throw ValidationError("target edge length requires an impractically fine mesh");
    std::map<std::pair<int, int>, int> midpoint;
    auto split = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      verts.push_back(midpoint_on_sphere(verts[a], verts[b]));
      const int idx = int(verts.size()) - 1;
      midpoint.emplace(key, idx);
      return idx;
    };
    std::vector<std::array<int, 3>> next;
    next.reserve(faces.size() * 4);
    for (const auto& f : faces) {
      const int ab = split(f[0], f[1]);
      const int bc = split(f[1], f[2]);
      const int ca = split(f[2], f[0]);
      next.push_back({f[0], ab, ca});
      next.push_back({f[1], bc, ab});
      next.push_back({f[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    faces = std::move(next);
  }

  TriMesh mesh;
  mesh.genus = 0;
  mesh.vertices.reserve(verts.size());
  for (const Vec3& v : verts) mesh.vertices.push_back(sphere_to_chart(v));
  mesh.triangles = std::move(faces);
  mesh.rebuild_edges();
  return mesh;
}

TriMesh build_torus_grid(const Geometry& geom, double target) {
  const GeometrySpec& spec = geom.spec();
  const double scale =
      std::sqrt(M_PI * double(geom.power()) * spec.deg_l / spec.tau.imag());
  int n1 = std::max(4, int(std::ceil(scale / target)));
  int n2 = std::max(4, int(std::ceil(scale * std::abs(spec.tau) / target)));

  auto cell_ok = [&](int a, int b, bool& plus_diagonal) {
    const cdouble e1 = cdouble(1.0 / a, 0.0);
    const cdouble e2 = spec.tau / double(b);
    const double diag_plus = std::abs(e1 + e2);
    const double diag_minus = std::abs(e1 - e2);
    plus_diagonal = diag_plus <= diag_minus;
    const double worst =
        std::max({std::abs(e1), std::abs(e2), std::min(diag_plus, diag_minus)});
    return scale * worst <= target;
  };

  bool plus_diagonal = true;
  while (!cell_ok(n1, n2, plus_diagonal)) {
    if (std::max(n1, n2) > 16384)
      throw ValidationError("target edge length requires an impractically fine mesh");
    n1 += (n1 + 3) / 4;
    n2 += (n2 + 3) / 4;
  }

  TriMesh mesh;
  mesh.genus = 1;
  mesh.vertices.reserve(std::size_t(n1) * n2);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i)
      mesh.vertices.push_back(ChartPoint::scalar(
          0, cdouble(double(i) / n1, 0.0) + spec.tau * (double(j) / n2)));

  auto index = [&](int i, int j) { return ((i + n1) % n1) + n1 * ((j + n2) % n2); };
  mesh.triangles.reserve(std::size_t(2) * n1 * n2);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      const int v00 = index(i, j);
      const int v10 = index(i + 1, j);
      const int v01 = index(i, j + 1);
      const int v11 = index(i + 1, j + 1);
      if (plus_diagonal) {
        mesh.triangles.push_back({v00, v10, v11});
        mesh.triangles.push_back({v00, v11, v01});
      } else {
        mesh.triangles.push_back({v00, v10, v01});
        mesh.triangles.push_back({v10, v11, v01});
      }
    }
  mesh.rebuild_edges();
  return mesh;
}

}  // namespace

void TriMesh::rebuild_edges() {
  std::set<std::array<int, 2>> unique;
  for (const auto& t : triangles)
    for (int e = 0; e < 3; ++e) {
      const int a = t[e];
      const int b = t[(e + 1) % 3];
      unique.insert({std::min(a, b), std::max(a, b)});
    }
  edges.assign(unique.begin(), unique.end());
}

long long TriMesh::euler_characteristic() const {
  return (long long)(vertices.size()) - (long long)(edges.size()) +
         (long long)(triangles.size());
}

double TriMesh::max_edge_length(const Geometry& geom) const {
  double worst = 0.0;
  for (const auto& e : edges)
    worst = std::max(worst, geom.metric_distance(vertices[e[0]], vertices[e[1]]));
  return worst;
}

TriMesh build_mesh(const Geometry& geom, double target_edge_length) {
  if (!(target_edge_length > 0.0)) throw ValidationError("target edge length must be positive");
  if (geom.dim() != 1) throw ValidationError("mesh construction supports surface geometries only");
  if (geom.spec().kind == GeometryKind::ProjectiveSpace)
    return build_icosphere(geom, target_edge_length);
  return build_torus_grid(geom, target_edge_length);
}

}  // namespace holex
