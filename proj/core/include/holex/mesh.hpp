#pragma once

#include <array>
#include <vector>

#include "holex/geometry.hpp"

namespace holex {

struct TriMesh {
  int genus = 0;
  std::vector<ChartPoint> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;  // sorted vertex pairs

  void rebuild_edges();
  long long euler_characteristic() const;
  double max_edge_length(const Geometry& geom) const;
};

// Triangulates the surface geometries: subdivided icosahedron for the
// projective line, structured periodic grid for the torus. The target
// edge length is measured in the power-N metric.
TriMesh build_mesh(const Geometry& geom, double target_edge_length);

}  // namespace holex
