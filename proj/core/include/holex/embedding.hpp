#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "holex/kernel.hpp"
#include "holex/mesh.hpp"

namespace holex {

// Unit representative of a point in the projective space of sections.
struct ProjectivePoint {
  Eigen::VectorXcd h;
};

ProjectivePoint make_projective(Eigen::VectorXcd v);

// arccos |<a, b>|, in [0, pi/2].
double fs_distance(const ProjectivePoint& a, const ProjectivePoint& b);

// Image of p under the section embedding: [F(p)].
ProjectivePoint kodaira_point(const OrthonormalBasis& basis, const ChartPoint& p);

// Limit direction of secants through the image of p: the component of F'
// orthogonal to F. Errors where the embedding fails to immerse.
ProjectivePoint tangent_infinity(const OrthonormalBasis& basis, const ChartPoint& p);
Eigen::VectorXcd tangent_infinity_vector(const FrameVector& fz);

// Projection away from the tangent direction at z: [v - (<v,T>/|T|^2) T].
// Errors when v is the tangent direction itself.
ProjectivePoint project_from_tangent(const FrameVector& fz, const Eigen::VectorXcd& v);
ProjectivePoint project_from_tangent(const OrthonormalBasis& basis, const ChartPoint& z,
                                     const Eigen::VectorXcd& v);

enum class SliceMode { GeometricPath, KernelPath };

struct NormalSliceResult {
  double sin2 = 0.0;    // squared sine of the slice distance
  SliceMode mode = SliceMode::GeometricPath;  // route that produced the value
  bool fell_back = false;  // kernel route hit a degenerate denominator
};

// Squared sine of the distance from the image of w to the intersection of
// the normal slices at z and w. The geometric route projects frame vectors;
// the kernel route evaluates the curvature ratio of E.
NormalSliceResult normal_slice_distance(const FrameVector& fz, const FrameVector& fw,
                                        SliceMode mode);
NormalSliceResult normal_slice_distance(const OrthonormalBasis& basis, const ChartPoint& z,
                                        const ChartPoint& w, SliceMode mode);

// One-variable family along a line through the center of a preferred chart.
class LineRestriction {
 public:
  LineRestriction(const OrthonormalBasis& basis, PreferredChart chart,
                  Eigen::VectorXcd direction);

  FrameVector frame(cdouble t) const;
  ChartPoint point(cdouble t) const;
  const Eigen::VectorXcd& direction() const { return direction_; }
  const PreferredChart& chart() const { return chart_; }

 private:
  const OrthonormalBasis* basis_;
  PreferredChart chart_;
  Eigen::VectorXcd direction_;
};

LineRestriction restrict_to_line(const OrthonormalBasis& basis, const ChartPoint& z,
                                 const Eigen::VectorXcd& direction);

struct CriticalRadiusReport {
  long long power = 0;
  double r_hat = 0.0;       // min over sampled pairs of the pairwise safe radius
  double near_min = 0.0;    // min near-regime radius, arcsin of the slice sine
  double far_min = 0.0;     // min far-regime radius, half the image distance
  double near_min_sin2 = 0.0;
  long long near_pairs = 0;
  long long far_pairs = 0;
  long long kernel_fallbacks = 0;
  long long pair_budget = 0;
  double mesh_edge = 0.0;   // rescaled-metric resolution of the mesh used
};

// Safe-radius estimate over mesh vertex pairs: near pairs (chart separation
// below 1/sqrt(2N)) contribute arcsin of the slice distance in both
// orientations, far pairs contribute half their image distance. This is an
// estimator over sampled pairs, not a certificate.
CriticalRadiusReport critical_radius(const OrthonormalBasis& basis, const TriMesh& mesh,
                                     long long pair_budget, std::uint64_t seed);

// Probes pairwise image separation over the mesh; throws when two vertices
// land closer than min_separation, advising a larger power.
void check_embedding_injectivity(const OrthonormalBasis& basis, const TriMesh& mesh,
                                 double min_separation = 1e-10);

}  // namespace holex
