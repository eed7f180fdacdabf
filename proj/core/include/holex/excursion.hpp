#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "holex/kernel.hpp"
#include "holex/mesh.hpp"
#include "holex/rng.hpp"

namespace holex {

struct CoefficientVector {
  Eigen::VectorXcd c;  // unit norm
  std::uint64_t seed = 0;
  long long sample_index = 0;
  int retry = 0;
};

// Unit Gaussian coefficient vector, reproducible from (seed, index, retry).
CoefficientVector sample_coefficients(std::uint64_t seed, long long index, long long count,
                                      int retry = 0);

// Vertex values of the orthonormal family, cached so that per-sample field
// evaluation is one matrix-vector product.
class MeshFieldEvaluator {
 public:
  MeshFieldEvaluator(const OrthonormalBasis& basis, const TriMesh& mesh);

  const OrthonormalBasis& basis() const { return *basis_; }
  const TriMesh& mesh() const { return *mesh_; }

  // f_v = |sum_j c_j S_j(v)| / |F(v)|, the normalized field in [0, 1].
  Eigen::VectorXd field(const Eigen::VectorXcd& coeff) const;

  // Same field through the metric route |s|_h / sqrt(density); the two must
  // agree to rounding.
  Eigen::VectorXd field_metric_route(const Eigen::VectorXcd& coeff) const;

  double field_at(const Eigen::VectorXcd& coeff, const ChartPoint& p) const;

 private:
  const OrthonormalBasis* basis_;
  const TriMesh* mesh_;
  Eigen::MatrixXcd values_;      // vertex frames, row per vertex
  Eigen::VectorXd norms_;        // |F(v)|
  Eigen::VectorXd half_weights_; // e^{-phi/2} per vertex
  Eigen::VectorXd densities_;    // squared-norm density per vertex
};

struct LevelSetTopology {
  long long euler = 0;
  long long components = 0;
  long long kept_vertices = 0;
  int bridges = 0;          // certified merges of vertex-split pieces
  bool degenerate = false;  // a vertex value sits within the gap of the threshold
};

// Topology of the vertex-induced superlevel subcomplex {f > u}.
LevelSetTopology superlevel_topology(const TriMesh& mesh, const Eigen::VectorXd& values,
                                     double u, double gap = tol::kDegeneracyGap);

// Same, with sub-resolution splits repaired: pieces whose representatives
// are joined by a chart segment on which the exact field stays above u are
// one continuum component and get merged by a virtual edge.
LevelSetTopology refined_superlevel_topology(const MeshFieldEvaluator& eval,
                                             const Eigen::VectorXcd& coeff,
                                             const Eigen::VectorXd& field, double u,
                                             double gap = tol::kDegeneracyGap);

long long superlevel_euler(const TriMesh& mesh, const Eigen::VectorXd& values, double u);
long long component_count(const TriMesh& mesh, const Eigen::VectorXd& values, double u);

// Supremum of the field: best vertex plus local chart ascent. The result
// lies in [max vertex value, 1].
double sup_refine(const MeshFieldEvaluator& eval, const Eigen::VectorXcd& coeff,
                  const Eigen::VectorXd& field);
double sup_refine(const OrthonormalBasis& basis, const TriMesh& mesh,
                  const Eigen::VectorXcd& coeff);

struct SampleRecord {
  long long index = 0;
  double sup = 0.0;
  long long euler = 0;
  long long components = 0;
  int retries = 0;
  bool empty = true;
  bool cap_promoted = false;  // sup cleared the threshold between vertices
  int bridges = 0;            // certified merges of vertex-split pieces
};

struct MCConfig {
  double threshold = 0.5;
  long long samples = 0;
  std::uint64_t seed = 1;
  int workers = 1;
};

struct MCReport {
  MCConfig config;
  double mean_euler = 0.0;
  double stderr_euler = 0.0;
  double prob_nonempty = 0.0;
  double stderr_prob = 0.0;
  long long degenerate_resamples = 0;
  long long cap_promotions = 0;
  long long bridge_merges = 0;
  std::map<long long, long long> component_histogram;  // nonempty samples
  std::vector<std::pair<double, double>> sup_quantiles;  // (probability, value)
  std::vector<SampleRecord> records;  // per sample, in index order
};

// Monte-Carlo superlevel statistics. Identical numbers for any worker
// count: samples are keyed by index and reduced in index order.
MCReport mc_run(const MeshFieldEvaluator& eval, const MCConfig& config);

}  // namespace holex
