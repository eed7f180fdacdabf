#include "holex/excursion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace holex {

CoefficientVector sample_coefficients(std::uint64_t seed, long long index, long long count,
                                      int retry) {
  if (count < 1) throw ValidationError("coefficient vectors need at least one entry");
  if (index < 0) throw ValidationError("sample index must be nonnegative");
  CounterRng rng(seed, std::uint64_t(index), std::uint32_t(retry));
  CoefficientVector out;
  out.seed = seed;
  out.sample_index = index;
  out.retry = retry;
  out.c.resize(count);
  for (long long j = 0; j < count; ++j) out.c(j) = rng.next_complex_normal();
  const double n = out.c.norm();
  if (!(n > 0.0)) throw NumericError("degenerate Gaussian draw");
  out.c /= n;
  return out;
}

MeshFieldEvaluator::MeshFieldEvaluator(const OrthonormalBasis& basis, const TriMesh& mesh)
    : basis_(&basis), mesh_(&mesh) {
  const std::size_t count = mesh.vertices.size();
  if (count == 0) throw ValidationError("mesh has no vertices");
  const long long sections = basis.count();
  values_.resize(count, sections);
  norms_.resize(count);
  half_weights_.resize(count);
  densities_.resize(count);
  for (std::size_t v = 0; v < count; ++v) {
    const ChartPoint& p = mesh.vertices[v];
    values_.row(v) = basis.evaluate(p).transpose();
    norms_(v) = values_.row(v).norm();
    if (!(norms_(v) > 0.0)) throw NumericError("section frame vanished at a mesh vertex");
    half_weights_(v) = std::exp(-0.5 * basis.geometry().potential(p));
    densities_(v) = sqr(norms_(v) * half_weights_(v));
  }
}

Eigen::VectorXd MeshFieldEvaluator::field(const Eigen::VectorXcd& coeff) const {
  if (coeff.size() != values_.cols()) throw ValidationError("coefficient size mismatch");
  return ((values_ * coeff).array().abs() / norms_.array()).cwiseMin(1.0).matrix();
}

Eigen::VectorXd MeshFieldEvaluator::field_metric_route(const Eigen::VectorXcd& coeff) const {
  if (coeff.size() != values_.cols()) throw ValidationError("coefficient size mismatch");
  return ((values_ * coeff).array().abs() * half_weights_.array() /
          densities_.array().sqrt())
      .matrix();
}

double MeshFieldEvaluator::field_at(const Eigen::VectorXcd& coeff, const ChartPoint& p) const {
  const Eigen::VectorXcd frame = basis_->evaluate(p);
  const double n = frame.norm();
  if (!(n > 0.0)) throw NumericError("section frame vanished at a point");
  return std::min(1.0, std::abs((frame.transpose() * coeff)(0, 0)) / n);
}

LevelSetTopology superlevel_topology(const TriMesh& mesh, const Eigen::VectorXd& values,
                                     double u, double gap) {
  const long long count = (long long)mesh.vertices.size();
  if (values.size() != count) throw ValidationError("value vector does not match the mesh");

  LevelSetTopology out;
  for (long long v = 0; v < count; ++v)
    if (std::abs(values(v) - u) < gap) {
      out.degenerate = true;
      return out;
    }

  std::vector<char> keep(count);
  long long kept = 0;
  for (long long v = 0; v < count; ++v) {
    keep[v] = values(v) > u;
    kept += keep[v];
  }
  out.kept_vertices = kept;
  if (kept == 0) return out;

  long long kept_edges = 0;
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& e : mesh.edges) {
    if (!keep[e[0]] || !keep[e[1]]) continue;
    ++kept_edges;
    const int a = find(e[0]);
    const int b = find(e[1]);
    if (a != b) parent[a] = b;
  }
  long long kept_faces = 0;
  for (const auto& t : mesh.triangles)
    kept_faces += keep[t[0]] && keep[t[1]] && keep[t[2]];

  out.euler = kept - kept_edges + kept_faces;
  for (long long v = 0; v < count; ++v)
    if (keep[v] && find(int(v)) == int(v)) ++out.components;
  return out;
}

long long superlevel_euler(const TriMesh& mesh, const Eigen::VectorXd& values, double u) {
  const LevelSetTopology topo = superlevel_topology(mesh, values, u, 0.0);
  return topo.euler;
}

long long component_count(const TriMesh& mesh, const Eigen::VectorXd& values, double u) {
  const LevelSetTopology topo = superlevel_topology(mesh, values, u, 0.0);
  return topo.components;
}

double sup_refine(const MeshFieldEvaluator& eval, const Eigen::VectorXcd& coeff,
                  const Eigen::VectorXd& field) {
  long long best_vertex = 0;
  field.maxCoeff(&best_vertex);
  const double start = field(best_vertex);

  const Geometry& geom = eval.basis().geometry();
  if (geom.dim() != 1)
    throw ValidationError("field refinement runs on curve geometries");
  const PreferredChart chart =
      geom.preferred_chart(eval.mesh().vertices[std::size_t(best_vertex)]);
  auto value_at = [&](cdouble zeta) {
    return eval.field_at(coeff, chart.to_manifold_1d(zeta));
  };

  const double root_n = std::sqrt(double(geom.power()));
  double step = 0.5 / root_n;
  const double step_floor = 1e-6 / root_n;
  cdouble at(0.0, 0.0);
  double best = value_at(at);
  static const cdouble dirs[8] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  int evals = 1;
  while (step > step_floor && evals < 4000) {
    bool moved = false;
    for (const cdouble& d : dirs) {
      const cdouble probe = at + step * d;
      const double value = value_at(probe);
      ++evals;
      if (value > best) {
        best = value;
        at = probe;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return std::min(1.0, std::max(start, best));
}

double sup_refine(const OrthonormalBasis& basis, const TriMesh& mesh,
                  const Eigen::VectorXcd& coeff) {
  const MeshFieldEvaluator eval(basis, mesh);
  return sup_refine(eval, coeff, eval.field(coeff));
}

// Vertex thresholding can split one continuum piece whose cap threads
// between grid vertices: two diagonal corners of a cell clear u while the
// cell's own edge endpoints do not, and the triangulation's diagonal runs
// the other way. A chart segment on which the exact field stays above u is
// a path inside the excursion set, so the pieces it joins are provably one
// component; a merge needs that certificate, so separate sheets, where any
// connecting path dips below u, are never merged. Pairs are gated to graph
// distance <= 3: farther pieces are not resolution artifacts.
LevelSetTopology refined_superlevel_topology(const MeshFieldEvaluator& eval,
                                             const Eigen::VectorXcd& coeff,
                                             const Eigen::VectorXd& field, double u,
                                             double gap) {
  LevelSetTopology fix = superlevel_topology(eval.mesh(), field, u, gap);
  if (fix.degenerate || fix.components <= 1) return fix;
  const Geometry& geom = eval.basis().geometry();
  if (geom.dim() != 1) return fix;

  const TriMesh& mesh = eval.mesh();
  const long long count = (long long)mesh.vertices.size();
  std::vector<char> keep(static_cast<std::size_t>(count));
  for (long long v = 0; v < count; ++v) keep[std::size_t(v)] = field(v) > u;

  std::vector<int> parent(static_cast<std::size_t>(count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(count));
  for (const auto& e : mesh.edges) {
    adj[std::size_t(e[0])].push_back(e[1]);
    adj[std::size_t(e[1])].push_back(e[0]);
    if (keep[std::size_t(e[0])] && keep[std::size_t(e[1])]) {
      const int a = find(e[0]);
      const int b = find(e[1]);
      if (a != b) parent[a] = b;
    }
  }

  // Highest-field vertex of each piece, in vertex order for determinism.
  std::map<int, int> rep;
  for (long long v = 0; v < count; ++v) {
    if (!keep[std::size_t(v)]) continue;
    const int root = find(int(v));
    auto it = rep.find(root);
    if (it == rep.end() || field(v) > field(it->second)) rep[root] = int(v);
  }
  std::vector<int> reps;
  reps.reserve(rep.size());
  for (const auto& [root, v] : rep) reps.push_back(v);
  std::sort(reps.begin(), reps.end());

  auto within_three_hops = [&](int a, int b) {
    std::vector<int> frontier{a};
    std::vector<int> seen{a};
    for (int depth = 0; depth < 3; ++depth) {
      std::vector<int> next;
      for (const int v : frontier)
        for (const int w : adj[std::size_t(v)]) {
          if (w == b) return true;
          if (std::find(seen.begin(), seen.end(), w) == seen.end()) {
            seen.push_back(w);
            next.push_back(w);
          }
        }
      frontier = std::move(next);
    }
    return false;
  };

  auto certified = [&](int a, int b) {
    const PreferredChart chart = geom.preferred_chart(mesh.vertices[std::size_t(a)]);
    const cdouble zb = chart.from_manifold(mesh.vertices[std::size_t(b)])(0);
    for (int k = 1; k < 64; ++k) {
      const cdouble zeta = (double(k) / 64.0) * zb;
      if (!(eval.field_at(coeff, chart.to_manifold_1d(zeta)) > u)) return false;
    }
    return true;
  };

  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const int a = find(reps[i]);
      const int b = find(reps[j]);
      if (a == b) continue;
      if (!within_three_hops(reps[i], reps[j])) continue;
      if (!certified(reps[i], reps[j])) continue;
      parent[a] = b;  // one virtual edge per certified bridge
      --fix.components;
      --fix.euler;
      ++fix.bridges;
    }
  return fix;
}

namespace {

SampleRecord run_sample(const MeshFieldEvaluator& eval, const MCConfig& config,
                        long long index) {
  const long long sections = eval.basis().count();
  SampleRecord record;
  record.index = index;
  for (int retry = 0;; ++retry) {
    if (retry > 64) throw NumericError("persistent threshold degeneracy while resampling");
    record.retries = retry;
    const CoefficientVector coeff =
        sample_coefficients(config.seed, index, sections, retry);
    const Eigen::VectorXd field = eval.field(coeff.c);
    record.sup = sup_refine(eval, coeff.c, field);
    if (record.sup <= config.threshold) {
      record.empty = true;
      record.euler = 0;
      record.components = 0;
      return record;
    }
    const LevelSetTopology topo =
        refined_superlevel_topology(eval, coeff.c, field, config.threshold);
    if (topo.degenerate) continue;
    record.empty = false;
    if (topo.kept_vertices == 0) {
      // The set pokes above the threshold between vertices only: a single
      // contractible cap at this resolution.
      record.cap_promoted = true;
      record.euler = 1;
      record.components = 1;
    } else {
      record.euler = topo.euler;
      record.components = topo.components;
      record.bridges = topo.bridges;
    }
    return record;
  }
}

}  // namespace

MCReport mc_run(const MeshFieldEvaluator& eval, const MCConfig& config) {
  if (config.samples < 1) throw ValidationError("sample count must be positive");
  if (!(config.threshold > 0.0 && config.threshold < 1.0))
    throw ValidationError("threshold must lie strictly between 0 and 1");
  const int workers = std::max(1, config.workers);

  MCReport report;
  report.config = config;
  report.config.workers = workers;
  report.records.resize(std::size_t(config.samples));

  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run_range = [&](long long lo, long long hi) {
    try {
      for (long long i = lo; i < hi; ++i)
        report.records[std::size_t(i)] = run_sample(eval, config, i);
    } catch (...) {
      std::lock_guard<std::mutex> hold(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    run_range(0, config.samples);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      const long long lo = config.samples * t / workers;
      const long long hi = config.samples * (t + 1) / workers;
      pool.emplace_back(run_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Index-ordered reduction keeps every statistic independent of the
  // worker count.
  const double n = double(config.samples);
  double sum_chi = 0.0;
  double sum_nonempty = 0.0;
  for (const SampleRecord& r : report.records) {
    sum_chi += double(r.euler);
    sum_nonempty += r.empty ? 0.0 : 1.0;
    report.degenerate_resamples += r.retries;
    report.cap_promotions += r.cap_promoted ? 1 : 0;
    report.bridge_merges += r.bridges;
    if (!r.empty) ++report.component_histogram[r.components];
  }
  report.mean_euler = sum_chi / n;
  report.prob_nonempty = sum_nonempty / n;
  if (config.samples > 1) {
    double ss_chi = 0.0;
    double ss_prob = 0.0;
    for (const SampleRecord& r : report.records) {
      ss_chi += sqr(double(r.euler) - report.mean_euler);
      ss_prob += sqr((r.empty ? 0.0 : 1.0) - report.prob_nonempty);
    }
    report.stderr_euler = std::sqrt(ss_chi / (n - 1.0)) / std::sqrt(n);
    report.stderr_prob = std::sqrt(ss_prob / (n - 1.0)) / std::sqrt(n);
  }

  std::vector<double> sups;
  sups.reserve(report.records.size());
  for (const SampleRecord& r : report.records) sups.push_back(r.sup);
  std::sort(sups.begin(), sups.end());
  for (const double q : {0.5, 0.9, 0.99, 1.0}) {
    std::size_t pos = std::size_t(std::ceil(q * double(sups.size())));
    if (pos > 0) --pos;
    pos = std::min(pos, sups.size() - 1);
    report.sup_quantiles.emplace_back(q, sups[pos]);
  }
  return report;
}

}  // namespace holex
