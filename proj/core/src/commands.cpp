#include "holex/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "holex/embedding.hpp"
#include "holex/excursion.hpp"

namespace holex {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string out_path(const RunConfig& config, const std::string& filename) {
  std::filesystem::create_directories(config.out_dir);
  return (std::filesystem::path(config.out_dir) / filename).string();
}

std::string exact_or_empty(const std::optional<Rational>& value, bool exact_mode) {
  if (!exact_mode || !value) return "";
  return to_string(*value);
}

// Closed-form mean Euler characteristic of the superlevel set, for curve
// geometries.
double reference_mean_euler(const GeometrySpec& spec, long long power, double u) {
  const int genus = spec.kind == GeometryKind::ProjectiveSpace ? 0 : 1;
  return chern::expected_chi_curve(genus, spec.deg_l, power, rational_from_double(u)).value;
}

Json histogram_json(const std::map<long long, long long>& histogram) {
  Json out = Json::array();
  for (const auto& [components, count] : histogram)
    out.push_back(Json::array({components, count}));
  return out;
}

Json quantiles_json(const std::vector<std::pair<double, double>>& quantiles) {
  Json out = Json::array();
  for (const auto& [probability, value] : quantiles)
    out.push_back(Json::array({probability, value}));
  return out;
}

struct CheckLine {
  std::string name;
  bool pass = true;
  std::string detail;
};

void print_check(const CheckLine& line) {
  std::printf("[%s] %s%s%s\n", line.pass ? "PASS" : "FAIL", line.name.c_str(),
              line.detail.empty() ? "" : ": ", line.detail.c_str());
}

}  // namespace

int cmd_formula(const RunConfig& config) {
  const auto start = Clock::now();
  const GeometrySpec spec = config.geometry_spec();
  const chern::RingSpec ring = spec.ring();
  const int genus = spec.kind == GeometryKind::ProjectiveSpace ? 0 : 1;
  const bool curve = spec.m == 1;

  CsvBuilder csv({"family", "dim", "genus", "degree", "power", "threshold", "sections",
                  "ring_exact", "ring_value", "closed_exact", "closed_value", "tube_exact",
                  "tube_value", "leading_term", "ring_over_leading"});
  bool identities_hold = true;

  for (const long long power : config.powers) {
    const long long sections = chern::h0_dimension(ring, power);
    const long long n = sections - 1;
    for (const double threshold : config.thresholds) {
      const Rational u = rational_from_double(threshold);
      const chern::FormulaResult ring_result = chern::ring_eval_expected_chi(ring, power, u);
      std::string closed_exact;
      std::string closed_value;
      std::string tube_exact;
      std::string tube_value;
      if (curve) {
        const chern::FormulaResult closed =
            chern::expected_chi_curve(genus, spec.deg_l, power, u);
        const chern::FormulaResult tube =
            chern::tube_volume_curve(genus, spec.deg_l, power, u);
        closed_exact = exact_or_empty(closed.exact, config.exact_mode);
        closed_value = format_g17(closed.value);
        tube_exact = exact_or_empty(tube.exact, config.exact_mode);
        tube_value = format_g17(tube.value);
        if (config.exact_mode && ring_result.exact && closed.exact &&
            *ring_result.exact != *closed.exact) {
          identities_hold = false;
          std::fprintf(stderr,
                       "formula mismatch at power %lld threshold %s: ring %s vs closed %s\n",
                       power, format_g17(threshold).c_str(),
                       to_string(*ring_result.exact).c_str(), to_string(*closed.exact).c_str());
        }
      }
      // The asymptotic leading term needs n > m; at the minimal embedding
      // dimension the column stays empty.
      std::string leading_text;
      std::string ratio_text;
      if (n > spec.m) {
        const double leading = chern::leading_term(spec.m, n, threshold);
        leading_text = format_g17(leading);
        ratio_text = format_g17(leading != 0.0 ? ring_result.value / leading : 0.0);
      }
      csv.row({spec.name(), std::to_string(spec.m), curve ? std::to_string(genus) : "",
               std::to_string(spec.deg_l), std::to_string(power), format_g17(threshold),
               std::to_string(sections), exact_or_empty(ring_result.exact, config.exact_mode),
               format_g17(ring_result.value), closed_exact, closed_value, tube_exact,
               tube_value, leading_text, ratio_text});
    }
  }

  RunManifest manifest = make_manifest(config, "formula");
  manifest.wall_seconds = seconds_since(start);
  csv.comment("manifest " + dump_json_line(manifest.to_json()));
  const std::string path = out_path(config, "formula_" + spec.name() + ".csv");
  write_text_file(path, csv.text());
  std::printf("formula: %zu rows -> %s\n",
              config.powers.size() * config.thresholds.size(), path.c_str());
  if (!identities_hold) {
    std::fprintf(stderr, "formula: exact identities FAILED\n");
    return 3;
  }
  return 0;
}

int cmd_mc(const RunConfig& config) {
  const GeometrySpec spec = config.geometry_spec();
  if (spec.m != 1)
    throw ValidationError("superlevel sampling runs on curve geometries (cp1 or elliptic)");
  const int workers = resolve_workers(config);

  int threshold_index = 0;
  for (const long long power : config.powers) {
    const Geometry geom(spec, power);
    const OrthonormalBasis basis = make_orthonormal_basis(geom, config.quadrature_order);
    const TriMesh mesh = build_mesh(geom, config.mesh_edge);
    const MeshFieldEvaluator eval(basis, mesh);

    threshold_index = 0;
    for (const double threshold : config.thresholds) {
      const auto start = Clock::now();
      MCConfig mc;
      mc.threshold = threshold;
      mc.samples = config.samples;
      mc.seed = config.seed;
      mc.workers = workers;
      const MCReport report = mc_run(eval, mc);
      const double reference = reference_mean_euler(spec, power, threshold);

      Json body;
      body["family"] = spec.name();
      body["power"] = power;
      body["threshold"] = threshold;
      body["samples"] = report.config.samples;
      body["seed"] = report.config.seed;
      body["workers"] = report.config.workers;
      body["meshVertices"] = (long long)mesh.vertices.size();
      body["meshEdge"] = mesh.max_edge_length(geom);
      body["meanEuler"] = report.mean_euler;
      body["stderrEuler"] = report.stderr_euler;
      body["probNonempty"] = report.prob_nonempty;
      body["stderrProb"] = report.stderr_prob;
      body["closedFormMeanEuler"] = reference;
      body["degenerateResamples"] = report.degenerate_resamples;
      body["capPromotions"] = report.cap_promotions;
      body["bridgeMerges"] = report.bridge_merges;
      body["componentHistogram"] = histogram_json(report.component_histogram);
      body["supQuantiles"] = quantiles_json(report.sup_quantiles);

      RunManifest manifest = make_manifest(config, "mc");
      manifest.wall_seconds = seconds_since(start);
      Json doc;
      doc["manifest"] = manifest.to_json();
      doc["report"] = std::move(body);

      const std::string tag =
          spec.name() + "_p" + std::to_string(power) + "_t" + std::to_string(threshold_index);
      const std::string path = out_path(config, "mc_" + tag + ".json");
      write_text_file(path, dump_json(doc));

      if (config.per_sample_log) {
        CsvBuilder samples({"index", "sup", "euler", "components", "retries", "empty"});
        samples.comment("manifest " + dump_json_line(manifest.to_json()));
        for (const SampleRecord& r : report.records)
          samples.row({std::to_string(r.index), format_g17(r.sup), std::to_string(r.euler),
                       std::to_string(r.components), std::to_string(r.retries),
                       r.empty ? "1" : "0"});
        write_text_file(out_path(config, "mc_" + tag + "_samples.csv"), samples.text());
      }

      std::printf(
          "mc %s: mean euler %s (stderr %s), closed form %s, nonempty %s -> %s\n",
          tag.c_str(), format_g17(report.mean_euler).c_str(),
          format_g17(report.stderr_euler).c_str(), format_g17(reference).c_str(),
          format_g17(report.prob_nonempty).c_str(), path.c_str());
      ++threshold_index;
    }
  }
  return 0;
}

int cmd_checks(const RunConfig& config) {
  const auto start = Clock::now();
  const GeometrySpec spec = config.geometry_spec();
  std::vector<CheckLine> lines;
  Json power_reports = Json::array();

  for (const long long power : config.powers) {
    const Geometry geom(spec, power);
    const RawBasis raw = RawBasis::make(geom);
    const OrthonormalBasis basis = make_orthonormal_basis(geom, config.quadrature_order);
    const long long sections = basis.count();
    Json entry;
    entry["power"] = power;
    entry["sections"] = sections;

    {
      // Orthonormality against an independent, denser rule.
      const QuadratureRule finer = build_quadrature(geom, config.quadrature_order + 7);
      const Eigen::MatrixXcd raw_gram = gram_matrix(raw, finer);
      const Eigen::MatrixXcd gram = basis.transform().transpose() * raw_gram *
                                    basis.transform().conjugate();
      const double deviation =
          (gram - Eigen::MatrixXcd::Identity(sections, sections)).cwiseAbs().maxCoeff();
      double trace = 0.0;
      const double scale = std::pow(double(power), -geom.dim());
      for (const QuadratureNode& node : finer.nodes)
        trace += szego_diag(basis, node.point) * node.weight * scale;
      const bool gram_ok = deviation <= tol::kGramIdentity;
      const bool trace_ok = std::abs(trace - double(sections)) <= tol::kSzegoTrace;
      entry["gram"] = {{"maxDeviation", deviation}, {"pass", gram_ok}};
      entry["densityIntegral"] = {{"value", trace},
                                  {"expected", sections},
                                  {"pass", trace_ok}};
      lines.push_back({"gram identity (power " + std::to_string(power) + ")", gram_ok,
                       "max deviation " + format_g17(deviation)});
      lines.push_back({"density integral (power " + std::to_string(power) + ")", trace_ok,
                       format_g17(trace) + " vs " + std::to_string(sections)});
    }

    {
      // Diagonal density flatness, against the geometry's exact ratio.
      std::vector<ChartPoint> probes;
      CounterRng rng(config.seed, 0x21);
      for (int i = 0; i < 200; ++i) probes.push_back(geom.random_point(rng));
      const DensityReport density = density_check(basis, probes);
      bool density_ok = false;
      double expected_deviation = 0.0;
      if (spec.kind == GeometryKind::ProjectiveSpace) {
        double expected_ratio = 1.0;
        for (int j = 1; j <= spec.m; ++j) expected_ratio *= 1.0 + double(j) / double(power);
        expected_deviation = std::abs(expected_ratio - 1.0);
        const double offset = std::abs(density.max_deviation - expected_deviation);
        density_ok =
            density.spread <= tol::kDensitySpread && offset <= tol::kDensitySpread;
      } else {
        // Theta densities flatten only exponentially in the effective
        // power k = N deg: the band follows the measured envelope.
        const double k = double(power) * double(spec.deg_l);
        const double band = 5.0 * std::exp(-0.5 * M_PI * k) + tol::kDensitySpread;
        expected_deviation = band;
        density_ok = density.max_deviation <= band && density.spread <= 2.0 * band;
      }
      entry["density"] = {{"maxDeviation", density.max_deviation},
                          {"spread", density.spread},
                          {"expectedDeviation", expected_deviation},
                          {"pass", density_ok}};
      lines.push_back({"diagonal density (power " + std::to_string(power) + ")", density_ok,
                       "deviation " + format_g17(density.max_deviation) + ", spread " +
                           format_g17(density.spread)});
    }

    if (power >= 2) {
      // Scaled two-point kernel against the Gaussian, small offset grid.
      CounterRng rng(config.seed, 0x22);
      const ChartPoint center = geom.random_point(rng);
      const double b = 3.0;
      const double window = b * std::sqrt(std::log(double(power)));
      const double extent = std::min(1.0, 0.3 * window);
      std::vector<cdouble> points;
      for (const double re : {-1.0, 0.0, 1.0})
        for (const double im : {-1.0, 0.0, 1.0}) points.push_back(extent * cdouble(re, im));
      std::vector<std::pair<cdouble, cdouble>> offsets;
      for (const cdouble& u : points)
        for (const cdouble& v : points) offsets.emplace_back(u, v);
      const GaussianReport gauss = gaussian_check(basis, center, offsets, b);

      bool oracle_ok = true;
      double oracle_dev = 0.0;
      if (spec.kind == GeometryKind::ProjectiveSpace && spec.m == 1) {
        // Exact model kernel on the line.
        const double n_power = double(power);
        for (const GaussianPair& pair : gauss.pairs) {
          const cdouble z = pair.u / std::sqrt(n_power);
          const cdouble w = pair.v / std::sqrt(n_power);
          const double reference =
              std::pow(std::abs(1.0 + z * std::conj(w)), n_power) /
              std::pow((1.0 + std::norm(z)) * (1.0 + std::norm(w)), 0.5 * n_power);
          oracle_dev = std::max(oracle_dev, std::abs(pair.kernel - reference));
        }
        oracle_ok = oracle_dev <= tol::kGaussianOracle;
      }
      entry["gaussian"] = {{"maxDeviation", gauss.max_deviation},
                           {"fittedConstant", gauss.fitted_constant},
                           {"window", gauss.window},
                           {"oracleDeviation", oracle_dev},
                           {"pass", oracle_ok}};
      lines.push_back({"scaled kernel (power " + std::to_string(power) + ")", oracle_ok,
                       "gaussian deviation " + format_g17(gauss.max_deviation) +
                           ", oracle deviation " + format_g17(oracle_dev)});
    }

    const bool embeddable =
        spec.kind == GeometryKind::ProjectiveSpace || power * spec.deg_l >= 3;
    if (spec.m == 1 && embeddable) {
      const TriMesh mesh = build_mesh(geom, config.mesh_edge);

      {
        // The two normal-slice routes on sampled vertex pairs.
        CounterRng rng(config.seed, 0x23);
        double worst = 0.0;
        long long used = 0;
        const long long target = std::min<long long>(300, config.pair_budget);
        while (used < target) {
          const std::size_t a = std::size_t(rng.next_u64() % mesh.vertices.size());
          const std::size_t b = std::size_t(rng.next_u64() % mesh.vertices.size());
          if (a == b) continue;
          if (geom.base_distance(mesh.vertices[a], mesh.vertices[b]) <
              tol::kNearDiagonalFloor)
            continue;
          const NormalSliceResult geometric = normal_slice_distance(
              basis, mesh.vertices[a], mesh.vertices[b], SliceMode::GeometricPath);
          const NormalSliceResult kernel = normal_slice_distance(
              basis, mesh.vertices[a], mesh.vertices[b], SliceMode::KernelPath);
          if (!kernel.fell_back)
            worst = std::max(worst, std::abs(geometric.sin2 - kernel.sin2));
          ++used;
        }
        const bool agree = worst <= tol::kModeAgreement;
        entry["modeAgreement"] = {{"pairs", used}, {"maxDifference", worst}, {"pass", agree}};
        lines.push_back({"slice mode agreement (power " + std::to_string(power) + ")", agree,
                         "max difference " + format_g17(worst)});
      }

      {
        const CriticalRadiusReport radius =
            critical_radius(basis, mesh, config.pair_budget, config.seed);
        const bool positive = radius.r_hat > 0.0;
        entry["criticalRadius"] = {{"rHat", radius.r_hat},
                                   {"nearMin", radius.near_min},
                                   {"farMin", radius.far_min},
                                   {"nearMinSin2", radius.near_min_sin2},
                                   {"nearPairs", radius.near_pairs},
                                   {"farPairs", radius.far_pairs},
                                   {"kernelFallbacks", radius.kernel_fallbacks},
                                   {"meshEdgeLength", radius.mesh_edge},
                                   {"pairs", radius.near_pairs + radius.far_pairs},
                                   {"pass", positive}};
        lines.push_back({"safe radius (power " + std::to_string(power) + ")", positive,
                         "r-hat " + format_g17(radius.r_hat)});
      }
    }

    power_reports.push_back(std::move(entry));
  }

  bool all_pass = true;
  for (const CheckLine& line : lines) {
    print_check(line);
    all_pass = all_pass && line.pass;
  }

  RunManifest manifest = make_manifest(config, "checks");
  manifest.wall_seconds = seconds_since(start);
  Json doc;
  doc["manifest"] = manifest.to_json();
  doc["report"] = {{"family", spec.name()}, {"powers", std::move(power_reports)},
                   {"pass", all_pass}};
  const std::string path = out_path(config, "checks_" + spec.name() + ".json");
  write_text_file(path, dump_json(doc));
  std::printf("checks: %s -> %s\n", all_pass ? "all passed" : "FAILURES", path.c_str());
  return all_pass ? 0 : 3;
}

int cmd_mesh_export(const RunConfig& config) {
  const auto start = Clock::now();
  const GeometrySpec spec = config.geometry_spec();
  if (spec.m != 1) throw ValidationError("meshes exist for curve geometries only");
  int written = 0;
  for (const long long power : config.powers) {
    const Geometry geom(spec, power);
    const TriMesh mesh = build_mesh(geom, config.mesh_edge);

    RunManifest manifest = make_manifest(config, "mesh-export");
    manifest.wall_seconds = seconds_since(start);
    std::string text;
    text += "# manifest " + dump_json_line(manifest.to_json()) + "\n";
    text += "# vertices " + std::to_string(mesh.vertices.size()) + " faces " +
            std::to_string(mesh.triangles.size()) + " genus " + std::to_string(mesh.genus) +
            "\n";
    for (const ChartPoint& p : mesh.vertices)
      text += "v " + std::to_string(p.chart) + " " + format_g17(p.z().real()) + " " +
              format_g17(p.z().imag()) + "\n";
    for (const auto& t : mesh.triangles)
      text += "f " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
              std::to_string(t[2]) + "\n";
    const std::string path = out_path(
        config, "mesh_" + spec.name() + "_p" + std::to_string(power) + ".txt");
    write_text_file(path, text);
    std::printf("mesh: %zu vertices, %zu faces -> %s\n", mesh.vertices.size(),
                mesh.triangles.size(), path.c_str());
    ++written;
  }
  return written > 0 ? 0 : 2;
}

int cmd_basis_export(const RunConfig& config) {
  const auto start = Clock::now();
  const GeometrySpec spec = config.geometry_spec();
  for (const long long power : config.powers) {
    const Geometry geom(spec, power);
    const OrthonormalBasis basis = make_orthonormal_basis(geom, config.quadrature_order);
    const long long count = basis.count();

    std::vector<std::string> header = {"section"};
    for (long long j = 0; j < count; ++j) {
      header.push_back("re_" + std::to_string(j));
      header.push_back("im_" + std::to_string(j));
    }
    CsvBuilder csv(header);
    for (long long k = 0; k < count; ++k) {
      std::vector<std::string> row = {std::to_string(k)};
      for (long long j = 0; j < count; ++j) {
        row.push_back(format_g17(basis.transform()(j, k).real()));
        row.push_back(format_g17(basis.transform()(j, k).imag()));
      }
      csv.row(row);
    }
    RunManifest manifest = make_manifest(config, "basis-export");
    manifest.wall_seconds = seconds_since(start);
    csv.comment("manifest " + dump_json_line(manifest.to_json()));
    const std::string path = out_path(
        config, "basis_" + spec.name() + "_p" + std::to_string(power) + ".csv");
    write_text_file(path, csv.text());
    std::printf("basis: %lld sections (condition %s) -> %s\n", count,
                format_g17(basis.gram_condition()).c_str(), path.c_str());
  }
  return 0;
}

}  // namespace holex
