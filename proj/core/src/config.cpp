#include "holex/config.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <set>

namespace holex {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "geometry",  "power",   "powers",  "threshold",  "thresholds",  "meshEdge",
      "quadratureOrder", "samples", "seed", "workers", "pairBudget", "exact",
      "perSampleLog", "outDir"};
  return keys;
}

const std::set<std::string>& known_geometry_keys() {
  static const std::set<std::string> keys = {"family", "degree", "tau"};
  return keys;
}

void reject_unknown(const Json& object, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    (void)value;
    if (!known.count(key))
      throw ValidationError("unknown key \"" + key + "\" in " + where);
  }
}

template <typename T>
T field_or(const Json& object, const char* key, T fallback) {
  if (!object.contains(key)) return fallback;
  try {
    return object.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ValidationError(std::string("field \"") + key + "\" has the wrong type");
  }
}

}  // namespace

RunConfig RunConfig::from_json(const Json& root) {
  if (!root.is_object()) throw ValidationError("configuration must be a JSON object");
  reject_unknown(root, known_keys(), "the configuration");

  RunConfig config;
  if (root.contains("geometry")) {
    const Json& geo = root.at("geometry");
    if (!geo.is_object()) throw ValidationError("\"geometry\" must be an object");
    reject_unknown(geo, known_geometry_keys(), "\"geometry\"");
    config.family = field_or<std::string>(geo, "family", config.family);
    config.degree = field_or<int>(geo, "degree", config.degree);
    if (geo.contains("tau")) {
      const Json& tau = geo.at("tau");
      if (!tau.is_array() || tau.size() != 2 || !tau[0].is_number() || !tau[1].is_number())
        throw ValidationError("\"tau\" must be a [real, imaginary] pair");
      config.tau = cdouble(tau[0].get<double>(), tau[1].get<double>());
    }
  }

  if (root.contains("power") && root.contains("powers"))
    throw ValidationError("give either \"power\" or \"powers\", not both");
  if (root.contains("power")) config.powers = {field_or<long long>(root, "power", 4)};
  if (root.contains("powers"))
    config.powers = root.at("powers").get<std::vector<long long>>();

  if (root.contains("threshold") && root.contains("thresholds"))
    throw ValidationError("give either \"threshold\" or \"thresholds\", not both");
  if (root.contains("threshold"))
    config.thresholds = {field_or<double>(root, "threshold", 0.96)};
  if (root.contains("thresholds"))
    config.thresholds = root.at("thresholds").get<std::vector<double>>();

  config.mesh_edge = field_or<double>(root, "meshEdge", config.mesh_edge);
  config.quadrature_order = field_or<int>(root, "quadratureOrder", config.quadrature_order);
  config.samples = field_or<long long>(root, "samples", config.samples);
  config.seed = field_or<std::uint64_t>(root, "seed", config.seed);
  config.workers = field_or<int>(root, "workers", config.workers);
  config.pair_budget = field_or<long long>(root, "pairBudget", config.pair_budget);
  config.exact_mode = field_or<bool>(root, "exact", config.exact_mode);
  config.per_sample_log = field_or<bool>(root, "perSampleLog", config.per_sample_log);
  config.out_dir = field_or<std::string>(root, "outDir", config.out_dir);

  config.validate();
  return config;
}

RunConfig RunConfig::from_file(const std::string& path) {
  Json root;
  try {
    root = Json::parse(read_text_file(path));
  } catch (const Json::exception& err) {
    throw ValidationError("cannot parse " + path + ": " + err.what());
  }
  return from_json(root);
}

Json RunConfig::to_json() const {
  Json geo;
  geo["family"] = family;
  geo["degree"] = degree;
  geo["tau"] = Json::array({tau.real(), tau.imag()});
  Json root;
  root["geometry"] = std::move(geo);
  root["powers"] = powers;
  root["thresholds"] = thresholds;
  root["meshEdge"] = mesh_edge;
  root["quadratureOrder"] = quadrature_order;
  root["samples"] = samples;
  root["seed"] = seed;
  root["workers"] = workers;
  root["pairBudget"] = pair_budget;
  root["exact"] = exact_mode;
  root["perSampleLog"] = per_sample_log;
  root["outDir"] = out_dir;
  return root;
}

void RunConfig::validate() const {
  geometry_spec();  // validates family, degree, tau
  if (powers.empty()) throw ValidationError("at least one power is required");
  for (const long long n : powers)
    if (n < 1) throw ValidationError("powers must be positive");
  if (thresholds.empty()) throw ValidationError("at least one threshold is required");
  for (const double u : thresholds)
    if (!(u > 0.0 && u < 1.0))
      throw ValidationError("thresholds must lie strictly between 0 and 1");
  if (!(mesh_edge > 0.0)) throw ValidationError("mesh edge length must be positive");
  if (quadrature_order < 1) throw ValidationError("quadrature order must be at least 1");
  if (samples < 1) throw ValidationError("sample count must be positive");
  if (workers < 0) throw ValidationError("worker count cannot be negative");
  if (pair_budget < 4) throw ValidationError("pair budget must be at least 4");
  if (out_dir.empty()) throw ValidationError("output directory must not be empty");
}

GeometrySpec RunConfig::geometry_spec() const {
  if (family == "cp1") return GeometrySpec::projective(1);
  if (family == "cp2") return GeometrySpec::projective(2);
  if (family == "cp3") return GeometrySpec::projective(3);
  if (family == "elliptic") return GeometrySpec::elliptic(tau, degree);
  throw ValidationError("unknown geometry family \"" + family +
                        "\" (expected cp1, cp2, cp3 or elliptic)");
}

RunConfig load_run_config(const CliOverrides& overrides) {
  RunConfig config;
  if (overrides.config_path) config = RunConfig::from_file(*overrides.config_path);
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.workers) config.workers = *overrides.workers;
  if (overrides.out_dir) config.out_dir = *overrides.out_dir;
  config.validate();
  return config;
}

int resolve_workers(const RunConfig& config) {
  if (config.workers > 0) return config.workers;
  if (const char* env = std::getenv("EXCURSION_LAB_WORKERS")) {
    try {
      const int parsed = std::stoi(env);
      if (parsed >= 1) return parsed;
    } catch (const std::exception&) {
    }
    throw ValidationError("EXCURSION_LAB_WORKERS must be a positive integer");
  }
  return 1;
}

Json tolerance_table() {
  Json out;
  out["gramIdentity"] = tol::kGramIdentity;
  out["szegoTrace"] = tol::kSzegoTrace;
  out["densitySpread"] = tol::kDensitySpread;
  out["gaussianOracle"] = tol::kGaussianOracle;
  out["fieldIdentity"] = tol::kFieldIdentity;
  out["modeAgreement"] = tol::kModeAgreement;
  out["chartAgreement"] = tol::kChartAgreement;
  out["unitaryInvariance"] = tol::kUnitaryInvariance;
  out["bruteForceBand"] = tol::kBruteForceBand;
  out["degeneracyGap"] = tol::kDegeneracyGap;
  out["nearDiagonalFloor"] = tol::kNearDiagonalFloor;
  out["denominatorFloor"] = tol::kDenominatorFloor;
  out["conditionLimit"] = tol::kConditionLimit;
  out["supConvergence"] = tol::kSupConvergence;
  out["meshChartEdgeLimit"] = tol::kMeshChartEdgeLimit;
  out["radiusStability"] = tol::kRadiusStability;
  return out;
}

std::string current_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

RunManifest make_manifest(const RunConfig& config, const std::string& command) {
  RunManifest manifest;
  manifest.command = command;
  manifest.generated_at = current_timestamp();
  manifest.config = config.to_json();
  manifest.tolerances = tolerance_table();
  return manifest;
}

Json RunManifest::to_json() const {
  Json out;
  out["version"] = version;
  out["command"] = command;
  out["generatedAt"] = generated_at;
  out["wallSeconds"] = wall_seconds;
  out["config"] = config;
  out["tolerances"] = tolerances;
  return out;
}

}  // namespace holex
