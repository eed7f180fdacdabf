#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holex/geometry.hpp"
#include "holex/io.hpp"
#include "holex/quadrature.hpp"

namespace holex {

// One run specification: geometry, sweeps, sampling and output layout.
// Every field has a default, and the materialized form is echoed in each
// output's manifest.
struct RunConfig {
  std::string family = "cp1";  // cp1 | cp2 | cp3 | elliptic
  int degree = 1;              // polarization degree, elliptic only
  cdouble tau = cdouble(0.0, 1.0);

  std::vector<long long> powers = {4};
  std::vector<double> thresholds = {0.96};

  double mesh_edge = 0.08;  // rescaled-metric target edge length
  int quadrature_order = kDefaultQuadratureOrder;
  long long samples = 10000;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: resolve from the environment, else 1
  long long pair_budget = 600;
  bool exact_mode = true;
  bool per_sample_log = false;
  std::string out_dir = ".";

  static RunConfig from_json(const Json& root);
  static RunConfig from_file(const std::string& path);
  Json to_json() const;  // fully materialized, defaults included
  void validate() const;

  GeometrySpec geometry_spec() const;
};

// Command-line overrides; applied after the file load, before validation.
struct CliOverrides {
  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> out_dir;
};

RunConfig load_run_config(const CliOverrides& overrides);

// Worker resolution order: explicit config value, then the
// EXCURSION_LAB_WORKERS environment variable, then 1.
int resolve_workers(const RunConfig& config);

struct RunManifest {
  std::string version = kVersion;
  std::string command;
  std::string generated_at;  // wall-clock stamp, excluded from comparisons
  double wall_seconds = 0.0;
  Json config;
  Json tolerances;

  Json to_json() const;
};

RunManifest make_manifest(const RunConfig& config, const std::string& command);
Json tolerance_table();

// Timestamp for manifests; ISO-8601 UTC.
std::string current_timestamp();

}  // namespace holex
