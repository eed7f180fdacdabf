#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "holex/commands.hpp"

namespace {

struct SubcommandSpec {
  const char* name;
  const char* help;
  int (*run)(const holex::RunConfig&);
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for section statistics on polarized curves and "
               "projective spaces"};
  app.require_subcommand(1);

  const std::vector<SubcommandSpec> specs = {
      {"formula", "Evaluate the expected-characteristic formulas over the configured sweep",
       holex::cmd_formula},
      {"mc", "Sample random sections and measure superlevel-set topology", holex::cmd_mc},
      {"checks", "Run the built-in consistency checks and report pass/fail",
       holex::cmd_checks},
      {"mesh-export", "Write the triangulation used by the sampling pipeline",
       holex::cmd_mesh_export},
      {"basis-export", "Write the orthonormal-basis coefficient matrix",
       holex::cmd_basis_export},
  };

  holex::CliOverrides overrides;
  std::function<int(const holex::RunConfig&)> selected;
  for (const SubcommandSpec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", overrides.config_path, "JSON run configuration");
    sub->add_option("--seed", overrides.seed, "Override the configured seed");
    sub->add_option("--workers", overrides.workers, "Override the worker count");
    sub->add_option("--out", overrides.out_dir, "Override the output directory");
    sub->callback([&selected, &spec]() { selected = spec.run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 2;
  }

  try {
    const holex::RunConfig config = holex::load_run_config(overrides);
    return selected(config);
  } catch (const holex::ValidationError& err) {
    std::fprintf(stderr, "validation error: %s\n", err.what());
    return 2;
  } catch (const holex::NumericError& err) {
    std::fprintf(stderr, "numerical error: %s\n", err.what());
    return 2;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}
