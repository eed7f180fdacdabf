#pragma once

#include "holex/config.hpp"

namespace holex {

// Subcommand bodies behind the CLI front end. Each returns a process exit
// code: 0 on success, 3 when a tolerance check fails; validation problems
// throw and the front end maps them to 2.
int cmd_formula(const RunConfig& config);
int cmd_mc(const RunConfig& config);
int cmd_checks(const RunConfig& config);
int cmd_mesh_export(const RunConfig& config);
int cmd_basis_export(const RunConfig& config);

}  // namespace holex
