#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "trapent/config.hpp"

namespace trapent::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitNumericFailure = 2,
  kExitValidationFailure = 3,
};

// Writes the dataset for spectrum, entanglement or toy mode, starting with a
// provenance header (resolved config and version). Throws trapent::Error on
// numeric failure.
//
//   spectrum:      inv_as, branch, x, beta2
//   entanglement:  inv_as, branch, K, spatial_entropy, total_entropy, converged
//   toy:           g_over_gap, entropy
void write_dataset(const RunConfig& cfg, std::ostream& out);

// Runs the acceptance checks, reports one line per check on `out`, and
// returns true when all pass.
using Validator = std::function<bool(std::ostream& out)>;

// Executes cfg, writing to cfg.output_path (or stdout when empty). Diagnostics
// and warnings go to `diag`. Returns an ExitCode.
int run(const RunConfig& cfg, std::ostream& diag, const Validator& validator = {});

}  // namespace trapent::cli
