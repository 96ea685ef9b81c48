#pragma once

#include "anisospec/io.hpp"

namespace anisospec {

// Exit codes of the experiment driver.
//   0  all hard assertions of the invoked experiment pass
//   1  a hard assertion failed (artifacts are still written)
//   2  usage / schema error (nothing runs)
//   3  eigensolver non-convergence (partial artifacts retained and flagged)
enum ExitCode : int {
  exit_ok = 0,
  exit_assertion = 1,
  exit_usage = 2,
  exit_numeric = 3,
};

// Executes one experiment: resolves grids, runs the computation, writes the
// requested artifact files plus a manifest (config hash, toolkit version,
// wall time, per-record grid provenance), and returns the exit code.
int run(const ExperimentConfig& config);

} // namespace anisospec
