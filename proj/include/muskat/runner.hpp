#pragma once

#include <cstdint>

#include "muskat/config.hpp"
#include "muskat/grid.hpp"
#include "muskat/trajectory.hpp"

namespace muskat {

/// Process exit codes of the experiment runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitRtStop = 2,
  kExitNumericalFailure = 3,
};

struct RunFlags {
  std::uint64_t seed = 0;  ///< seeds the noise added to the initial data
  bool quiet = false;
};

/// Initial interface from the config:
///   gaussian   amplitude * exp(-x^2 / (2 w^2))
///   mode       amplitude * cos(k0 x) * exp(-x^2 / (2 (L/11)^2)), k0 snapped to
///              the nearest discrete wavenumber pi m / L, m >= 1
///   bump_file  samples loaded from CSV or raw, which must match the grid
/// plus noise * U(-1, 1) under the same L/11 window when noise > 0.
GridFunction build_initial_data(const RunConfig& cfg, std::uint64_t seed);

/// Runs the experiment and writes meta.json, records.csv and (optionally)
/// snap_NNNNNN.f64 into cfg.output.dir. Returns the exit code for the stop
/// reason.
int execute(const RunConfig& cfg, const RunFlags& flags);

int exit_code(StopReason reason);

}  // namespace muskat
