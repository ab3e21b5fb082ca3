#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "muskat/diagnostics.hpp"
#include "muskat/evolution.hpp"

namespace muskat {

enum class StopReason {
  completed,          ///< reached t_end
  rt_margin,          ///< Rayleigh-Taylor margin turned non-positive with stop_on_rt set
  numerical_failure,  ///< non-finite state, step-size violation or failed solve
};

struct Snapshot {
  std::size_t step = 0;
  double t = 0.0;
  GridFunction f;
};

struct RunOptions {
  SobolevIndex sobolev{};
  double tail_tol = kDefaultTailTolerance;
  double blow_up = 1e100;  ///< sup|f| above this counts as numerical failure
};

struct RunResult {
  std::vector<Snapshot> snapshots;  ///< states at the recorded steps
  std::vector<TrajectoryRecord> records;
  StopReason stop = StopReason::completed;
  std::string message;
  std::size_t steps = 0;  ///< completed time steps
  bool rt_violated = false;
};

/// Integrates f_t = Phi(f) from f0 to stepper.t_end. Records diagnostics and
/// a snapshot every record_every steps and at the final state. On numerical
/// failure the last good state is the final snapshot. Throws
/// std::invalid_argument if f0 does not decay inside the window.
RunResult run(const GridFunction& f0, const FluidParams& params, const StepperConfig& stepper,
              const SolverConfig& cfg = {}, const RunOptions& opts = {});

std::string_view to_string(StopReason reason);

}  // namespace muskat
