#include "muskat/trajectory.hpp"

#include <spdlog/spdlog.h>

#include <cmath>
#include <optional>
#include <stdexcept>

namespace muskat {

namespace {

bool finite_and_bounded(const GridFunction& f, double bound) {
  for (double v : f.values()) {
    if (!std::isfinite(v) || std::abs(v) > bound) return false;
  }
  return true;
}

class Recorder {
 public:
  Recorder(const DerivedConstants& constants, const RunOptions& opts, RunResult& out)
      : constants_(constants), opts_(opts), out_(out) {}

  void record(std::size_t step, double t, const GridFunction& f, const Velocity& v) {
    if (!out_.snapshots.empty() && out_.snapshots.back().step == step) return;
    TrajectoryRecord r;
    r.t = t;
    r.rt_margin = rt_margin(constants_, v.phi);
    r.sup_f = f.sup_norm();
    r.sup_omega = v.omega.sup_norm();
    r.ws_norm = sobolev_norm(f, opts_.sobolev);
    r.critical_seminorm = critical_seminorm(f, opts_.sobolev.p);
    r.tail_mass = spectral_tail(f).tail_mass;

    // Follow one mode: as lower modes decay more slowly, the largest
    // amplitude would otherwise switch between modes.
    if (!tracked_mode_) tracked_mode_ = dominant_mode_index(f);
    const double amp = mode_amplitudes(f)[*tracked_mode_];
    if (amp > 0.0) {
      times_.push_back(t);
      log_amp_.push_back(std::log(amp));
    }
    if (const auto slope = least_squares_slope(times_, log_amp_)) r.fitted_decay_rate = -*slope;

    out_.records.push_back(r);
    out_.snapshots.push_back(Snapshot{step, t, f});
  }

 private:
  const DerivedConstants& constants_;
  const RunOptions& opts_;
  RunResult& out_;
  std::optional<std::size_t> tracked_mode_;
  std::vector<double> times_;
  std::vector<double> log_amp_;
};

}  // namespace

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::completed:
      return "completed";
    case StopReason::rt_margin:
      return "rt_margin";
    case StopReason::numerical_failure:
      return "numerical_failure";
  }
  return "unknown";
}

RunResult run(const GridFunction& f0, const FluidParams& params, const StepperConfig& stepper,
              const SolverConfig& cfg, const RunOptions& opts) {
  if (!(stepper.dt > 0.0)) throw std::invalid_argument("stepper.dt must be positive");
  if (!(stepper.t_end >= 0.0)) throw std::invalid_argument("stepper.t_end must be non-negative");
  if (stepper.record_every == 0) throw std::invalid_argument("stepper.record_every must be at least 1");
  if (!is_decaying(f0, opts.tail_tol)) {
    throw std::invalid_argument("initial interface does not decay inside the window (|f| > tail tolerance for |x| >= 3L/4)");
  }
  opts.sobolev.validate();

  const DerivedConstants c = derive_constants(params);
  const auto n_steps = static_cast<std::size_t>(std::ceil(stepper.t_end / stepper.dt - 1e-9));

  RunResult out;
  Recorder recorder(c, opts, out);
  GridFunction f = f0;
  double t = 0.0;
  std::size_t step = 0;

  auto fail = [&](const std::string& why) {
    out.stop = StopReason::numerical_failure;
    out.message = why;
    spdlog::error("step {} (t = {:.6g}): {}", step, t, why);
  };

  while (true) {
    std::optional<Velocity> velocity;
    try {
      velocity = evaluate_velocity(f, c, cfg);
    } catch (const std::exception& e) {
      fail(e.what());
      break;
    }
    const Velocity& v = *velocity;

    if (step % stepper.record_every == 0 || step == n_steps) recorder.record(step, t, f, v);
    if (step == n_steps) break;

    // Theta = 0 gives a zero margin but trivial dynamics, so it is not a violation.
    const double margin = rt_margin(c, v.phi);
    if (c.Theta != 0.0 && !(margin > 0.0)) {
      if (!out.rt_violated) spdlog::warn("Rayleigh-Taylor margin {:.3e} <= 0 at t = {:.6g}", margin, t);
      out.rt_violated = true;
      if (stepper.stop_on_rt) {
        recorder.record(step, t, f, v);
        out.stop = StopReason::rt_margin;
        out.message = "Rayleigh-Taylor margin became non-positive";
        break;
      }
    }

    const double dt = std::min(stepper.dt, stepper.t_end - t);
    std::optional<GridFunction> next;
    try {
      next = stepper.scheme == Scheme::rk4 ? step_rk4(f, v.phi, dt, c, cfg, stepper.cfl_safety)
                                           : step_imex(f, v, dt, c);
    } catch (const std::exception& e) {
      recorder.record(step, t, f, v);
      fail(e.what());
      break;
    }
    if (!finite_and_bounded(*next, opts.blow_up)) {
      recorder.record(step, t, f, v);
      fail("state became non-finite or exceeded the blow-up bound");
      break;
    }

    f = std::move(*next);
    ++step;
    t = step == n_steps ? stepper.t_end : static_cast<double>(step) * stepper.dt;
  }
  out.steps = step;
  return out;
}

}  // namespace muskat
