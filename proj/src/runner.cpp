#include "muskat/runner.hpp"

#include <json.hpp>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "muskat/io.hpp"
#include "muskat/version.hpp"

namespace muskat {

namespace {

double window_width(const Grid& grid) { return grid.half_width() / 11.0; }

std::string snapshot_name(std::size_t step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06zu.f64", step);
  return buf;
}

std::string_view scheme_name(Scheme s) { return s == Scheme::rk4 ? "rk4" : "imex"; }

}  // namespace

int exit_code(StopReason reason) {
  switch (reason) {
    case StopReason::completed:
      return kExitOk;
    case StopReason::rt_margin:
      return kExitRtStop;
    case StopReason::numerical_failure:
      return kExitNumericalFailure;
  }
  return kExitNumericalFailure;
}

GridFunction build_initial_data(const RunConfig& cfg, std::uint64_t seed) {
  const Grid grid(cfg.L, cfg.N);
  const InitialSpec& init = cfg.initial;
  const double sigma = window_width(grid);

  GridFunction f(grid);
  switch (init.kind) {
    case InitialKind::gaussian: {
      const double w = init.width_or_wavenumber;
      f = GridFunction::from_function(grid, [&](double x) { return init.amplitude * std::exp(-x * x / (2 * w * w)); });
      break;
    }
    case InitialKind::mode: {
      // Snap to a discrete mode so the perturbation is a single Fourier mode
      // up to the window.
      const double step = std::numbers::pi / grid.half_width();
      const double m = std::max(1.0, std::round(init.width_or_wavenumber / step));
      const double k0 = m * step;
      f = GridFunction::from_function(grid, [&](double x) {
        return init.amplitude * std::cos(k0 * x) * std::exp(-x * x / (2 * sigma * sigma));
      });
      break;
    }
    case InitialKind::bump_file: {
      f = io::load_grid_function(init.path);
      if (!(f.grid() == grid)) {
        throw ConfigError({"initial.path: file grid (L = " + std::to_string(f.grid().half_width()) + ", N = " +
                           std::to_string(f.grid().size()) + ") does not match grid.L/grid.N"});
      }
      break;
    }
  }

  if (init.noise > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double x = grid.node(j);
      f[j] += init.noise * uniform(rng) * std::exp(-x * x / (2 * sigma * sigma));
    }
  }
  return f;
}

int execute(const RunConfig& cfg, const RunFlags& flags) {
  const DerivedConstants c = derive_constants(cfg.fluids);
  const GridFunction f0 = build_initial_data(cfg, flags.seed);

  if (!flags.quiet) {
    spdlog::info("grid L = {}, N = {}; a_mu = {:.6g}, C_Theta = {:.6g}, Theta = {:.6g}", cfg.L, cfg.N, c.a_mu,
                 c.C_Theta, c.Theta);
  }

  RunOptions opts;
  opts.sobolev = cfg.sobolev;
  const RunResult result = run(f0, cfg.fluids, cfg.stepper, cfg.solver, opts);

  std::filesystem::create_directories(cfg.output.dir);
  {
    std::ofstream os(cfg.output.dir / "records.csv", std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + (cfg.output.dir / "records.csv").string());
    write_records_csv(os, result.records);
  }
  if (cfg.output.snapshots) {
    for (const Snapshot& s : result.snapshots) io::save_raw(cfg.output.dir / snapshot_name(s.step), s.f);
  }

  const int code = exit_code(result.stop);
  nlohmann::ordered_json meta;
  meta["version"] = kVersion;
  meta["a_mu"] = c.a_mu;
  meta["C_Theta"] = c.C_Theta;
  meta["Theta"] = c.Theta;
  meta["grid"] = {{"L", cfg.L}, {"N", cfg.N}, {"h", 2.0 * cfg.L / static_cast<double>(cfg.N)}};
  meta["initial"] = {{"kind", to_string(cfg.initial.kind)},
                     {"amplitude", cfg.initial.amplitude},
                     {"width_or_wavenumber", cfg.initial.width_or_wavenumber},
                     {"noise", cfg.initial.noise}};
  meta["seed"] = flags.seed;
  meta["scheme"] = scheme_name(cfg.stepper.scheme);
  meta["dt"] = cfg.stepper.dt;
  meta["t_end"] = cfg.stepper.t_end;
  meta["steps"] = result.steps;
  meta["stop_reason"] = to_string(result.stop);
  meta["message"] = result.message;
  meta["rt_violated"] = result.rt_violated;
  meta["exit_code"] = code;
  {
    std::ofstream os(cfg.output.dir / "meta.json");
    if (!os) throw std::runtime_error("cannot write " + (cfg.output.dir / "meta.json").string());
    os << meta.dump(2) << '\n';
  }

  if (!flags.quiet) {
    spdlog::info("stopped: {} after {} steps ({} records) -> {}", to_string(result.stop), result.steps,
                 result.records.size(), cfg.output.dir.string());
  }
  return code;
}

}  // namespace muskat
