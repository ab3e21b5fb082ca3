#include "muskat/evolution.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "muskat/singular_ops.hpp"

namespace muskat {

namespace {

constexpr double kInvPi = std::numbers::inv_pi;

GridFunction axpy(const GridFunction& x, double a, const GridFunction& y) {
  GridFunction out = x;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += a * y[j];
  return out;
}

}  // namespace

CflViolation::CflViolation(double dt_, double admissible)
    : std::runtime_error("rk4 step dt = " + std::to_string(dt_) + " exceeds the admissible dt = " +
                         std::to_string(admissible)),
      dt(dt_),
      admissible_dt(admissible) {}

NonPositiveSymbol::NonPositiveSymbol(double min_alpha_)
    : std::runtime_error("IMEX step needs alpha > 0 everywhere (min alpha = " + std::to_string(min_alpha_) +
                         "); use the rk4 scheme outside the Rayleigh-Taylor stable set"),
      min_alpha(min_alpha_) {}

Velocity evaluate_velocity(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg) {
  GridFunction omega = solve_omega(f, constants, cfg);
  GridFunction velocity = op_B_apply(f, omega);
  return {std::move(omega), std::move(velocity)};
}

GridFunction phi(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg) {
  return evaluate_velocity(f, derive_constants(params), cfg).phi;
}

GridFunction dphi(const GridFunction& f0, const GridFunction& direction, const FluidParams& params,
                  const SolverConfig& cfg) {
  f0.check_same_grid(direction);
  const DerivedConstants c = derive_constants(params);
  const Grid& grid = f0.grid();

  const GridFunction omega0 = solve_omega(f0, c, cfg);
  const GridFunction fp0 = derivative(f0);
  const GridFunction gp = derivative(direction);

  // Terms shared by dB and dA.
  const GridFunction b22 = bnm_apply({{f0, f0}, {f0, direction}}, omega0);
  const GridFunction b32 = bnm_apply({{f0, f0}, {f0, f0, direction}}, omega0);
  const GridFunction b11_g = bnm_apply({{f0}, {direction}}, omega0);
  const GridFunction b11_f = bnm_apply({{f0}, {f0}}, omega0);
  const GridFunction b01 = bnm_apply({{f0}, {}}, omega0);

  GridFunction d_b(grid);
  GridFunction d_a(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    d_b[j] = kInvPi * (-2.0 * b22[j] + gp[j] * b11_f[j] + fp0[j] * b11_g[j] - 2.0 * fp0[j] * b32[j]);
    d_a[j] = kInvPi * (gp[j] * b01[j] - 2.0 * fp0[j] * b22[j] - b11_g[j] + 2.0 * b32[j]);
  }

  // (1 + a_mu A(f0)) d_omega = -a_mu dA(f0)[g][omega0] - C_Theta g'
  GridFunction rhs(grid);
  for (std::size_t j = 0; j < grid.size(); ++j) rhs[j] = -c.a_mu * d_a[j] - c.C_Theta * gp[j];
  const GridFunction d_omega = solve_vorticity_system(f0, c.a_mu, rhs, cfg).omega;

  return d_b + op_B_apply(f0, d_omega);
}

LocalSymbol local_symbol(const GridFunction& f0, const DerivedConstants& constants, const Velocity& velocity) {
  const Grid& grid = f0.grid();
  const GridFunction fp0 = derivative(f0);
  const GridFunction b11 = bnm_apply({{f0}, {f0}}, velocity.omega);
  LocalSymbol out{GridFunction(grid), GridFunction(grid)};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double slope = 1.0 + fp0[j] * fp0[j];
    out.alpha[j] = (constants.C_Theta + constants.a_mu * velocity.phi[j]) / slope;
    out.beta[j] = kInvPi * b11[j] - constants.a_mu * velocity.omega[j] / slope;
  }
  return out;
}

LocalSymbol local_symbol(const GridFunction& f0, const FluidParams& params, const SolverConfig& cfg) {
  const DerivedConstants c = derive_constants(params);
  return local_symbol(f0, c, evaluate_velocity(f0, c, cfg));
}

double admissible_rk4_dt(const GridFunction& f, const DerivedConstants& constants, const GridFunction& phi_f,
                         double cfl_safety) {
  const GridFunction fp = derivative(f);
  double max_alpha = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double alpha = (constants.C_Theta + constants.a_mu * phi_f[j]) / (1.0 + fp[j] * fp[j]);
    max_alpha = std::max(max_alpha, std::abs(alpha));
  }
  if (max_alpha == 0.0) return std::numeric_limits<double>::infinity();
  return cfl_safety * f.grid().spacing() / max_alpha;
}

GridFunction step_rk4(const GridFunction& f, const GridFunction& phi_f, double dt, const DerivedConstants& constants,
                      const SolverConfig& cfg, double cfl_safety) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double admissible = admissible_rk4_dt(f, constants, phi_f, cfl_safety);
  if (dt > admissible * (1.0 + 1e-12)) throw CflViolation(dt, admissible);

  auto rhs = [&](const GridFunction& u) { return evaluate_velocity(u, constants, cfg).phi; };
  const GridFunction& k1 = phi_f;
  const GridFunction k2 = rhs(axpy(f, 0.5 * dt, k1));
  const GridFunction k3 = rhs(axpy(f, 0.5 * dt, k2));
  const GridFunction k4 = rhs(axpy(f, dt, k3));

  GridFunction out = f;
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  return out;
}

GridFunction step_rk4(const GridFunction& f, double dt, const FluidParams& params, const SolverConfig& cfg,
                      double cfl_safety) {
  const DerivedConstants c = derive_constants(params);
  return step_rk4(f, evaluate_velocity(f, c, cfg).phi, dt, c, cfg, cfl_safety);
}

GridFunction step_imex(const GridFunction& f, const Velocity& velocity, double dt, const DerivedConstants& constants) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  // Theta = 0: Phi vanishes identically and the state is stationary.
  if (constants.C_Theta == 0.0) return f;

  const LocalSymbol symbol = local_symbol(f, constants, velocity);
  double min_alpha = std::numeric_limits<double>::infinity();
  double max_alpha = -std::numeric_limits<double>::infinity();
  for (double a : symbol.alpha.values()) {
    min_alpha = std::min(min_alpha, a);
    max_alpha = std::max(max_alpha, a);
  }
  if (!(min_alpha > 0.0)) throw NonPositiveSymbol(min_alpha);

  const GridFunction lambda_f = half_laplacian(f);
  GridFunction rhs = f;
  for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] += dt * (velocity.phi[j] + max_alpha * lambda_f[j]);
  return resolvent_half_laplacian(rhs, dt * max_alpha);
}

GridFunction step_imex(const GridFunction& f, double dt, const FluidParams& params, const SolverConfig& cfg) {
  const DerivedConstants c = derive_constants(params);
  return step_imex(f, evaluate_velocity(f, c, cfg), dt, c);
}

}  // namespace muskat
