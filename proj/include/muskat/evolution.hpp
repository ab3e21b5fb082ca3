#pragma once

#include <stdexcept>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/vorticity.hpp"

namespace muskat {

/// Vorticity and interface velocity at one state f.
struct Velocity {
  GridFunction omega;  ///< omega(f)
  GridFunction phi;    ///< Phi(f) = B(f)[omega(f)]
};

Velocity evaluate_velocity(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg = {});

/// Phi(f) = B(f)[omega(f)], the right-hand side of f_t = Phi(f).
GridFunction phi(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg = {});

/// Frechet derivative dPhi(f0)[direction], assembled from B_{n,m} terms and
/// one linear solve for the vorticity perturbation.
GridFunction dphi(const GridFunction& f0, const GridFunction& direction, const FluidParams& params,
                  const SolverConfig& cfg = {});

/// Coefficients of the frozen multiplier -alpha Lambda + beta d/dx that
/// approximates dPhi(f0) locally.
struct LocalSymbol {
  GridFunction alpha;  ///< (C_Theta + a_mu Phi(f0)) / (1 + f0'^2)
  GridFunction beta;   ///< B_{1,1}(f0)[f0, omega0]/pi - a_mu omega0 / (1 + f0'^2)
};

LocalSymbol local_symbol(const GridFunction& f0, const FluidParams& params, const SolverConfig& cfg = {});
LocalSymbol local_symbol(const GridFunction& f0, const DerivedConstants& constants, const Velocity& velocity);

enum class Scheme { rk4, imex };

struct StepperConfig {
  Scheme scheme = Scheme::rk4;
  double dt = 1e-2;
  double cfl_safety = 0.5;
  double t_end = 1.0;
  std::size_t record_every = 1;
  bool stop_on_rt = true;  ///< stop when the Rayleigh-Taylor margin turns non-positive
};

/// Step size above cfl_safety * h / max|alpha|.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(double dt, double admissible_dt);
  double dt;
  double admissible_dt;
};

/// IMEX step requested where alpha is not positive.
class NonPositiveSymbol : public std::runtime_error {
 public:
  explicit NonPositiveSymbol(double min_alpha);
  double min_alpha;
};

/// Largest rk4 step allowed at f: cfl_safety * h / max|alpha| (infinite when
/// alpha vanishes).
double admissible_rk4_dt(const GridFunction& f, const DerivedConstants& constants, const GridFunction& phi_f,
                         double cfl_safety);

/// Classical four-stage Runge-Kutta step of f_t = Phi(f).
GridFunction step_rk4(const GridFunction& f, double dt, const FluidParams& params, const SolverConfig& cfg = {},
                      double cfl_safety = 0.5);
/// Same, reusing a known Phi(f) for the first stage.
GridFunction step_rk4(const GridFunction& f, const GridFunction& phi_f, double dt, const DerivedConstants& constants,
                      const SolverConfig& cfg, double cfl_safety);

/// Semi-implicit step (1 + dt a Lambda) f_new = f + dt (Phi(f) + a Lambda f)
/// with the scalar a = max alpha.
GridFunction step_imex(const GridFunction& f, double dt, const FluidParams& params, const SolverConfig& cfg = {});
GridFunction step_imex(const GridFunction& f, const Velocity& velocity, double dt, const DerivedConstants& constants);

}  // namespace muskat
