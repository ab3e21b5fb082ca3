#pragma once

#include <cstddef>
#include <stdexcept>

#include "muskat/grid.hpp"
#include "muskat/params.hpp"
#include "muskat/singular_ops.hpp"

namespace muskat {

enum class SolveMethod { fixed_point, dense };

struct SolverConfig {
  SolveMethod method = SolveMethod::fixed_point;
  double tol = 1e-11;  ///< relative residual tolerance
  int max_iter = 500;
  std::size_t dense_cap = kDefaultDenseCap;
};

/// Thrown when the dense system I + a_mu A(f) cannot be solved to tolerance.
class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(double smallest_singular_value, double residual);
  double smallest_singular_value;
  double residual;
};

struct SolveReport {
  GridFunction omega;
  SolveMethod method_used = SolveMethod::fixed_point;
  int iterations = 0;
  double residual = 0.0;      ///< ||omega + a_mu A(f) omega - rhs||_inf
  bool fell_back = false;     ///< fixed point failed and the dense path ran
};

/// Solves (1 + a_mu A(f))[omega] = rhs so that the residual is at most
/// tol * ||rhs||_inf. The fixed point iteration falls back to a dense LU
/// solve (with a logged warning) if it stalls or diverges.
SolveReport solve_vorticity_system(const GridFunction& f, double a_mu, const GridFunction& rhs,
                                   const SolverConfig& cfg);

/// omega(f) = -C_Theta (1 + a_mu A(f))^{-1} f'.
SolveReport solve_omega_report(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg);
GridFunction solve_omega(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg = {});
GridFunction solve_omega(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg = {});

}  // namespace muskat
