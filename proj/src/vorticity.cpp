#include "muskat/vorticity.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <spdlog/spdlog.h>

#include <cmath>
#include <string>

namespace muskat {

namespace {

double residual_norm(const GridFunction& f, double a_mu, const GridFunction& omega, const GridFunction& rhs) {
  const GridFunction a_omega = op_A_apply(f, omega);
  double r = 0.0;
  for (std::size_t j = 0; j < omega.size(); ++j) r = std::max(r, std::abs(omega[j] + a_mu * a_omega[j] - rhs[j]));
  return r;
}

struct FixedPointOutcome {
  bool converged = false;
  SolveReport report;
};

FixedPointOutcome fixed_point(const GridFunction& f, double a_mu, const GridFunction& rhs, const SolverConfig& cfg,
                              double target) {
  const double blow_up = 1e6 * rhs.sup_norm();
  GridFunction omega = rhs;
  FixedPointOutcome out{false, SolveReport{rhs}};
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const GridFunction a_omega = op_A_apply(f, omega);
    // r = omega + a A omega - rhs; the next iterate is omega - r.
    double r = 0.0;
    GridFunction next(f.grid());
    for (std::size_t j = 0; j < omega.size(); ++j) {
      const double rj = omega[j] + a_mu * a_omega[j] - rhs[j];
      r = std::max(r, std::abs(rj));
      next[j] = rhs[j] - a_mu * a_omega[j];
    }
    out.report.iterations = it;
    out.report.residual = r;
    if (!std::isfinite(r) || r > blow_up) break;
    if (r <= target) {
      out.converged = true;
      out.report.omega = std::move(omega);
      return out;
    }
    omega = std::move(next);
  }
  return out;
}

SolveReport dense_solve(const GridFunction& f, double a_mu, const GridFunction& rhs, const SolverConfig& cfg,
                        double target) {
  const DiscreteOperator a_op = assemble_dense(MuskatA{f}, cfg.dense_cap);
  const auto n = static_cast<Eigen::Index>(f.size());
  Eigen::MatrixXd system = a_mu * a_op.matrix;
  system.diagonal().array() += 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  const Eigen::Map<const Eigen::VectorXd> b(rhs.values().data(), n);
  Eigen::VectorXd x = lu.solve(b);
  // Two refinement sweeps against the assembled matrix.
  for (int sweep = 0; sweep < 2; ++sweep) {
    const Eigen::VectorXd r = b - system * x;
    x += lu.solve(r);
  }

  GridFunction omega(f.grid(), std::vector<double>(x.data(), x.data() + n));
  const double res = residual_norm(f, a_mu, omega, rhs);
  if (!std::isfinite(res) || res > target) {
    const Eigen::BDCSVD<Eigen::MatrixXd> svd(system);
    throw SingularSystemError(svd.singularValues()(n - 1), res);
  }
  return SolveReport{std::move(omega), SolveMethod::dense, 1, res, false};
}

}  // namespace

SingularSystemError::SingularSystemError(double sigma_min, double res)
    : std::runtime_error("vorticity system 1 + a_mu A(f) is numerically singular: smallest singular value " +
                         std::to_string(sigma_min) + ", residual " + std::to_string(res)),
      smallest_singular_value(sigma_min),
      residual(res) {}

SolveReport solve_vorticity_system(const GridFunction& f, double a_mu, const GridFunction& rhs,
                                   const SolverConfig& cfg) {
  f.check_same_grid(rhs);
  if (!(std::abs(a_mu) < 1.0)) throw std::invalid_argument("Atwood number must satisfy |a_mu| < 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("solver tolerance must be positive");

  const double rhs_norm = rhs.sup_norm();
  if (a_mu == 0.0 || rhs_norm == 0.0) return SolveReport{rhs, cfg.method, 0, 0.0, false};
  const double target = cfg.tol * rhs_norm;

  if (cfg.method == SolveMethod::dense) return dense_solve(f, a_mu, rhs, cfg, target);

  FixedPointOutcome fp = fixed_point(f, a_mu, rhs, cfg, target);
  if (fp.converged) return std::move(fp.report);

  spdlog::warn("vorticity fixed point did not converge after {} iterations (residual {:.3e}); using dense solve",
               fp.report.iterations, fp.report.residual);
  SolveReport dense = dense_solve(f, a_mu, rhs, cfg, target);
  dense.fell_back = true;
  dense.iterations += fp.report.iterations;
  return dense;
}

SolveReport solve_omega_report(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg) {
  GridFunction rhs = derivative(f);
  rhs *= -constants.C_Theta;
  return solve_vorticity_system(f, constants.a_mu, rhs, cfg);
}

GridFunction solve_omega(const GridFunction& f, const DerivedConstants& constants, const SolverConfig& cfg) {
  return solve_omega_report(f, constants, cfg).omega;
}

GridFunction solve_omega(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg) {
  return solve_omega(f, derive_constants(params), cfg);
}

}  // namespace muskat
