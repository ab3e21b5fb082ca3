#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "muskat/singular_ops.hpp"

namespace muskat {

namespace {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
double lp_norm(const Vec<Scalar>& v, double p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), p);
  return std::pow(s, 1.0 / p);
}

template <class Scalar>
Scalar unit_phase(Scalar v) {
  const double m = std::abs(v);
  return m == 0.0 ? Scalar(0) : v / m;
}

// Vector z with ||z||_q = 1 and <z, v> = ||v||_p, q the dual exponent.
template <class Scalar>
Vec<Scalar> dual_vector(const Vec<Scalar>& v, double p) {
  const double norm = lp_norm(v, p);
  Vec<Scalar> z(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    z(i) = unit_phase(v(i)) * std::pow(std::abs(v(i)) / norm, p - 1.0);
  }
  return z;
}

template <class Scalar>
NormEstimate estimate(const BasicDiscreteOperator<Scalar>& op, double p, const NormEstimateOptions& opts) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("norm exponent must lie in (1, inf)");
  const auto& a = op.matrix;
  if (a.rows() == 0 || a.isZero(0.0)) return {0.0, true, 0};

  if (p == 2.0) {
    Eigen::BDCSVD<typename BasicDiscreteOperator<Scalar>::Matrix> svd(a);
    return {svd.singularValues()(0), true, 1};
  }

  const double q = p / (p - 1.0);
  // Start from the unit vector whose image is largest.
  Eigen::Index best_col = 0;
  double best_col_norm = -1.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double c = lp_norm<Scalar>(a.col(j), p);
    if (c > best_col_norm) {
      best_col_norm = c;
      best_col = j;
    }
  }
  Vec<Scalar> x = Vec<Scalar>::Zero(a.cols());
  x(best_col) = Scalar(1);

  NormEstimate out{best_col_norm, false, 0};
  for (int it = 1; it <= opts.max_iter; ++it) {
    out.iterations = it;
    const Vec<Scalar> y = a * x;
    const double gamma = lp_norm(y, p);
    out.bound = std::max(out.bound, gamma);
    if (gamma == 0.0) {
      out.converged = true;
      break;
    }
    const Vec<Scalar> z = a.adjoint() * dual_vector(y, p);
    const double z_norm = lp_norm(z, q);
    const double z_dot_x = std::real(z.dot(x));
    if (z_norm <= z_dot_x * (1.0 + opts.rel_tol)) {
      out.converged = true;
      break;
    }
    x = dual_vector(z, q);
  }
  return out;
}

}  // namespace

NormEstimate operator_norm_estimate(const DiscreteOperator& op, double p, const NormEstimateOptions& opts) {
  return estimate(op, p, opts);
}

NormEstimate operator_norm_estimate(const ComplexDiscreteOperator& op, double p, const NormEstimateOptions& opts) {
  return estimate(op, p, opts);
}

}  // namespace muskat
