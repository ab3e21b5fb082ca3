#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "muskat/grid.hpp"
#include "muskat/kernels.hpp"

namespace muskat {

using kernels::Backend;

/// Arguments of the multilinear operator B_{n,m}(a_1..a_m)[b_1..b_n, .]:
///
///   x -> PV int omega(x-y)/y * prod_i (delta b_i / y) / prod_k [1 + (delta a_k / y)^2] dy
///
/// with delta u = u(x) - u(x - y).
struct KernelSpec {
  std::vector<GridFunction> a_list;  ///< denominator slopes (m entries)
  std::vector<GridFunction> b_list;  ///< numerator differences (n entries)
};

/// B_{n,m} applied to omega with the odd-offset rule.
GridFunction bnm_apply(const KernelSpec& spec, const GridFunction& omega, Backend backend = Backend::openmp);

/// Muskat operator A(f)[omega]; the slope f' is the spectral derivative.
GridFunction op_A_apply(const GridFunction& f, const GridFunction& omega, Backend backend = Backend::openmp);

/// Muskat operator B(f)[omega]; the slope f' is the spectral derivative.
GridFunction op_B_apply(const GridFunction& f, const GridFunction& omega, Backend backend = Backend::openmp);

/// Oscillatory operator T_a[f](x) = PV int f(x-y)/y exp(i (a(x) - a(x-y))/y) dy.
ComplexGridFunction t_a_apply(const GridFunction& a, const ComplexGridFunction& f,
                              Backend backend = Backend::openmp);
ComplexGridFunction t_a_apply(const GridFunction& a, const GridFunction& f, Backend backend = Backend::openmp);

/// Dense N x N quadrature matrix of a linear operator on a Grid.
template <class Scalar>
struct BasicDiscreteOperator {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Grid grid;
  Matrix matrix;

  BasicGridFunction<Scalar> apply(const BasicGridFunction<Scalar>& u) const {
    if (!(u.grid() == grid)) throw std::invalid_argument("operator and argument live on different grids");
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>> x(u.values().data(), n);
    BasicGridFunction<Scalar> out(grid);
    Eigen::Map<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>(out.values().data(), n) = matrix * x;
    return out;
  }
};

using DiscreteOperator = BasicDiscreteOperator<double>;
using ComplexDiscreteOperator = BasicDiscreteOperator<std::complex<double>>;

inline constexpr std::size_t kDefaultDenseCap = 4096;

class DenseCapExceeded : public std::length_error {
 public:
  DenseCapExceeded(std::size_t n, std::size_t cap);
  std::size_t n;
  std::size_t cap;
};

// Operators that can be assembled densely.
struct MuskatA {
  GridFunction f;
};
struct MuskatB {
  GridFunction f;
};
struct MultilinearB {
  Grid grid;
  KernelSpec spec;
};
struct OscillatoryT {
  GridFunction a;
};

DiscreteOperator assemble_dense(const MuskatA& op, std::size_t cap = kDefaultDenseCap,
                                Backend backend = Backend::openmp);
DiscreteOperator assemble_dense(const MuskatB& op, std::size_t cap = kDefaultDenseCap,
                                Backend backend = Backend::openmp);
DiscreteOperator assemble_dense(const MultilinearB& op, std::size_t cap = kDefaultDenseCap,
                                Backend backend = Backend::openmp);
ComplexDiscreteOperator assemble_dense(const OscillatoryT& op, std::size_t cap = kDefaultDenseCap,
                                       Backend backend = Backend::openmp);

struct NormEstimateOptions {
  int max_iter = 200;
  double rel_tol = 1e-10;
};

struct NormEstimate {
  double bound = 0.0;    ///< best lower bound for the l_p -> l_p norm found
  bool converged = true;
  int iterations = 0;
};

/// Estimates the discrete l_p operator norm, p in (1, inf). p = 2 returns the
/// largest singular value. Other p use the dual-vector power method, which
/// ascends monotonically; on hitting max_iter the best lower bound is
/// returned with converged = false.
NormEstimate operator_norm_estimate(const DiscreteOperator& op, double p, const NormEstimateOptions& opts = {});
NormEstimate operator_norm_estimate(const ComplexDiscreteOperator& op, double p,
                                    const NormEstimateOptions& opts = {});

}  // namespace muskat
