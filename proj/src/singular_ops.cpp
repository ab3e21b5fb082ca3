#include "muskat/singular_ops.hpp"

#include <numbers>
#include <string>

namespace muskat {

namespace {

using kernels::odd_offset_assemble;
using kernels::odd_offset_sum;

constexpr double kInvPi = std::numbers::inv_pi;

void check_grid(const Grid& ref, const GridFunction& u, const char* what) {
  if (!(u.grid() == ref)) throw std::invalid_argument(std::string(what) + " lives on a different grid");
}

void check_cap(const Grid& g, std::size_t cap) {
  if (g.size() > cap) throw DenseCapExceeded(g.size(), cap);
}

// Kernel of B_{n,m} without the density factor.
class MultilinearKernel {
 public:
  MultilinearKernel(const KernelSpec& spec, const Grid& grid) {
    for (const auto& a : spec.a_list) {
      check_grid(grid, a, "denominator slope a_i");
      a_.push_back(a.values());
    }
    for (const auto& b : spec.b_list) {
      check_grid(grid, b, "numerator function b_i");
      b_.push_back(b.values());
    }
  }

  double operator()(std::size_t i, std::size_t j, double y) const {
    double v = 1.0 / y;
    for (const auto& b : b_) v *= (b[i] - b[j]) / y;
    for (const auto& a : a_) {
      const double q = (a[i] - a[j]) / y;
      v /= 1.0 + q * q;
    }
    return v;
  }

 private:
  std::vector<std::span<const double>> a_;
  std::vector<std::span<const double>> b_;
};

struct MuskatAKernel {
  std::span<const double> f;
  std::span<const double> fp;
  double operator()(std::size_t i, std::size_t j, double y) const {
    const double df = f[i] - f[j];
    return (y * fp[i] - df) / (y * y + df * df);
  }
};

struct MuskatBKernel {
  std::span<const double> f;
  std::span<const double> fp;
  double operator()(std::size_t i, std::size_t j, double y) const {
    const double df = f[i] - f[j];
    return (y + fp[i] * df) / (y * y + df * df);
  }
};

struct OscillatoryKernel {
  std::span<const double> a;
  std::complex<double> operator()(std::size_t i, std::size_t j, double y) const {
    return std::polar(1.0 / y, (a[i] - a[j]) / y);
  }
};

}  // namespace

DenseCapExceeded::DenseCapExceeded(std::size_t n_, std::size_t cap_)
    : std::length_error("dense assembly of size " + std::to_string(n_) + " exceeds cap " + std::to_string(cap_)),
      n(n_),
      cap(cap_) {}

GridFunction bnm_apply(const KernelSpec& spec, const GridFunction& omega, Backend backend) {
  const Grid& g = omega.grid();
  const MultilinearKernel kernel(spec, g);
  const auto w = omega.values();
  GridFunction out(g);
  odd_offset_sum<double>(
      g.size(), g.spacing(), 2.0 * g.spacing(), [&](std::size_t i, std::size_t j, double y) { return kernel(i, j, y) * w[j]; }, out.values(),
      backend);
  return out;
}

GridFunction op_A_apply(const GridFunction& f, const GridFunction& omega, Backend backend) {
  f.check_same_grid(omega);
  const Grid& g = f.grid();
  const GridFunction fp = derivative(f);
  const MuskatAKernel kernel{f.values(), fp.values()};
  const auto w = omega.values();
  GridFunction out(g);
  odd_offset_sum<double>(
      g.size(), g.spacing(), 2.0 * g.spacing() * kInvPi, [&](std::size_t i, std::size_t j, double y) { return kernel(i, j, y) * w[j]; },
      out.values(), backend);
  return out;
}

GridFunction op_B_apply(const GridFunction& f, const GridFunction& omega, Backend backend) {
  f.check_same_grid(omega);
  const Grid& g = f.grid();
  const GridFunction fp = derivative(f);
  const MuskatBKernel kernel{f.values(), fp.values()};
  const auto w = omega.values();
  GridFunction out(g);
  odd_offset_sum<double>(
      g.size(), g.spacing(), 2.0 * g.spacing() * kInvPi, [&](std::size_t i, std::size_t j, double y) { return kernel(i, j, y) * w[j]; },
      out.values(), backend);
  return out;
}

ComplexGridFunction t_a_apply(const GridFunction& a, const ComplexGridFunction& f, Backend backend) {
  if (!(a.grid() == f.grid())) throw std::invalid_argument("phase a and density f live on different grids");
  const Grid& g = a.grid();
  const OscillatoryKernel kernel{a.values()};
  const auto w = f.values();
  ComplexGridFunction out(g);
  odd_offset_sum<std::complex<double>>(
      g.size(), g.spacing(), 2.0 * g.spacing(), [&](std::size_t i, std::size_t j, double y) { return kernel(i, j, y) * w[j]; },
      out.values(), backend);
  return out;
}

ComplexGridFunction t_a_apply(const GridFunction& a, const GridFunction& f, Backend backend) {
  ComplexGridFunction fc(f.grid());
  for (std::size_t j = 0; j < f.size(); ++j) fc[j] = f[j];
  return t_a_apply(a, fc, backend);
}

DiscreteOperator assemble_dense(const MuskatA& op, std::size_t cap, Backend backend) {
  const Grid& g = op.f.grid();
  check_cap(g, cap);
  const GridFunction fp = derivative(op.f);
  const MuskatAKernel kernel{op.f.values(), fp.values()};
  const auto n = static_cast<Eigen::Index>(g.size());
  DiscreteOperator out{g, DiscreteOperator::Matrix(n, n)};
  odd_offset_assemble(g.size(), g.spacing(), 2.0 * g.spacing() * kInvPi, kernel, out.matrix, backend);
  return out;
}

DiscreteOperator assemble_dense(const MuskatB& op, std::size_t cap, Backend backend) {
  const Grid& g = op.f.grid();
  check_cap(g, cap);
  const GridFunction fp = derivative(op.f);
  const MuskatBKernel kernel{op.f.values(), fp.values()};
  const auto n = static_cast<Eigen::Index>(g.size());
  DiscreteOperator out{g, DiscreteOperator::Matrix(n, n)};
  odd_offset_assemble(g.size(), g.spacing(), 2.0 * g.spacing() * kInvPi, kernel, out.matrix, backend);
  return out;
}

DiscreteOperator assemble_dense(const MultilinearB& op, std::size_t cap, Backend backend) {
  const Grid& g = op.grid;
  check_cap(g, cap);
  const MultilinearKernel kernel(op.spec, g);
  const auto n = static_cast<Eigen::Index>(g.size());
  DiscreteOperator out{g, DiscreteOperator::Matrix(n, n)};
  odd_offset_assemble(g.size(), g.spacing(), 2.0 * g.spacing(), kernel, out.matrix, backend);
  return out;
}

ComplexDiscreteOperator assemble_dense(const OscillatoryT& op, std::size_t cap, Backend backend) {
  const Grid& g = op.a.grid();
  check_cap(g, cap);
  const OscillatoryKernel kernel{op.a.values()};
  const auto n = static_cast<Eigen::Index>(g.size());
  ComplexDiscreteOperator out{g, ComplexDiscreteOperator::Matrix(n, n)};
  odd_offset_assemble(g.size(), g.spacing(), 2.0 * g.spacing(), kernel, out.matrix, backend);
  return out;
}

}  // namespace muskat
