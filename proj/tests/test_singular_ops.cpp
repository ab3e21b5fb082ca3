#include <doctest.h>

#include <complex>

#include "muskat/io.hpp"
#include "muskat/singular_ops.hpp"
#include "oracles.hpp"

using namespace muskat;
using oracle::pi;

namespace {

/// pi H u on the real line, via the periodic multiplier on a much wider
/// window (the monopole far field of u decays only like 1/x).
GridFunction padded_pi_hilbert(const GridFunction& u, std::size_t factor = 32) {
  GridFunction wide = hilbert(oracle::zero_pad(u, factor));
  wide *= pi;
  return oracle::restrict_center(wide, u.grid());
}

/// Reference magnitude for relative checks.
double bnm_scale(const KernelSpec& spec, const GridFunction& omega) {
  return std::max(bnm_apply(spec, omega).sup_norm(), omega.sup_norm());
}

}  // namespace

TEST_CASE("B00 reproduces pi times the Hilbert transform") {
  const Grid grid(40.0, 1024);
  const GridFunction omega = oracle::gaussian(grid, 1.0);
  const GridFunction b00 = bnm_apply({{}, {}}, omega);
  CHECK(oracle::rel_diff(b00, padded_pi_hilbert(omega, 8)) < 1e-3);
}

TEST_CASE("B00 converges under grid refinement") {
  std::vector<GridFunction> levels;
  for (std::size_t n : {32u, 64u, 128u}) levels.push_back(bnm_apply({{}, {}}, oracle::gaussian(Grid(20.0, n), 1.0)));
  auto coarse_diff = [](const GridFunction& c, const GridFunction& f) {
    double d = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) d = std::max(d, std::abs(c[j] - f[2 * j]));
    return d;
  };
  const double d1 = coarse_diff(levels[0], levels[1]);
  const double d2 = coarse_diff(levels[1], levels[2]);
  // At least second order; in practice spectral.
  CHECK(d1 > 1e-8);
  CHECK(std::log2(d1 / d2) >= 2.0);
}

TEST_CASE("constant numerator slope annihilates B") {
  const Grid grid(10.0, 128);
  const GridFunction omega = oracle::random_smooth(grid, 2);
  const auto one = GridFunction::from_function(grid, [](double) { return 1.0; });
  const GridFunction a = oracle::random_smooth(grid, 3);
  CHECK(bnm_apply({{a}, {one}}, omega).sup_norm() == 0.0);
}

TEST_CASE("commutator identity for B_{n,m}") {
  // phi B[b1, b2, w] - B[b1, b2, phi w] = b1 B[b2, phi, w] - B[b2, phi, b1 w]
  const Grid grid(10.0, 512);
  const GridFunction a1 = oracle::random_smooth(grid, 21);
  const GridFunction b1 = oracle::random_smooth(grid, 22);
  const GridFunction b2 = oracle::random_smooth(grid, 23);
  const GridFunction ph = oracle::random_smooth(grid, 24);
  const GridFunction w = oracle::random_smooth(grid, 25);

  const GridFunction lhs = pointwise_product(ph, bnm_apply({{a1}, {b1, b2}}, w)) -
                           bnm_apply({{a1}, {b1, b2}}, pointwise_product(ph, w));
  const GridFunction rhs = pointwise_product(b1, bnm_apply({{a1}, {b2, ph}}, w)) -
                           bnm_apply({{a1}, {b2, ph}}, pointwise_product(b1, w));
  const double scale = std::max({bnm_scale({{a1}, {b1, b2}}, w), 1.0});
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * scale);
}

TEST_CASE("slope difference identity for B_{n,m}") {
  // B(a~1, a~2)[b, w] - B(a1, a2)[b, w]
  //   = B(a~1, a1, a2)[b, a1 + a~1, a1 - a~1, w] + B(a~1, a~2, a2)[b, a2 + a~2, a2 - a~2, w]
  const Grid grid(10.0, 512);
  const GridFunction a1 = oracle::random_smooth(grid, 31);
  const GridFunction a2 = oracle::random_smooth(grid, 32);
  const GridFunction t1 = oracle::random_smooth(grid, 33);
  const GridFunction t2 = oracle::random_smooth(grid, 34);
  const GridFunction b = oracle::random_smooth(grid, 35);
  const GridFunction w = oracle::random_smooth(grid, 36);

  const GridFunction lhs = bnm_apply({{t1, t2}, {b}}, w) - bnm_apply({{a1, a2}, {b}}, w);
  const GridFunction rhs = bnm_apply({{t1, a1, a2}, {b, a1 + t1, a1 - t1}}, w) +
                           bnm_apply({{t1, t2, a2}, {b, a2 + t2, a2 - t2}}, w);
  const double scale = std::max(bnm_scale({{t1, t2}, {b}}, w), bnm_scale({{a1, a2}, {b}}, w));
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * scale);
}

TEST_CASE("Muskat operator A") {
  const Grid grid(10.0, 256);
  const GridFunction omega = oracle::random_smooth(grid, 41);
  const GridFunction f = oracle::random_smooth(grid, 42, 0.8);

  SUBCASE("flat interface") { CHECK(op_A_apply(GridFunction(grid), omega).sup_norm() == 0.0); }
  SUBCASE("decomposition into B01 and B11") {
    GridFunction expected = pointwise_product(derivative(f), bnm_apply({{f}, {}}, omega)) - bnm_apply({{f}, {f}}, omega);
    expected *= 1.0 / pi;
    CHECK(max_abs_diff(op_A_apply(f, omega), expected) <= 1e-12 * std::max(1.0, expected.sup_norm()));
  }
  SUBCASE("affine interface over the support of omega") {
    // f is affine on [-4, 4]; omega lives well inside it.
    const Grid g(20.0, 512);
    const auto line = GridFunction::from_function(g, [](double x) { return 0.3 * x * std::exp(-std::pow(x / 9.0, 16)); });
    const GridFunction w = oracle::gaussian(g, 0.3);
    const GridFunction a = op_A_apply(line, w);
    double inside = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (std::abs(g.node(j)) < 1.5) inside = std::max(inside, std::abs(a[j]));
    }
    CHECK(inside < 1e-10);
  }
}

TEST_CASE("Muskat operator B") {
  const Grid grid(10.0, 256);
  const GridFunction omega = oracle::random_smooth(grid, 51);
  const GridFunction f = oracle::random_smooth(grid, 52, 0.8);
  SUBCASE("flat interface gives the Hilbert transform") {
    const GridFunction expected = (1.0 / pi) * padded_pi_hilbert(omega);
    CHECK(oracle::rel_diff(op_B_apply(GridFunction(grid), omega), expected) < 1e-3);
  }
  SUBCASE("decomposition into B01 and B11") {
    GridFunction expected = bnm_apply({{f}, {}}, omega) + pointwise_product(derivative(f), bnm_apply({{f}, {f}}, omega));
    expected *= 1.0 / pi;
    CHECK(max_abs_diff(op_B_apply(f, omega), expected) <= 1e-12 * std::max(1.0, expected.sup_norm()));
  }
  SUBCASE("zero density") { CHECK(op_B_apply(f, GridFunction(grid)).sup_norm() == 0.0); }
}

TEST_CASE("oscillatory operator T_a") {
  const Grid grid(20.0, 512);
  const GridFunction f = oracle::gaussian(grid, 1.0);
  const GridFunction pih = padded_pi_hilbert(f);
  auto real_part = [](const ComplexGridFunction& z) {
    GridFunction out(z.grid());
    for (std::size_t j = 0; j < z.size(); ++j) out[j] = z[j].real();
    return out;
  };
  auto imag_sup = [](const ComplexGridFunction& z) {
    double m = 0.0;
    for (const auto& v : z.values()) m = std::max(m, std::abs(v.imag()));
    return m;
  };
  SUBCASE("zero phase") {
    const ComplexGridFunction t = t_a_apply(GridFunction(grid), f);
    CHECK(oracle::rel_diff(real_part(t), pih) < 1e-3);
    CHECK(imag_sup(t) == 0.0);
  }
  SUBCASE("constant phase") {
    const auto c = GridFunction::from_function(grid, [](double) { return 2.5; });
    const ComplexGridFunction t0 = t_a_apply(GridFunction(grid), f);
    const ComplexGridFunction tc = t_a_apply(c, f);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(tc[j] == t0[j]);
  }
  SUBCASE("adjoint is minus T of minus a") {
    const Grid g(10.0, 256);
    const GridFunction a = oracle::random_smooth(g, 61, 2.0);
    const ComplexDiscreteOperator t = assemble_dense(OscillatoryT{a});
    const ComplexDiscreteOperator tm = assemble_dense(OscillatoryT{-a});
    CHECK((t.matrix.adjoint() + tm.matrix).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("dense assembly") {
  const Grid grid(10.0, 128);
  const GridFunction f = oracle::random_smooth(grid, 71, 0.8);
  const GridFunction omega = oracle::random_smooth(grid, 72);

  const DiscreteOperator a = assemble_dense(MuskatA{f});
  CHECK(max_abs_diff(a.apply(omega), op_A_apply(f, omega)) < 1e-13);
  CHECK(a.matrix.diagonal().cwiseAbs().maxCoeff() == 0.0);

  const DiscreteOperator b = assemble_dense(MuskatB{f});
  CHECK(max_abs_diff(b.apply(omega), op_B_apply(f, omega)) < 1e-13);

  const DiscreteOperator b21 = assemble_dense(MultilinearB{grid, {{f}, {f, omega}}});
  CHECK(max_abs_diff(b21.apply(omega), bnm_apply({{f}, {f, omega}}, omega)) < 1e-13);

  SUBCASE("transpose of A matches the adjoint formula") {
    // A(f)^T = (B11(f)[f, .] - B01(f)[f' .]) / pi
    const DiscreteOperator b11 = assemble_dense(MultilinearB{grid, {{f}, {f}}});
    const DiscreteOperator b01 = assemble_dense(MultilinearB{grid, {{f}, {}}});
    const GridFunction fp = derivative(f);
    Eigen::MatrixXd expected = b11.matrix;
    for (Eigen::Index j = 0; j < expected.cols(); ++j) expected.col(j) -= b01.matrix.col(j) * fp[static_cast<std::size_t>(j)];
    expected /= pi;
    CHECK((a.matrix.transpose() - expected).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("cap") { CHECK_THROWS_AS(assemble_dense(MuskatA{f}, 64), DenseCapExceeded); }
  SUBCASE("raw export header") {
    const auto bytes = io::encode_operator_raw(a);
    CHECK(bytes.size() == 16 + 8 * 128 * 128);
    CHECK(bytes[0] == 128);
    CHECK(bytes[8] == 128);
  }
}

TEST_CASE("serial and OpenMP backends agree bitwise") {
  const Grid grid(10.0, 256);
  const GridFunction f = oracle::random_smooth(grid, 81, 0.8);
  const GridFunction omega = oracle::random_smooth(grid, 82);
  const auto same = [](const GridFunction& x, const GridFunction& y) { return max_abs_diff(x, y) == 0.0; };
  CHECK(same(op_A_apply(f, omega, Backend::serial), op_A_apply(f, omega, Backend::openmp)));
  CHECK(same(op_B_apply(f, omega, Backend::serial), op_B_apply(f, omega, Backend::openmp)));
  CHECK(same(bnm_apply({{f}, {f, omega}}, omega, Backend::serial), bnm_apply({{f}, {f, omega}}, omega, Backend::openmp)));
  const auto ts = t_a_apply(f, omega, Backend::serial);
  const auto tp = t_a_apply(f, omega, Backend::openmp);
  for (std::size_t j = 0; j < grid.size(); ++j) CHECK(ts[j] == tp[j]);
  CHECK(assemble_dense(MuskatA{f}, kDefaultDenseCap, Backend::serial).matrix ==
        assemble_dense(MuskatA{f}, kDefaultDenseCap, Backend::openmp).matrix);
}

TEST_CASE("translation equivariance") {
  const Grid grid(10.0, 256);
  const GridFunction f = oracle::random_smooth(grid, 91, 0.8);
  const GridFunction omega = oracle::random_smooth(grid, 92);
  const double xi = 5 * grid.spacing();
  const GridFunction lhs = op_A_apply(shift(f, xi), shift(omega, xi));
  const GridFunction rhs = shift(op_A_apply(f, omega), xi);
  // The outputs decay only like 1/x, so compare away from the samples that
  // the circular shift wraps across the window edge.
  double diff = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (std::abs(grid.node(j)) < grid.half_width() / 2) diff = std::max(diff, std::abs(lhs[j] - rhs[j]));
  }
  CHECK(diff < 1e-12 * std::max(1.0, rhs.sup_norm()));
}

TEST_CASE("operator norm estimates") {
  const Grid grid(4.0, 32);
  DiscreteOperator zero{grid, Eigen::MatrixXd::Zero(32, 32)};
  DiscreteOperator scaled{grid, -2.5 * Eigen::MatrixXd::Identity(32, 32)};
  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(operator_norm_estimate(zero, p).bound == 0.0);
    CHECK(operator_norm_estimate(scaled, p).bound == doctest::Approx(2.5).epsilon(1e-12));
  }

  SUBCASE("matches the exact l1 and l-inf column and row sums in the limit") {
    const DiscreteOperator a = assemble_dense(MuskatA{oracle::random_smooth(Grid(10.0, 64), 3, 0.8)});
    const double p2 = operator_norm_estimate(a, 2.0).bound;
    const double p15 = operator_norm_estimate(a, 1.5).bound;
    // Riesz-Thorin: ||A||_2 <= sqrt(||A||_1 ||A||_inf)
    const double n1 = a.matrix.cwiseAbs().colwise().sum().maxCoeff();
    const double ninf = a.matrix.cwiseAbs().rowwise().sum().maxCoeff();
    CHECK(p2 <= std::sqrt(n1 * ninf) * (1 + 1e-12));
    CHECK(p15 > 0.0);
    CHECK(p15 <= std::max(n1, ninf));
  }

  SUBCASE("T_a norm grows at most linearly in 1 + ||a'||") {
    const Grid g(10.0, 128);
    std::vector<double> xs;
    std::vector<double> ys;
    for (double amp : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const GridFunction a = oracle::gaussian(g, 1.0, amp);
      xs.push_back(1.0 + derivative(a).sup_norm());
      ys.push_back(operator_norm_estimate(assemble_dense(OscillatoryT{a}), 3.0).bound);
    }
    // Least-squares line through the sweep; every point within 20%.
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / n, my += ys[i] / n;
    for (std::size_t i = 0; i < xs.size(); ++i) sxx += (xs[i] - mx) * (xs[i] - mx), sxy += (xs[i] - mx) * (ys[i] - my);
    const double slope = sxy / sxx;
    const double icpt = my - slope * mx;
    for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(icpt + slope * xs[i] - ys[i]) <= 0.2 * ys[i]);
  }
}
