#include <doctest.h>

#include <sstream>

#include "muskat/grid.hpp"
#include "muskat/io.hpp"
#include "oracles.hpp"

using namespace muskat;
using oracle::pi;

namespace {

GridFunction cosine_mode(const Grid& grid, int m) {
  const double k = grid.wavenumber(static_cast<std::size_t>(m));
  return GridFunction::from_function(grid, [k](double x) { return std::cos(k * x); });
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid grid(5.0, 64);
  CHECK(grid.spacing() * 64 == doctest::Approx(10.0));
  CHECK(grid.node(0) == -5.0);
  CHECK(grid.nyquist_index() == 32);
  CHECK_THROWS_AS(Grid(5.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(Grid(5.0, 8), std::invalid_argument);
  CHECK_THROWS_AS(Grid(0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(grid, std::vector<double>(10)), std::invalid_argument);
}

TEST_CASE("derivative") {
  const Grid grid(3.0, 64);
  SUBCASE("band-limited sine") {
    const double k = pi / 3.0;
    const auto u = GridFunction::from_function(grid, [k](double x) { return std::sin(k * x); });
    const auto du = GridFunction::from_function(grid, [k](double x) { return k * std::cos(k * x); });
    CHECK(max_abs_diff(derivative(u), du) < 1e-13);
  }
  SUBCASE("constant") {
    const auto u = GridFunction::from_function(grid, [](double) { return 4.2; });
    CHECK(derivative(u).sup_norm() < 1e-14);
  }
  SUBCASE("gaussian of width L/10 at N = 512") {
    const Grid fine(10.0, 512);
    const GridFunction u = oracle::gaussian(fine, 1.0);
    CHECK(max_abs_diff(derivative(u), oracle::gaussian_derivative(fine, 1.0)) < 1e-8);
  }
}

TEST_CASE("hilbert transform") {
  const Grid grid(4.0, 64);
  SUBCASE("cosine to sine") {
    const double k = grid.wavenumber(3);
    const auto u = cosine_mode(grid, 3);
    const auto expected = GridFunction::from_function(grid, [k](double x) { return std::sin(k * x); });
    CHECK(max_abs_diff(hilbert(u), expected) < 1e-13);
  }
  SUBCASE("constant") {
    const auto u = GridFunction::from_function(grid, [](double) { return 1.0; });
    CHECK(hilbert(u).sup_norm() == 0.0);
  }
  SUBCASE("Lorentzian against the periodized closed form") {
    // The window is periodic, so the oracle is the residue sum of x/(1+x^2)
    // over the images of the window.
    const Grid big(40.0, 1024);
    const auto u = GridFunction::from_function(big, [](double x) { return 1.0 / (1.0 + x * x); });
    const auto expected =
        GridFunction::from_function(big, [](double x) { return oracle::periodized_lorentzian_hilbert(x, 80.0); });
    CHECK(max_abs_diff(hilbert(u), expected) < 1e-3);
  }
}

TEST_CASE("half Laplacian") {
  const Grid grid(4.0, 64);
  const double k = grid.wavenumber(5);
  CHECK(max_abs_diff(half_laplacian(cosine_mode(grid, 5)), k * cosine_mode(grid, 5)) < 1e-12);
  const auto c = GridFunction::from_function(grid, [](double) { return -3.0; });
  CHECK(half_laplacian(c).sup_norm() < 1e-14);

  const Grid g2(10.0, 256);
  const GridFunction u = oracle::random_smooth(g2, 3);
  CHECK(max_abs_diff(half_laplacian(u), hilbert(derivative(u))) < 1e-12 * u.sup_norm());
}

TEST_CASE("multiplier invariants") {
  const Grid grid(10.0, 256);
  GridFunction u = oracle::random_smooth(grid, 5);
  // Remove the mean so H is invertible on u.
  double mean = 0.0;
  for (double v : u.values()) mean += v;
  mean /= static_cast<double>(u.size());
  for (double& v : u.values()) v -= mean;
  // H H = -1 only off the Nyquist mode, which H annihilates; the data is
  // resolved so that mode is negligible.
  CHECK(max_abs_diff(hilbert(hilbert(u)), -u) < 1e-12 * u.sup_norm());

  const double tol = 1e-12 * u.sup_norm();
  CHECK(max_abs_diff(hilbert(derivative(u)), derivative(hilbert(u))) < tol);
  CHECK(max_abs_diff(hilbert(half_laplacian(u)), half_laplacian(hilbert(u))) < tol);
  CHECK(max_abs_diff(derivative(half_laplacian(u)), half_laplacian(derivative(u))) < tol);

  const double xi = 7 * grid.spacing();
  CHECK(max_abs_diff(shift(hilbert(u), xi), hilbert(shift(u, xi))) < tol);
  CHECK(max_abs_diff(shift(derivative(u), xi), derivative(shift(u, xi))) < tol);
  CHECK(max_abs_diff(shift(half_laplacian(u), xi), half_laplacian(shift(u, xi))) < tol);
}

TEST_CASE("resolvent of the half Laplacian") {
  const Grid grid(4.0, 64);
  const double k = grid.wavenumber(4);
  const auto u = cosine_mode(grid, 4);
  CHECK(max_abs_diff(resolvent_half_laplacian(u, 0.3), (1.0 / (1.0 + 0.3 * k)) * u) < 1e-14);
  const GridFunction v = oracle::random_smooth(Grid(10.0, 128), 8);
  const GridFunction w = resolvent_half_laplacian(v, 0.7);
  CHECK(max_abs_diff(w + 0.7 * half_laplacian(w), v) < 1e-13);
}

TEST_CASE("shift") {
  const Grid grid(10.0, 128);
  const GridFunction u = oracle::random_smooth(grid, 9);
  SUBCASE("one sample is a circular rotation") {
    const GridFunction s = shift(u, grid.spacing());
    for (std::size_t j = 1; j < u.size(); ++j) CHECK(s[j] == u[j - 1]);
    CHECK(s[0] == u[u.size() - 1]);
  }
  SUBCASE("zero shift") { CHECK(max_abs_diff(shift(u, 0.0), u) == 0.0); }
  SUBCASE("group property off the grid") {
    const double xi = 0.3712;
    CHECK(max_abs_diff(shift(shift(u, xi), -xi), u) < 1e-12);
  }
  SUBCASE("off-grid shift of a gaussian") {
    const GridFunction g = oracle::gaussian(grid, 1.0);
    CHECK(max_abs_diff(shift(g, 0.25), oracle::gaussian(grid, 1.0, 1.0, 0.25)) < 1e-12);
  }
}

TEST_CASE("rescale") {
  const Grid grid(20.0, 512);
  const GridFunction g = oracle::gaussian(grid, 2.0);
  SUBCASE("identity") { CHECK(max_abs_diff(rescale(g, 1.0).values, g) == 0.0); }
  SUBCASE("gaussian at lambda = 2") {
    const RescaleResult r = rescale(g, 2.0);
    CHECK(r.tail_ok);
    CHECK(max_abs_diff(r.values, oracle::gaussian(grid, 1.0, 0.5)) < 1e-8);
  }
  SUBCASE("off-grid factor") {
    const RescaleResult r = rescale(g, 1.5);
    CHECK(max_abs_diff(r.values, oracle::gaussian(grid, 2.0 / 1.5, 1.0 / 1.5)) < 1e-10);
  }
  SUBCASE("tail violation is flagged") {
    const GridFunction wide = oracle::gaussian(grid, 8.0);
    CHECK_FALSE(rescale(wide, 2.0).tail_ok);
  }
}

TEST_CASE("tail test") {
  const Grid grid(20.0, 256);
  CHECK(is_decaying(oracle::gaussian(grid, 1.0)));
  CHECK_FALSE(is_decaying(oracle::gaussian(grid, 10.0)));
}

TEST_CASE("mode amplitudes") {
  const Grid grid(4.0, 64);
  const auto amps = mode_amplitudes(cosine_mode(grid, 3));
  REQUIRE(amps.size() == 33);
  CHECK(amps[3] == doctest::Approx(32.0));
  CHECK(amps[2] < 1e-12);
}

TEST_CASE("raw and csv serialization") {
  const Grid grid(3.5, 32);
  const GridFunction u = oracle::random_smooth(grid, 1);

  const auto bytes = io::encode_raw(u);
  REQUIRE(bytes.size() == 16 + 8 * 32);
  CHECK(bytes[0] == 32);
  for (int b = 1; b < 8; ++b) CHECK(bytes[static_cast<std::size_t>(b)] == 0);
  const GridFunction back = io::decode_raw(bytes);
  CHECK(back.grid() == grid);
  CHECK(max_abs_diff(back, u) == 0.0);
  CHECK_THROWS(io::decode_raw(std::span<const std::uint8_t>(bytes.data(), bytes.size() - 1)));

  std::stringstream ss;
  io::write_csv(ss, u);
  const GridFunction from_csv = io::read_csv(ss);
  CHECK(from_csv.grid().size() == 32);
  CHECK(from_csv.grid().half_width() == doctest::Approx(3.5));
  CHECK(max_abs_diff(from_csv, u) == 0.0);

  std::stringstream bad("x,value\n0,1\n0.5,2\n2,3\n");
  CHECK_THROWS(io::read_csv(bad));
}
