#include "muskat/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "fourier.hpp"

namespace muskat {

Grid::Grid(double half_width, std::size_t n_points)
    : half_width_(half_width), n_points_(n_points), spacing_(2.0 * half_width / static_cast<double>(n_points)) {
  if (!std::isfinite(half_width) || !(half_width > 0.0)) {
    throw std::invalid_argument("grid half width L must be positive");
  }
  if (n_points < 16 || !std::has_single_bit(n_points)) {
    throw std::invalid_argument("grid size N must be a power of two >= 16");
  }
}

std::vector<double> Grid::nodes() const {
  std::vector<double> x(n_points_);
  for (std::size_t j = 0; j < n_points_; ++j) x[j] = node(j);
  return x;
}

GridFunction pointwise_product(const GridFunction& u, const GridFunction& v) {
  u.check_same_grid(v);
  GridFunction out(u.grid());
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = u[j] * v[j];
  return out;
}

double max_abs_diff(const GridFunction& u, const GridFunction& v) {
  u.check_same_grid(v);
  double m = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) m = std::max(m, std::abs(u[j] - v[j]));
  return m;
}

namespace {

using cplx = std::complex<double>;

template <class Symbol>
GridFunction multiplier(const GridFunction& u, Symbol&& symbol) {
  return GridFunction(u.grid(), fourier::apply(u.values(), std::forward<Symbol>(symbol)));
}

}  // namespace

GridFunction derivative(const GridFunction& u) {
  const Grid& g = u.grid();
  return multiplier(u, [&](std::size_t m) { return cplx(0.0, g.wavenumber(m)); });
}

GridFunction hilbert(const GridFunction& u) {
  return multiplier(u, [](std::size_t m) { return m == 0 ? cplx(0.0) : cplx(0.0, -1.0); });
}

GridFunction half_laplacian(const GridFunction& u) {
  const Grid& g = u.grid();
  const std::size_t nyq = g.nyquist_index();
  return multiplier(u, [&](std::size_t m) { return m == nyq ? cplx(0.0) : cplx(g.wavenumber(m)); });
}

GridFunction resolvent_half_laplacian(const GridFunction& u, double c) {
  if (!(c >= 0.0)) throw std::invalid_argument("resolvent coefficient must be non-negative");
  const Grid& g = u.grid();
  const std::size_t nyq = g.nyquist_index();
  return multiplier(u, [&](std::size_t m) {
    const double lam = (m == nyq) ? 0.0 : g.wavenumber(m);
    return cplx(1.0 / (1.0 + c * lam));
  });
}

GridFunction shift(const GridFunction& u, double xi) {
  const Grid& g = u.grid();
  const double steps = xi / g.spacing();
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-12 * std::max(1.0, std::abs(steps))) {
    const auto n = static_cast<long long>(g.size());
    const long long k = ((static_cast<long long>(nearest) % n) + n) % n;
    GridFunction out(g);
    for (long long j = 0; j < n; ++j) out[static_cast<std::size_t>((j + k) % n)] = u[static_cast<std::size_t>(j)];
    return out;
  }
  return multiplier(u, [&](std::size_t m) { return std::polar(1.0, -g.wavenumber(m) * xi); });
}

std::vector<double> interpolate(const GridFunction& u, std::span<const double> points) {
  const Grid& g = u.grid();
  const auto modes = fourier::forward(u.values());
  const std::size_t nyq = g.nyquist_index();
  const double inv_n = 1.0 / static_cast<double>(g.size());
  const double L = g.half_width();

  std::vector<double> out(points.size());
  const auto count = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t p = 0; p < count; ++p) {
    const double s = points[static_cast<std::size_t>(p)] + L;
    double acc = modes[0].real();
    for (std::size_t m = 1; m < nyq; ++m) acc += 2.0 * std::real(modes[m] * std::polar(1.0, g.wavenumber(m) * s));
    acc += modes[nyq].real() * std::cos(g.wavenumber(nyq) * s);
    out[static_cast<std::size_t>(p)] = acc * inv_n;
  }
  return out;
}

bool is_decaying(const GridFunction& u, double tol) {
  const Grid& g = u.grid();
  const double edge = 0.75 * g.half_width();
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (std::abs(g.node(j)) >= edge && std::abs(u[j]) > tol) return false;
  }
  return true;
}

RescaleResult rescale(const GridFunction& u, double lambda, double tail_tol) {
  if (!std::isfinite(lambda) || !(lambda > 0.0)) throw std::invalid_argument("rescale factor must be positive");
  const Grid& g = u.grid();
  if (lambda == 1.0) return {u, is_decaying(u, tail_tol)};

  const double L = g.half_width();
  const double h = g.spacing();
  GridFunction out(g);
  std::vector<double> off_grid_points;
  std::vector<std::size_t> off_grid_index;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double target = lambda * g.node(j);
    if (std::abs(target) >= L) continue;  // outside the window: decayed
    const double pos = (target + L) / h;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) <= 1e-12 * std::max(1.0, pos)) {
      out[j] = u[static_cast<std::size_t>(nearest) % g.size()] / lambda;
    } else {
      off_grid_points.push_back(target);
      off_grid_index.push_back(j);
    }
  }
  if (!off_grid_points.empty()) {
    const auto vals = interpolate(u, off_grid_points);
    for (std::size_t k = 0; k < vals.size(); ++k) out[off_grid_index[k]] = vals[k] / lambda;
  }
  const bool ok = is_decaying(u, tail_tol) && is_decaying(out, tail_tol);
  return {std::move(out), ok};
}

std::vector<double> mode_amplitudes(const GridFunction& u) {
  const auto modes = fourier::forward(u.values());
  std::vector<double> out(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) out[m] = std::abs(modes[m]);
  return out;
}

std::vector<double> mode_energies(const GridFunction& u) {
  auto amps = mode_amplitudes(u);
  for (double& a : amps) a *= a;
  return amps;
}

}  // namespace muskat
