#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace muskat {

/// Uniform nodes x_j = -L + j h, j = 0..N-1, on the window [-L, L) with
/// h = 2L/N. Spectral operators treat the window as 2L-periodic.
class Grid {
 public:
  /// Throws std::invalid_argument unless L > 0 and N is a power of two >= 16.
  Grid(double half_width, std::size_t n_points);

  double half_width() const { return half_width_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return spacing_; }
  double node(std::size_t j) const { return -half_width_ + static_cast<double>(j) * spacing_; }
  std::vector<double> nodes() const;

  /// Angular wavenumber pi m / L of discrete Fourier mode m (m <= N/2).
  double wavenumber(std::size_t m) const {
    return std::numbers::pi * static_cast<double>(m) / half_width_;
  }
  std::size_t nyquist_index() const { return n_points_ / 2; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double half_width_;
  std::size_t n_points_;
  double spacing_;
};

/// Samples of a real or complex function on a Grid.
template <class T>
class BasicGridFunction {
 public:
  using value_type = T;

  explicit BasicGridFunction(const Grid& grid) : grid_(grid), values_(grid.size(), T{}) {}
  BasicGridFunction(const Grid& grid, std::vector<T> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw std::invalid_argument("grid function length does not match grid size");
    }
  }

  template <class F>
  static BasicGridFunction from_function(const Grid& grid, F&& fn) {
    BasicGridFunction out(grid);
    for (std::size_t j = 0; j < grid.size(); ++j) out.values_[j] = fn(grid.node(j));
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const std::vector<T>& data() const { return values_; }

  T& operator[](std::size_t j) { return values_[j]; }
  const T& operator[](std::size_t j) const { return values_[j]; }

  double sup_norm() const {
    double m = 0.0;
    for (const T& v : values_) m = std::max(m, static_cast<double>(std::abs(v)));
    return m;
  }

  BasicGridFunction& operator+=(const BasicGridFunction& rhs) {
    check_same_grid(rhs);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += rhs.values_[j];
    return *this;
  }
  BasicGridFunction& operator-=(const BasicGridFunction& rhs) {
    check_same_grid(rhs);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= rhs.values_[j];
    return *this;
  }
  BasicGridFunction& operator*=(T c) {
    for (T& v : values_) v *= c;
    return *this;
  }

  friend BasicGridFunction operator+(BasicGridFunction a, const BasicGridFunction& b) { return a += b; }
  friend BasicGridFunction operator-(BasicGridFunction a, const BasicGridFunction& b) { return a -= b; }
  friend BasicGridFunction operator*(T c, BasicGridFunction a) { return a *= c; }
  friend BasicGridFunction operator*(BasicGridFunction a, T c) { return a *= c; }
  friend BasicGridFunction operator-(BasicGridFunction a) { return a *= T(-1); }

  void check_same_grid(const BasicGridFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("grid functions live on different grids");
  }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<std::complex<double>>;

/// Pointwise product u * v.
GridFunction pointwise_product(const GridFunction& u, const GridFunction& v);

/// Largest absolute entry of u - v.
double max_abs_diff(const GridFunction& u, const GridFunction& v);

// Fourier multipliers. Every multiplier annihilates the Nyquist mode except
// the resolvent, which leaves it unchanged.

/// Spectral derivative (symbol i xi).
GridFunction derivative(const GridFunction& u);

/// Hilbert transform (symbol -i sign(xi)); the mean is mapped to zero.
GridFunction hilbert(const GridFunction& u);

/// (-d^2/dx^2)^{1/2} (symbol |xi|).
GridFunction half_laplacian(const GridFunction& u);

/// (1 + c Lambda)^{-1} u for c >= 0, with Lambda the discrete half-Laplacian.
GridFunction resolvent_half_laplacian(const GridFunction& u, double c);

/// Right translation (tau_xi u)(x) = u(x - xi) with periodic wrap. Integer
/// multiples of the spacing are exact index rotations; other offsets use
/// band-limited interpolation.
GridFunction shift(const GridFunction& u, double xi);

/// Real trigonometric interpolant of u evaluated at arbitrary points.
std::vector<double> interpolate(const GridFunction& u, std::span<const double> points);

/// Default absolute tolerance for the tail test.
inline constexpr double kDefaultTailTolerance = 1e-10;

/// True when |u| <= tol on the outer eighth of the window at each end
/// (|x| >= 3L/4).
bool is_decaying(const GridFunction& u, double tol = kDefaultTailTolerance);

struct RescaleResult {
  GridFunction values;
  bool tail_ok = true;  ///< false if input or output violates the tail tolerance
};

/// x -> u(lambda x) / lambda. Points with |lambda x| >= L evaluate to zero,
/// which is exact for data decaying inside the window.
RescaleResult rescale(const GridFunction& u, double lambda, double tail_tol = kDefaultTailTolerance);

/// Energy |u_hat_m|^2 of the non-negative discrete modes m = 0..N/2.
std::vector<double> mode_energies(const GridFunction& u);

/// Magnitudes |u_hat_m| of the non-negative discrete modes m = 0..N/2
/// (unnormalized DFT).
std::vector<double> mode_amplitudes(const GridFunction& u);

}  // namespace muskat
