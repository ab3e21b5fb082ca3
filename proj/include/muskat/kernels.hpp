#pragma once

// O(N^2) quadrature loops shared by every singular integral operator.
//
// Principal values are realized by the odd-offset trapezoidal rule: row i
// sums the nodes j with i - j odd, weighted by 2h. The diagonal (and every
// even offset) is skipped. For a smooth density this converges spectrally,
// whereas dropping only the diagonal leaves an O(h) error h * omega'(x_i).
//
// The kernels are the real-line ones evaluated at the plain offset x_i - x_j.
// Nothing is wrapped around the window, so outputs keep their 1/x decay and
// the rule stays exact for pair kernels that are antisymmetric in (i, j).

// Each row is summed in a fixed order, so the OpenMP backend returns results
// bit-identical to the serial reference.

#include <cstddef>
#include <span>

namespace muskat::kernels {

enum class Backend { serial, openmp };

/// Signed node offset (i - j) h.
inline double offset(std::size_t i, std::size_t j, double h) {
  return static_cast<double>(static_cast<long long>(i) - static_cast<long long>(j)) * h;
}

inline bool odd_offset(std::size_t i, std::size_t j) { return ((i ^ j) & 1u) != 0; }

template <class Pair>
auto pair_entry(std::size_t i, std::size_t j, const Pair& pair, double h) {
  return pair(i, j, offset(i, j, h));
}

/// out[i] = weight * sum over j with i - j odd of pair(i, j, x_i - x_j).
template <class T, class Pair>
void odd_offset_sum(std::size_t n, double h, double weight, const Pair& pair, std::span<T> out, Backend backend) {
  auto row = [&](std::size_t i) {
    T acc{};
    for (std::size_t j = (i + 1) & 1u; j < n; j += 2) acc += pair_entry(i, j, pair, h);
    out[i] = weight * acc;
  };
  if (backend == Backend::serial) {
    for (std::size_t i = 0; i < n; ++i) row(i);
    return;
  }
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
}

/// Fills a dense column-major or row-major matrix: entry (i, j) is
/// weight * pair(i, j, x_i - x_j) at odd offsets and zero elsewhere.
template <class Matrix, class Pair>
void odd_offset_assemble(std::size_t n, double h, double weight, const Pair& pair, Matrix& mat, Backend backend) {
  using Scalar = typename Matrix::Scalar;
  auto row = [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = static_cast<typename Matrix::Index>(i);
      const auto c = static_cast<typename Matrix::Index>(j);
      mat(r, c) = odd_offset(i, j) ? Scalar(weight * pair_entry(i, j, pair, h)) : Scalar(0);
    }
  };
  if (backend == Backend::serial) {
    for (std::size_t i = 0; i < n; ++i) row(i);
    return;
  }
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) row(static_cast<std::size_t>(i));
}

}  // namespace muskat::kernels
