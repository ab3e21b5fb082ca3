#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace muskat::fourier {

/// Unnormalized real-to-complex DFT; returns the N/2 + 1 non-negative modes.
std::vector<std::complex<double>> forward(std::span<const double> values);

/// Inverse of forward() including the 1/N factor.
std::vector<double> inverse(std::span<const std::complex<double>> modes, std::size_t n);

/// Applies symbol(m) to mode m of u. The Nyquist coefficient is multiplied by
/// the real part of its symbol so the result stays real.
template <class Symbol>
std::vector<double> apply(std::span<const double> u, Symbol&& symbol) {
  auto modes = forward(u);
  const std::size_t nyq = u.size() / 2;
  for (std::size_t m = 0; m < nyq; ++m) modes[m] *= symbol(m);
  modes[nyq] *= std::real(symbol(nyq));
  return inverse(modes, u.size());
}

}  // namespace muskat::fourier
