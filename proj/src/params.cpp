#include "muskat/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace muskat {

DerivedConstants derive_constants(const FluidParams& raw) {
  const double mu_sum = raw.mu_minus + raw.mu_plus;
  if (!std::isfinite(mu_sum) || !(mu_sum > 0.0)) {
    throw std::invalid_argument("viscosity sum mu_minus + mu_plus must be positive, got " +
                                std::to_string(mu_sum));
  }
  if (raw.mu_minus < 0.0 || raw.mu_plus < 0.0) {
    throw std::invalid_argument("viscosities must be non-negative");
  }
  if (!std::isfinite(raw.k) || !(raw.k > 0.0)) {
    throw std::invalid_argument("permeability k must be positive, got " + std::to_string(raw.k));
  }

  DerivedConstants out;
  out.a_mu = (raw.mu_minus - raw.mu_plus) / mu_sum;
  out.Theta = raw.g * (raw.rho_minus - raw.rho_plus) + (raw.mu_minus - raw.mu_plus) * raw.V / raw.k;
  out.C_Theta = raw.k * out.Theta / mu_sum;

  // A vanishing viscosity puts the Atwood number on the boundary of (-1, 1).
  if (!(std::abs(out.a_mu) < 1.0)) {
    throw std::invalid_argument("Atwood number must satisfy |a_mu| < 1");
  }
  if (!std::isfinite(out.Theta)) {
    throw std::invalid_argument("Theta is not finite");
  }
  return out;
}

}  // namespace muskat
