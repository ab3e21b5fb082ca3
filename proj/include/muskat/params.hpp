#pragma once

namespace muskat {

/// Physical constants of the two-fluid system. The fluid below the interface
/// carries the "minus" label.
struct FluidParams {
  double mu_minus = 1.0;   ///< dynamic viscosity of the lower fluid
  double mu_plus = 1.0;    ///< dynamic viscosity of the upper fluid
  double rho_minus = 1.0;  ///< density of the lower fluid
  double rho_plus = 1.0;   ///< density of the upper fluid
  double k = 1.0;          ///< permeability
  double g = 1.0;          ///< gravity
  double V = 0.0;          ///< vertical frame velocity (positive upwards)
};

/// Dimensionless and derived constants entering the contour equations.
struct DerivedConstants {
  double a_mu = 0.0;     ///< Atwood number (mu- - mu+)/(mu- + mu+), in (-1, 1)
  double C_Theta = 0.0;  ///< k * Theta / (mu- + mu+)
  double Theta = 0.0;    ///< g (rho- - rho+) + (mu- - mu+) V / k
};

/// Computes a_mu, C_Theta and Theta.
///
/// Throws std::invalid_argument if mu_minus + mu_plus <= 0, k <= 0, a
/// viscosity is negative or the Atwood number leaves (-1, 1). A negative
/// Theta is accepted.
DerivedConstants derive_constants(const FluidParams& raw);

}  // namespace muskat
