#pragma once

#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string_view>
#include <vector>

#include "muskat/evolution.hpp"
#include "muskat/grid.hpp"
#include "muskat/params.hpp"

namespace muskat {

/// min over the grid of C_Theta + a_mu Phi(f).
double rt_margin(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg = {});
double rt_margin(const DerivedConstants& constants, const GridFunction& phi_f);

/// Smoothness index of W^s_p with s = [s] + {s}.
struct SobolevIndex {
  double s = 1.5;
  double p = 2.0;

  int integer_part() const;
  double fractional_part() const;
  /// Throws unless s in (0, 2), s != 1 and p in (1, inf).
  void validate() const;
};

/// Discrete L_p norm (h sum |u|^p)^{1/p}.
double lp_norm(const GridFunction& u, double p);

/// [f]_{W^s_p}: the translation integral of ||g - tau_xi g||_p^p / |xi|^{1+{s}p}
/// with g = f^([s]), shifts taken circularly on the window. The xi-integral
/// uses product weights on xi = m h, m = 0..N/2, exact for the piecewise
/// linear interpolant of ||g - tau_xi g||_p^p / xi^p, plus the analytic
/// contribution of |xi| > L where the shifted copy no longer overlaps.
double sobolev_seminorm(const GridFunction& f, const SobolevIndex& idx);

/// (sum_{k <= [s]} ||f^(k)||_p^p + [f]_{W^s_p}^p)^{1/p}.
double sobolev_norm(const GridFunction& f, const SobolevIndex& idx);

/// [f']_{W^{1/p}_p}, invariant under f -> f(lambda x)/lambda.
double critical_seminorm(const GridFunction& f, double p);

struct SpectralTail {
  double tail_mass = 0.0;  ///< energy fraction in the top third of modes
  /// -slope of log|f^| against |xi| over the upper half spectrum; +inf when
  /// fewer than two modes clear the noise floor.
  double fitted_rate = std::numeric_limits<double>::infinity();
};

inline constexpr double kSpectralNoiseFloor = 1e-14;

SpectralTail spectral_tail(const GridFunction& f, double noise_floor = kSpectralNoiseFloor);

/// Index m >= 1 of the largest non-mean Fourier amplitude of f.
std::size_t dominant_mode_index(const GridFunction& f);

/// Least-squares slope of y against x; nullopt for fewer than two points or
/// zero spread in x.
std::optional<double> least_squares_slope(std::span<const double> x, std::span<const double> y);

struct TrajectoryRecord {
  double t = 0.0;
  double rt_margin = 0.0;
  double sup_f = 0.0;
  double sup_omega = 0.0;
  double ws_norm = 0.0;
  double critical_seminorm = 0.0;
  double tail_mass = 0.0;
  /// Decay rate (1/time) of the Fourier mode that dominates the first
  /// record, fitted over all records so far; empty for the first record.
  std::optional<double> fitted_decay_rate;
};

inline constexpr std::string_view kRecordsHeader =
    "t,rt_margin,sup_f,sup_omega,ws_norm,critical_seminorm,tail_mass,fitted_decay_rate";

/// Writes the header line and one row per record (%.17g, empty field for a
/// missing decay rate).
void write_records_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records);

}  // namespace muskat
