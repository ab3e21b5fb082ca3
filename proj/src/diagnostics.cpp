#include "muskat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace muskat {

namespace {

/// h sum |u_j - u_{j-m}|^p with the index taken mod N.
double shifted_difference_power(std::span<const double> g, std::size_t m, double p, double h) {
  const std::size_t n = g.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += std::pow(std::abs(g[j] - g[(j + n - m) % n]), p);
  return h * acc;
}

double power_sum(const GridFunction& u, double p) {
  double acc = 0.0;
  for (double v : u.values()) acc += std::pow(std::abs(v), p);
  return u.grid().spacing() * acc;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double rt_margin(const DerivedConstants& constants, const GridFunction& phi_f) {
  double margin = std::numeric_limits<double>::infinity();
  for (double v : phi_f.values()) margin = std::min(margin, constants.C_Theta + constants.a_mu * v);
  return margin;
}

double rt_margin(const GridFunction& f, const FluidParams& params, const SolverConfig& cfg) {
  const DerivedConstants c = derive_constants(params);
  return rt_margin(c, evaluate_velocity(f, c, cfg).phi);
}

int SobolevIndex::integer_part() const { return static_cast<int>(std::floor(s)); }

double SobolevIndex::fractional_part() const { return s - std::floor(s); }

void SobolevIndex::validate() const {
  if (!(s > 0.0 && s < 2.0) || s == 1.0) throw std::invalid_argument("Sobolev index s must lie in (0, 2) and differ from 1");
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("Sobolev exponent p must lie in (1, inf)");
}

double lp_norm(const GridFunction& u, double p) { return std::pow(power_sum(u, p), 1.0 / p); }

double sobolev_seminorm(const GridFunction& f, const SobolevIndex& idx) {
  idx.validate();
  const double p = idx.p;
  const double sigma = idx.fractional_part();
  GridFunction g = f;
  for (int k = 0; k < idx.integer_part(); ++k) g = derivative(g);

  const Grid& grid = f.grid();
  const double h = grid.spacing();
  const std::size_t half = grid.size() / 2;

  // R(xi) = ||g - tau_xi g||_p^p / xi^p on xi = m h, with R(0) = ||g'||_p^p.
  std::vector<double> ratio(half + 1);
  ratio[0] = power_sum(derivative(g), p);
  const auto values = g.values();
#pragma omp parallel for schedule(static)
  for (std::size_t m = 1; m <= half; ++m) {
    const double xi = static_cast<double>(m) * h;
    ratio[m] = shifted_difference_power(values, m, p, h) / std::pow(xi, p);
  }

  // Integrate R(xi) xi^beta with the linear interpolant of R on each cell.
  const double beta = p - 1.0 - sigma * p;
  double integral = 0.0;
  for (std::size_t m = 0; m < half; ++m) {
    const double a = static_cast<double>(m) * h;
    const double b = a + h;
    const double i0 = (std::pow(b, beta + 1.0) - std::pow(a, beta + 1.0)) / (beta + 1.0);
    const double i1 = (std::pow(b, beta + 2.0) - std::pow(a, beta + 2.0)) / (beta + 2.0);
    integral += ratio[m] * (b * i0 - i1) / h + ratio[m + 1] * (i1 - a * i0) / h;
  }
  // Both signs of xi, then |xi| > L where ||g - tau_xi g||_p^p = 2 ||g||_p^p.
  const double sp = sigma * p;
  const double total = 2.0 * integral + 4.0 * power_sum(g, p) * std::pow(grid.half_width(), -sp) / sp;
  return std::pow(total, 1.0 / p);
}

double sobolev_norm(const GridFunction& f, const SobolevIndex& idx) {
  idx.validate();
  double acc = power_sum(f, idx.p);
  GridFunction g = f;
  for (int k = 0; k < idx.integer_part(); ++k) {
    g = derivative(g);
    acc += power_sum(g, idx.p);
  }
  acc += std::pow(sobolev_seminorm(f, idx), idx.p);
  return std::pow(acc, 1.0 / idx.p);
}

double critical_seminorm(const GridFunction& f, double p) {
  return sobolev_seminorm(derivative(f), SobolevIndex{1.0 / p, p});
}

SpectralTail spectral_tail(const GridFunction& f, double noise_floor) {
  const std::vector<double> energy = mode_energies(f);
  const std::vector<double> amp = mode_amplitudes(f);
  const std::size_t count = energy.size();  // N/2 + 1
  SpectralTail out;

  const double total = std::accumulate(energy.begin(), energy.end(), 0.0);
  const std::size_t tail_start = count - count / 3;
  if (total > 0.0) {
    out.tail_mass = std::accumulate(energy.begin() + static_cast<std::ptrdiff_t>(tail_start), energy.end(), 0.0) / total;
  }

  const double peak = *std::max_element(amp.begin(), amp.end());
  if (!(peak > 0.0)) return out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t m = (count - 1) / 2; m < count; ++m) {
    const double rel = amp[m] / peak;
    if (rel > noise_floor) {
      xs.push_back(f.grid().wavenumber(m));
      ys.push_back(std::log(rel));
    }
  }
  if (const auto slope = least_squares_slope(xs, ys)) out.fitted_rate = -*slope;
  return out;
}

std::size_t dominant_mode_index(const GridFunction& f) {
  const std::vector<double> amp = mode_amplitudes(f);
  return static_cast<std::size_t>(std::max_element(amp.begin() + 1, amp.end()) - amp.begin());
}

std::optional<double> least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("least_squares_slope: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

void write_records_csv(std::ostream& os, const std::vector<TrajectoryRecord>& records) {
  os << kRecordsHeader << '\n';
  for (const TrajectoryRecord& r : records) {
    os << format_double(r.t) << ',' << format_double(r.rt_margin) << ',' << format_double(r.sup_f) << ','
       << format_double(r.sup_omega) << ',' << format_double(r.ws_norm) << ',' << format_double(r.critical_seminorm)
       << ',' << format_double(r.tail_mass) << ',';
    if (r.fitted_decay_rate) os << format_double(*r.fitted_decay_rate);
    os << '\n';
  }
}

}  // namespace muskat
