#ifndef WAVELOS_SEA_STATE_HPP
#define WAVELOS_SEA_STATE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wavelos/rng.hpp"

// Bretschneider (ISSC) spectrum discretization and stochastic sea-surface
// realizations: eta(x, t) = sum_i a_i cos(w_i t + k_i x + alpha_i) with
// Rayleigh amplitudes and uniform phases, deep-water dispersion k = w^2/g.

namespace wavelos::sea {

inline constexpr double kGravity = 9.80665;  // m/s^2
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// H_s above 0.8*T_p breaks the linear wave model; such states are rejected.
inline constexpr double kBreakingSlope = 0.8;

struct SeaStateParams {
  double hs_m = 1.0;               // significant wave height
  double tp_s = 4.0;               // peak period
  std::optional<double> water_depth_m;

  double peak_omega() const { return kTwoPi / tp_s; }
  double peak_wavelength_m() const { return kGravity * tp_s * tp_s / kTwoPi; }
};

struct SeaStateValidation {
  bool accepted = false;
  std::string reason;
  bool shallow_water_warning = false;
};

inline SeaStateValidation validate_sea_state(const SeaStateParams& params) {
  if (!(params.hs_m > 0.0) || !(params.tp_s > 0.0)) {
    throw std::invalid_argument("sea state requires hs_m > 0 and tp_s > 0");
  }
  if (params.water_depth_m && !(*params.water_depth_m > 0.0)) {
    throw std::invalid_argument("water_depth_m must be > 0 when given");
  }
  SeaStateValidation v;
  if (params.hs_m > kBreakingSlope * params.tp_s) {
    v.accepted = false;
    v.reason = "breaking-wave rule violated: hs_m = " + std::to_string(params.hs_m) +
               " exceeds 0.8 * tp_s = " + std::to_string(kBreakingSlope * params.tp_s);
    return v;
  }
  v.accepted = true;
  if (params.water_depth_m &&
      *params.water_depth_m <= 0.3 * params.peak_wavelength_m()) {
    v.shallow_water_warning = true;
    v.reason = "deep-water assumption marginal: depth <= 0.3 * peak wavelength";
  }
  return v;
}

/// Bretschneider spectral density S_eta(omega) in m^2/(rad/s).
inline double spectrum_density(const SeaStateParams& params, double omega) {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("spectrum_density requires omega > 0");
  }
  const double wp = params.peak_omega();
  const double r = wp / omega;
  const double r4 = r * r * r * r;
  return (5.0 / 16.0) * params.hs_m * params.hs_m * (wp * wp * wp * wp) /
         std::pow(omega, 5.0) * std::exp(-1.25 * r4);
}

struct SpectrumGrid {
  std::vector<double> omegas;              // rad/s, uniform spacing
  std::vector<double> wavenumbers;         // 1/m, k = w^2/g
  std::vector<double> expected_amplitudes; // mu_i = sqrt(2 S dw), meters
  std::vector<double> densities;           // S(omega_i)
  double delta_omega = 0.0;

  std::size_t n_components() const { return omegas.size(); }
};

inline constexpr std::size_t kDefaultComponents = 256;
inline constexpr double kDefaultOmegaMin = kTwoPi * 0.01;
inline constexpr double kDefaultOmegaMax = kTwoPi * 1.5;
// Fraction of the analytic zeroth moment hs^2/16 the grid must capture.
inline constexpr double kMinEnergyCapture = 0.97;

/// Midpoint discretization of the spectrum over [omega_min, omega_max].
inline SpectrumGrid build_spectrum_grid(const SeaStateParams& params,
                                        std::size_t n_components = kDefaultComponents,
                                        double omega_min = kDefaultOmegaMin,
                                        double omega_max = kDefaultOmegaMax) {
  const SeaStateValidation v = validate_sea_state(params);
  if (!v.accepted) {
    throw std::invalid_argument("sea state rejected: " + v.reason);
  }
  if (n_components < 2) {
    throw std::invalid_argument("spectrum grid needs at least 2 components");
  }
  if (!(omega_min > 0.0) || !(omega_min < omega_max)) {
    throw std::invalid_argument("require 0 < omega_min < omega_max");
  }
  SpectrumGrid grid;
  grid.delta_omega = (omega_max - omega_min) / static_cast<double>(n_components);
  grid.omegas.resize(n_components);
  grid.wavenumbers.resize(n_components);
  grid.densities.resize(n_components);
  grid.expected_amplitudes.resize(n_components);
  double energy = 0.0;
  for (std::size_t i = 0; i < n_components; ++i) {
    const double w = omega_min + (static_cast<double>(i) + 0.5) * grid.delta_omega;
    const double s = spectrum_density(params, w);
    grid.omegas[i] = w;
    grid.wavenumbers[i] = w * w / kGravity;
    grid.densities[i] = s;
    grid.expected_amplitudes[i] = std::sqrt(2.0 * s * grid.delta_omega);
    energy += s * grid.delta_omega;
  }
  const double m0 = params.hs_m * params.hs_m / 16.0;
  if (energy < kMinEnergyCapture * m0) {
    throw std::invalid_argument(
        "spectrum grid captures only " + std::to_string(100.0 * energy / m0) +
        "% of the wave energy; widen [omega_min, omega_max] or add components");
  }
  return grid;
}

enum class AmplitudeConvention {
  // Rayleigh scale sqrt(S dw): E[a^2] = 2 S dw, realized variance equals m0.
  EnergyConserving,
  // Rayleigh mean mu_i = sqrt(2 S dw): matches the published density but
  // inflates variance by 4/pi.
  PaperLiteral,
};

struct WaveRealization {
  std::vector<double> omegas;
  std::vector<double> wavenumbers;
  std::vector<double> amplitudes;
  std::vector<double> phases;   // [0, 2pi)
  std::uint64_t seed = 0;

  std::size_t n_components() const { return omegas.size(); }

  /// Upper bound on |eta| for this realization.
  double crest_bound() const {
    double s = 0.0;
    for (double a : amplitudes) s += a;
    return s;
  }
};

inline WaveRealization sample_realization(const SpectrumGrid& grid,
                                          std::uint64_t seed,
                                          AmplitudeConvention convention) {
  const std::size_t n = grid.n_components();
  WaveRealization real;
  real.seed = seed;
  real.omegas = grid.omegas;
  real.wavenumbers = grid.wavenumbers;
  real.amplitudes.resize(n);
  real.phases.resize(n);
  rng::SplitMix64 gen(seed);
  // Rayleigh(mean mu) has scale mu*sqrt(2/pi), hence the 4/pi energy excess.
  const double scale_factor =
      convention == AmplitudeConvention::PaperLiteral
          ? std::sqrt(4.0 / std::numbers::pi)
          : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sigma =
        scale_factor * std::sqrt(grid.densities[i] * grid.delta_omega);
    real.amplitudes[i] = gen.rayleigh(sigma);
  }
  for (std::size_t i = 0; i < n; ++i) {
    real.phases[i] = gen.uniform(0.0, kTwoPi);
  }
  return real;
}

inline double surface_elevation(const WaveRealization& real, double x, double t) {
  double eta = 0.0;
  const std::size_t n = real.n_components();
  for (std::size_t i = 0; i < n; ++i) {
    eta += real.amplitudes[i] *
           std::cos(real.omegas[i] * t + real.wavenumbers[i] * x + real.phases[i]);
  }
  return eta;
}

/// Elevation along a uniform x lattice at fixed t, via one complex rotation
/// per component per step. Matches pointwise evaluation to ~1e-12 m.
inline std::vector<double> elevation_profile(const WaveRealization& real,
                                             double x0, double dx,
                                             std::size_t nx, double t) {
  const std::size_t n = real.n_components();
  std::vector<double> re(n), im(n), rc(n), rs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double ph = real.omegas[i] * t + real.wavenumbers[i] * x0 + real.phases[i];
    re[i] = real.amplitudes[i] * std::cos(ph);
    im[i] = real.amplitudes[i] * std::sin(ph);
    const double step = real.wavenumbers[i] * dx;
    rc[i] = std::cos(step);
    rs[i] = std::sin(step);
  }
  std::vector<double> eta(nx);
  for (std::size_t j = 0; j < nx; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += re[i];
    eta[j] = sum;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = re[i] * rc[i] - im[i] * rs[i];
      im[i] = re[i] * rs[i] + im[i] * rc[i];
      re[i] = r;
    }
  }
  return eta;
}

/// Row-major [it][ix] elevation over a regular (x, t) lattice.
inline std::vector<double> elevation_grid(const WaveRealization& real,
                                          double x0, double dx, std::size_t nx,
                                          double t0, double dt, std::size_t nt) {
  std::vector<double> out;
  out.reserve(nx * nt);
  for (std::size_t j = 0; j < nt; ++j) {
    const std::vector<double> row =
        elevation_profile(real, x0, dx, nx, t0 + static_cast<double>(j) * dt);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

/// Spectral SWH proxy 4*sqrt(var eta(0, t)) from a sampled time trace.
inline double realized_significant_height(const WaveRealization& real,
                                          double duration_s, double dt_s) {
  if (!(dt_s > 0.0)) {
    throw std::invalid_argument("realized_significant_height requires dt_s > 0");
  }
  const std::size_t n = static_cast<std::size_t>(std::floor(duration_s / dt_s));
  if (n == 0) return 0.0;
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double eta = surface_elevation(real, 0.0, static_cast<double>(j) * dt_s);
    sum += eta;
    sum2 += eta * eta;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum2 / static_cast<double>(n) - mean * mean;
  return 4.0 * std::sqrt(var > 0.0 ? var : 0.0);
}

}  // namespace wavelos::sea

#endif  // WAVELOS_SEA_STATE_HPP
