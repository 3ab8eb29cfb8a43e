#ifndef WAVELOS_DIELECTRIC_HPP
#define WAVELOS_DIELECTRIC_HPP

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

// Complex relative permittivity of pure water, sea water and ice following
// the ITU surface-electrical-characteristics model, plus the penetration
// depth and through-thickness attenuation derived from it.

namespace wavelos::dielectric {

inline constexpr double kSpeedOfLightMPerNs = 0.299792458;  // m * GHz
inline constexpr double kMinFrequencyGhz = 0.1;
inline constexpr double kMaxFrequencyGhz = 100.0;
// 20*log10(e): dB of field-amplitude decay per penetration depth.
inline constexpr double kDbPerPenetrationDepth = 8.685889638065035;

enum class MediumKind { PureWater, SeaWater, Ice };

struct MediumSpec {
  MediumKind kind = MediumKind::SeaWater;
  double temperature_celsius = 20.0;
  double salinity_ppt = 0.0;  // g/kg; meaningful for SeaWater only
};

struct MediumSample {
  double eps_real = 1.0;
  double eps_imag = 0.0;
  double frequency_ghz = 1.0;
};

namespace detail {

inline double theta_of(double temperature_celsius) {
  return 300.0 / (temperature_celsius + 273.15) - 1.0;
}

struct DebyeTerms {
  double eps_static, eps_mid, eps_inf, f1, f2;
};

inline DebyeTerms pure_water_terms(double t_celsius) {
  const double th = theta_of(t_celsius);
  DebyeTerms d;
  d.eps_static = 77.6 + 103.3 * th;
  d.eps_mid = 0.0671 * d.eps_static;
  d.eps_inf = 3.52 - 7.52 * th;
  d.f1 = 20.2 - 146.4 * th + 316.0 * th * th;
  d.f2 = 39.8 * d.f1;
  return d;
}

inline MediumSample double_debye(const DebyeTerms& d, double f_ghz,
                                 double conductivity_s_per_m) {
  const double r1 = f_ghz / d.f1;
  const double r2 = f_ghz / d.f2;
  MediumSample s;
  s.frequency_ghz = f_ghz;
  s.eps_real = (d.eps_static - d.eps_mid) / (1.0 + r1 * r1) +
               (d.eps_mid - d.eps_inf) / (1.0 + r2 * r2) + d.eps_inf;
  s.eps_imag = r1 * (d.eps_static - d.eps_mid) / (1.0 + r1 * r1) +
               r2 * (d.eps_mid - d.eps_inf) / (1.0 + r2 * r2) +
               18.0 * conductivity_s_per_m / f_ghz;
  return s;
}

/// Salinity-shifted Debye terms for sea water. The S^2 terms follow the
/// ITU source; at S = 0 everything collapses to the pure-water terms.
inline DebyeTerms sea_water_terms(double t, double s) {
  const DebyeTerms pw = pure_water_terms(t);
  DebyeTerms d;
  d.eps_static = pw.eps_static * std::exp(-3.56417e-3 * s + 4.74868e-6 * s * s +
                                          1.15574e-5 * t * s);
  d.f1 = pw.f1 * (1.0 + s * (2.39357e-3 - 3.13530e-5 * t + 2.52477e-7 * t * t));
  d.eps_mid = pw.eps_mid * std::exp(-6.28908e-3 * s + 1.76032e-4 * s * s -
                                    9.22144e-5 * t * s);
  d.f2 = pw.f2 * (1.0 + s * (-1.99723e-2 + 1.81176e-4 * t));
  d.eps_inf = pw.eps_inf * (1.0 + s * (-2.04265e-3 + 1.57883e-4 * t));
  return d;
}

inline double sea_water_conductivity(double t, double s) {
  const double sigma35 = 2.903602 + 8.607e-2 * t + 4.738817e-4 * t * t -
                         2.991e-6 * t * t * t + 4.3047e-9 * t * t * t * t;
  const double r15 = s * (37.5109 + 5.45216 * s + 1.4409e-2 * s * s) /
                     (1004.75 + 182.283 * s + s * s);
  const double a0 = (6.9431 + 3.2841 * s - 9.9486e-2 * s * s) /
                    (84.850 + 69.024 * s + s * s);
  const double a1 = 49.843 - 0.2276 * s + 0.198e-2 * s * s;
  const double rt15 = 1.0 + a0 * (t - 15.0) / (a1 + t);
  return sigma35 * r15 * rt15;
}

inline MediumSample ice_sample(double t, double f_ghz) {
  const double th = theta_of(t);
  MediumSample s;
  s.frequency_ghz = f_ghz;
  s.eps_real = 3.1884 + 0.00091 * t;
  const double a = (0.00504 + 0.0062 * th) * std::exp(-22.1 * th);
  const double tau = 335.0 / (t + 273.15);
  const double e = std::exp(-tau);
  const double b = 0.0207 / (t + 273.15) * e / ((e - 1.0) * (e - 1.0)) +
                   1.16e-11 * f_ghz * f_ghz + std::exp(-9.963 + 0.0372 * t);
  s.eps_imag = a / f_ghz + b * f_ghz;
  return s;
}

}  // namespace detail

inline void validate_medium(const MediumSpec& medium) {
  if (medium.salinity_ppt < 0.0) {
    throw std::invalid_argument("salinity must be >= 0 ppt, got " +
                                std::to_string(medium.salinity_ppt));
  }
  if (medium.kind == MediumKind::Ice && medium.temperature_celsius > 0.0) {
    throw std::invalid_argument(
        "ice requires temperature <= 0 degC, got " +
        std::to_string(medium.temperature_celsius));
  }
}

inline MediumSample complex_permittivity(const MediumSpec& medium,
                                         double frequency_ghz) {
  validate_medium(medium);
  if (!(frequency_ghz >= kMinFrequencyGhz && frequency_ghz <= kMaxFrequencyGhz)) {
    throw std::invalid_argument("frequency must lie in [0.1, 100] GHz, got " +
                                std::to_string(frequency_ghz));
  }
  switch (medium.kind) {
    case MediumKind::PureWater:
      return detail::double_debye(
          detail::pure_water_terms(medium.temperature_celsius), frequency_ghz,
          0.0);
    case MediumKind::SeaWater:
      return detail::double_debye(
          detail::sea_water_terms(medium.temperature_celsius,
                                  medium.salinity_ppt),
          frequency_ghz,
          detail::sea_water_conductivity(medium.temperature_celsius,
                                         medium.salinity_ppt));
    case MediumKind::Ice:
      return detail::ice_sample(medium.temperature_celsius, frequency_ghz);
  }
  throw std::logic_error("unknown medium kind");
}

/// Depth at which the field amplitude falls to 1/e, in meters.
/// Lossless media (eps_imag == 0) return +infinity.
inline double penetration_depth(const MediumSample& sample) {
  if (sample.eps_imag == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  const double wavelength_m = kSpeedOfLightMPerNs / sample.frequency_ghz;
  const double mag = std::hypot(sample.eps_real, sample.eps_imag);
  return wavelength_m / (2.0 * std::numbers::pi) *
         std::sqrt(2.0 / (mag - sample.eps_real));
}

/// Field-amplitude attenuation in dB through the given thickness:
/// 20*log10(e) dB per penetration depth.
inline double attenuation_db(const MediumSpec& medium, double frequency_ghz,
                             double thickness_m) {
  if (thickness_m < 0.0) {
    throw std::invalid_argument("thickness must be >= 0 m, got " +
                                std::to_string(thickness_m));
  }
  const double delta = penetration_depth(complex_permittivity(medium, frequency_ghz));
  if (std::isinf(delta)) {
    return 0.0;
  }
  return kDbPerPenetrationDepth * thickness_m / delta;
}

}  // namespace wavelos::dielectric

#endif  // WAVELOS_DIELECTRIC_HPP
