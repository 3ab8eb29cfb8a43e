#ifndef WAVELOS_ANTENNA_HPP
#define WAVELOS_ANTENNA_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wavelos/sea_state.hpp"

// Buoy antenna tilt from the local surface slope, required physical antenna
// length for a target effective height, and directivity excursion along a
// tilt trajectory.

namespace wavelos::antenna {

inline constexpr double kDegPerRad = 180.0 / std::numbers::pi;

struct TiltSample {
  double t_s = 0.0;
  double theta_a_deg = 0.0;
};

/// Tilt angle series at transect position x: theta(t) is the arctangent of
/// the central-difference surface slope with the given stencil half-width.
inline std::vector<TiltSample> tilt_series(const sea::WaveRealization& real,
                                           double x, double window_s,
                                           double dt_s,
                                           double stencil_half_width_m = 1.0) {
  if (!(dt_s > 0.0) || !(window_s > 0.0)) {
    throw std::invalid_argument("tilt_series requires window_s, dt_s > 0");
  }
  if (!(stencil_half_width_m > 0.0)) {
    throw std::invalid_argument("stencil half-width must be > 0");
  }
  const std::size_t n = static_cast<std::size_t>(std::floor(window_s / dt_s));
  std::vector<TiltSample> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) * dt_s;
    const double slope =
        (sea::surface_elevation(real, x + stencil_half_width_m, t) -
         sea::surface_elevation(real, x - stencil_half_width_m, t)) /
        (2.0 * stencil_half_width_m);
    out.push_back({t, std::atan(slope) * kDegPerRad});
  }
  return out;
}

/// Physical antenna length needed to keep the tip at effective height h_a
/// when tilted by theta: L = h_a / cos(theta).
inline double required_length(double h_a_m, double theta_a_deg) {
  if (!(std::abs(theta_a_deg) < 90.0)) {
    throw std::invalid_argument("tilt must satisfy |theta| < 90 deg");
  }
  return h_a_m / std::cos(theta_a_deg / kDegPerRad);
}

/// Analytic half-wave dipole directivity in dBi at an angle measured from
/// broadside. Approaches -inf at the axial null.
inline double dipole_directivity(double angle_from_broadside_deg) {
  const double psi = std::abs(angle_from_broadside_deg);
  if (psi > 90.0) {
    throw std::invalid_argument("angle must satisfy |psi| <= 90 deg");
  }
  // cos(90 deg) is ~6e-17 in floating point; the 0/0 below would wrongly
  // evaluate to the peak instead of the axial null
  if (psi == 90.0) return -std::numeric_limits<double>::infinity();
  const double rad = psi / kDegPerRad;
  const double c = std::cos(rad);
  if (c <= 0.0) return -std::numeric_limits<double>::infinity();
  const double f = std::cos(std::numbers::pi / 2.0 * std::sin(rad)) / c;
  const double d = 1.643 * f * f;
  if (d <= 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(d);
}

enum class PatternKind { AnalyticHalfWaveDipole, Tabulated };

struct ElevationPattern {
  PatternKind kind = PatternKind::AnalyticHalfWaveDipole;
  // (angle_from_broadside_deg, dbi), strictly increasing angles
  std::vector<std::pair<double, double>> table;
  bool symmetric = false;  // tabulated only over [0, ...], mirror for < 0

  static ElevationPattern analytic_dipole() { return {}; }

  static ElevationPattern tabulated(std::vector<std::pair<double, double>> rows,
                                    bool symmetric_pattern) {
    if (rows.size() < 2) {
      throw std::invalid_argument("tabulated pattern needs at least 2 rows");
    }
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (!(rows[i].first > rows[i - 1].first)) {
        throw std::invalid_argument("pattern angles must be strictly increasing");
      }
    }
    ElevationPattern p;
    p.kind = PatternKind::Tabulated;
    p.table = std::move(rows);
    p.symmetric = symmetric_pattern;
    return p;
  }

  double evaluate(double angle_deg) const {
    if (kind == PatternKind::AnalyticHalfWaveDipole) {
      return dipole_directivity(angle_deg);
    }
    double a = symmetric ? std::abs(angle_deg) : angle_deg;
    if (a < table.front().first || a > table.back().first) {
      throw std::invalid_argument("tilt angle outside tabulated pattern coverage");
    }
    const auto upper = std::lower_bound(
        table.begin(), table.end(), a,
        [](const std::pair<double, double>& row, double v) { return row.first < v; });
    if (upper == table.begin()) return upper->second;
    const auto lo = upper - 1;
    if (upper == table.end()) return lo->second;
    const double w = (a - lo->first) / (upper->first - lo->first);
    return lo->second + w * (upper->second - lo->second);
  }
};

/// Min/max pattern gain over a tilt trajectory.
inline std::pair<double, double> gain_excursion(
    const ElevationPattern& pattern, const std::vector<TiltSample>& tilts) {
  if (tilts.empty()) {
    throw std::invalid_argument("gain_excursion requires a nonempty tilt series");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const TiltSample& s : tilts) {
    const double g = pattern.evaluate(s.theta_a_deg);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  return {lo, hi};
}

}  // namespace wavelos::antenna

#endif  // WAVELOS_ANTENNA_HPP
