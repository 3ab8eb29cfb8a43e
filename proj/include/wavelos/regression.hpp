#ifndef WAVELOS_REGRESSION_HPP
#define WAVELOS_REGRESSION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavelos/los.hpp"
#include "wavelos/output.hpp"

// Regression harness over the published characterization table. The source
// study never states the buoy-tower distance or tower height, so exact
// reproduction is impossible; rows carry either wide acceptance bands under
// the nominal geometry (d = 1000 m, h_twr = 30 m) or are report-only. A
// tower-height sensitivity sweep documents how strongly geometry moves the
// numbers.

namespace wavelos::regression {

inline constexpr double kNominalDistanceM = 1000.0;
inline constexpr double kNominalTowerHeightM = 30.0;

struct TableRow {
  double hs_m, tp_s, ha_m;
  // reference values from the published table
  double ref_p_los, ref_mu_s, ref_sigma_s, ref_gamma_s;
  // band checks under nominal geometry; unset = report-only row
  std::optional<double> p_los_min, p_los_max;
  std::optional<double> mu_min_s, mu_max_s;
  std::optional<double> gamma_expected_s;
};

inline const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> rows = {
      {0.12, 2.0, 0.0, 0.98595, 12.98, 13.07, 1.1, 0.96, 1.0, {}, {}, {}},
      {0.12, 1.0, 0.0, 0.98591, 9.61, 10.78, 0.8, {}, {}, {}, {}, {}},
      {0.12, 1.0, 0.1, 0.99999, 59.88, 2.25, 60.0, 0.999, 1.0, {}, {}, 60.0},
      {0.24, 2.0, 0.0, 0.8140, 1.742, 1.626, 0.9, 0.70, 0.92, {}, {}, {}},
      {0.67, 2.8, 0.4, 0.9548, 7.87, 9.16, 0.1, {}, {}, {}, {}, {}},
      {0.67, 2.8, 0.8, 0.9992, 51.37, 17.09, 60.0, 0.99, 1.0, 40.0, 58.0, {}},
      {2.0, 9.0, 1.0, 0.9924, 41.21, 21.07, 60.0, {}, {}, {}, {}, {}},
      {4.0, 10.0, 1.0, 0.8422, 8.78, 7.88, 4.6, 0.74, 0.94, {}, {}, {}},
      {6.0, 14.0, 1.0, 0.8346, 10.55, 8.94, 6.1, {}, {}, {}, {}, {}},
  };
  return rows;
}

struct RowResult {
  TableRow row;
  los::LosStatistics stats;
  bool has_bands = false;
  bool passed = true;
  std::string detail;
};

struct SensitivityPoint {
  double htwr_m;
  double p_los;
};

struct MonotonicityResult {
  std::string name;
  std::vector<double> axis_values;
  std::vector<double> p_los;
  bool passed = false;
};

struct Report {
  std::vector<RowResult> rows;
  std::vector<SensitivityPoint> htwr_sensitivity;  // for the first table row
  std::vector<MonotonicityResult> monotonicity;
  bool all_banded_rows_passed = true;
};

/// The default band [omega_min, 2pi*1.5] misses the 97% energy-capture gate
/// for short peak periods (analytic capture exp(-1.25 (omega_p/omega_max)^4)
/// is 78% at T_p = 1 s). Widen to 99% capture for those rows; dt = 0.1 s
/// still resolves the resulting band.
inline double row_omega_max(double tp_s) {
  const double omega_p = sea::kTwoPi / tp_s;
  const double capture =
      std::exp(-1.25 * std::pow(omega_p / sea::kDefaultOmegaMax, 4.0));
  if (capture >= 0.97) return sea::kDefaultOmegaMax;
  return omega_p * std::pow(1.25 / -std::log(0.99), 0.25);
}

inline RowResult check_row(const TableRow& row, std::size_t n_realizations,
                           std::uint64_t master_seed,
                           los::MonteCarloOptions opts) {
  los::LinkGeometry geom;
  geom.distance_m = kNominalDistanceM;
  geom.tower_height_m = kNominalTowerHeightM;
  geom.antenna_height_m = row.ha_m;
  opts.omega_max = row_omega_max(row.tp_s);
  RowResult result;
  result.row = row;
  result.stats = los::run_monte_carlo(
      {row.hs_m, row.tp_s, {}}, geom, 60.0, 0.1, n_realizations, master_seed,
      sea::AmplitudeConvention::EnergyConserving, opts);
  result.has_bands = row.p_los_min.has_value() || row.mu_min_s.has_value() ||
                     row.gamma_expected_s.has_value();
  if (row.p_los_min && result.stats.p_los < *row.p_los_min) {
    result.passed = false;
    result.detail += "p_los below band; ";
  }
  if (row.p_los_max && result.stats.p_los > *row.p_los_max) {
    result.passed = false;
    result.detail += "p_los above band; ";
  }
  if (row.mu_min_s &&
      (result.stats.mu_clos_s < *row.mu_min_s || result.stats.mu_clos_s > *row.mu_max_s)) {
    result.passed = false;
    result.detail += "mu_clos outside band; ";
  }
  if (row.gamma_expected_s &&
      result.stats.gamma_clos_s != *row.gamma_expected_s) {
    result.passed = false;
    result.detail += "gamma_clos mismatch; ";
  }
  return result;
}

inline Report run_regression(std::size_t n_realizations = 1000,
                             std::uint64_t master_seed = 1,
                             unsigned n_threads = 0,
                             std::size_t sensitivity_realizations = 300) {
  los::MonteCarloOptions opts;
  opts.n_threads = n_threads;
  Report report;
  for (const TableRow& row : table_rows()) {
    report.rows.push_back(check_row(row, n_realizations, master_seed, opts));
    if (report.rows.back().has_bands && !report.rows.back().passed) {
      report.all_banded_rows_passed = false;
    }
  }

  // tower-height sensitivity for the first table row
  {
    const TableRow& row = table_rows().front();
    for (double htwr : {10.0, 20.0, 30.0, 50.0}) {
      los::LinkGeometry geom{kNominalDistanceM, htwr, row.ha_m, 1.0};
      const los::LosStatistics stats = los::run_monte_carlo(
          {row.hs_m, row.tp_s, {}}, geom, 60.0, 0.1, sensitivity_realizations,
          master_seed, sea::AmplitudeConvention::EnergyConserving, opts);
      report.htwr_sensitivity.push_back({htwr, stats.p_los});
    }
  }

  // published trend directions: P_LoS rises with T_p, falls with distance
  {
    MonotonicityResult mono;
    mono.name = "p_los_nondecreasing_in_tp";
    mono.axis_values = {10.0, 12.0, 14.0, 16.0};
    los::LinkGeometry geom{kNominalDistanceM, kNominalTowerHeightM, 1.0, 1.0};
    const auto pts = los::sweep(
        los::SweepAxis::PeakPeriod, mono.axis_values, {4.0, 10.0, {}}, geom,
        60.0, 0.1, sensitivity_realizations, master_seed,
        sea::AmplitudeConvention::EnergyConserving, opts);
    mono.passed = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      mono.p_los.push_back(pts[i].stats.p_los);
      if (i > 0 && pts[i].stats.p_los < pts[i - 1].stats.p_los) mono.passed = false;
    }
    report.monotonicity.push_back(mono);
  }
  {
    MonotonicityResult mono;
    mono.name = "p_los_nonincreasing_in_distance";
    mono.axis_values = {500.0, 1000.0, 1500.0, 2000.0};
    los::LinkGeometry geom{kNominalDistanceM, kNominalTowerHeightM, 0.0, 1.0};
    const auto pts = los::sweep(
        los::SweepAxis::Distance, mono.axis_values, {0.5, 2.0, {}}, geom, 60.0,
        0.1, sensitivity_realizations, master_seed,
        sea::AmplitudeConvention::EnergyConserving, opts);
    mono.passed = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      mono.p_los.push_back(pts[i].stats.p_los);
      if (i > 0 && pts[i].stats.p_los > pts[i - 1].stats.p_los) mono.passed = false;
    }
    report.monotonicity.push_back(mono);
  }
  return report;
}

inline nlohmann::ordered_json report_to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["nominal_geometry"] = {{"d_m", kNominalDistanceM},
                           {"htwr_m", kNominalTowerHeightM}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const RowResult& r : report.rows) {
    nlohmann::ordered_json row;
    row["hs_m"] = r.row.hs_m;
    row["tp_s"] = r.row.tp_s;
    row["ha_m"] = r.row.ha_m;
    row["ref_p_los"] = r.row.ref_p_los;
    row["ref_mu_clos_s"] = r.row.ref_mu_s;
    row["ref_gamma_clos_s"] = r.row.ref_gamma_s;
    row["p_los"] = r.stats.p_los;
    row["mu_clos_s"] = r.stats.mu_clos_s;
    row["sigma_clos_s"] = r.stats.sigma_clos_s;
    row["gamma_clos_s"] = r.stats.gamma_clos_s;
    row["status"] = !r.has_bands ? "report" : (r.passed ? "pass" : "fail");
    if (!r.detail.empty()) row["detail"] = r.detail;
    j["rows"].push_back(row);
  }
  j["htwr_sensitivity"] = nlohmann::ordered_json::array();
  for (const SensitivityPoint& p : report.htwr_sensitivity) {
    j["htwr_sensitivity"].push_back({{"htwr_m", p.htwr_m}, {"p_los", p.p_los}});
  }
  j["monotonicity"] = nlohmann::ordered_json::array();
  for (const MonotonicityResult& m : report.monotonicity) {
    j["monotonicity"].push_back({{"name", m.name},
                                 {"axis_values", m.axis_values},
                                 {"p_los", m.p_los},
                                 {"passed", m.passed}});
  }
  j["all_banded_rows_passed"] = report.all_banded_rows_passed;
  return j;
}

}  // namespace wavelos::regression

#endif  // WAVELOS_REGRESSION_HPP
