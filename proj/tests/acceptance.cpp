// Acceptance gate: one pass/fail line per criterion, exit code = #failures.
// Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "wavelos/antenna.hpp"
#include "wavelos/dielectric.hpp"
#include "wavelos/los.hpp"
#include "wavelos/output.hpp"
#include "wavelos/power.hpp"
#include "wavelos/regression.hpp"
#include "wavelos/rng.hpp"

using namespace wavelos;

namespace {

int g_failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string title, double budget_s)
      : number_(number), title_(std::move(title)), budget_s_(budget_s),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      if (!detail_.empty()) detail_ += "; ";
      detail_ += what;
    }
  }

  void finish() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    if (elapsed > budget_s_) {
      passed_ = false;
      if (!detail_.empty()) detail_ += "; ";
      detail_ += "over runtime budget " + std::to_string(budget_s_) + " s";
    }
    std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n",
                passed_ ? "PASS" : "FAIL", number_, title_.c_str(), elapsed,
                detail_.empty() ? "" : " -- ", detail_.c_str());
    std::fflush(stdout);
    if (!passed_) ++g_failures;
  }

 private:
  int number_;
  std::string title_;
  double budget_s_;
  std::chrono::steady_clock::time_point start_;
  bool passed_ = true;
  std::string detail_;
};

std::string fmt(double v) { return out::format_double(v); }

// ---------------------------------------------------------------------------

void criterion_1() {
  Criterion c(1, "sea water at S=0 degenerates to pure water", 1.0);
  rng::SplitMix64 gen(12345);
  for (int i = 0; i < 50; ++i) {
    const double f = gen.uniform(0.1, 100.0);
    const double t = gen.uniform(0.0, 30.0);
    const auto pw = dielectric::complex_permittivity(
        {dielectric::MediumKind::PureWater, t, 0.0}, f);
    const auto sw = dielectric::complex_permittivity(
        {dielectric::MediumKind::SeaWater, t, 0.0}, f);
    c.require(std::abs(sw.eps_real - pw.eps_real) < 1e-9 * std::abs(pw.eps_real),
              "eps_real mismatch at f=" + fmt(f));
    c.require(std::abs(sw.eps_imag - pw.eps_imag) < 1e-9 * std::abs(pw.eps_imag),
              "eps_imag mismatch at f=" + fmt(f));
  }
  c.finish();
}

void criterion_2() {
  Criterion c(2, "penetration depth anchors and ordering at 1 GHz", 1.0);
  const double d_sea = dielectric::penetration_depth(
      dielectric::complex_permittivity({dielectric::MediumKind::SeaWater, 20.0, 35.0}, 1.0));
  const double d_pure = dielectric::penetration_depth(
      dielectric::complex_permittivity({dielectric::MediumKind::PureWater, 20.0, 0.0}, 1.0));
  const double d_ice = dielectric::penetration_depth(
      dielectric::complex_permittivity({dielectric::MediumKind::Ice, -20.0, 0.0}, 1.0));
  c.require(d_sea >= 0.005 && d_sea <= 0.02, "delta_sea=" + fmt(d_sea));
  c.require(d_ice >= 300.0 && d_ice <= 3000.0, "delta_ice=" + fmt(d_ice));
  c.require(d_sea < d_pure && d_pure < d_ice, "ordering violated");
  c.finish();
}

void criterion_3() {
  Criterion c(3, "energy conservation and convention variance ratio", 30.0);
  sea::SeaStateParams p{1.0, 4.0, {}};
  const sea::SpectrumGrid grid = sea::build_spectrum_grid(p);
  const std::size_t n_real = 200;
  double var_ec = 0.0, var_pl = 0.0;
  std::size_t n_samples = 0;
  double swh_sum = 0.0;
  for (std::size_t r = 0; r < n_real; ++r) {
    const std::uint64_t seed = rng::derive_stream_seed(99, r);
    const auto ec = sea::sample_realization(grid, seed, sea::AmplitudeConvention::EnergyConserving);
    const auto pl = sea::sample_realization(grid, seed, sea::AmplitudeConvention::PaperLiteral);
    swh_sum += sea::realized_significant_height(ec, 60.0, 0.1);
    for (std::size_t j = 0; j < 600; ++j) {
      const double t = 0.1 * static_cast<double>(j);
      const double e1 = sea::surface_elevation(ec, 0.0, t);
      const double e2 = sea::surface_elevation(pl, 0.0, t);
      var_ec += e1 * e1;
      var_pl += e2 * e2;
      ++n_samples;
    }
  }
  const double swh = swh_sum / static_cast<double>(n_real);
  const double ratio = var_pl / var_ec;
  c.require(swh >= 0.9 && swh <= 1.1, "realized SWH=" + fmt(swh));
  c.require(ratio >= 1.15 && ratio <= 1.40, "variance ratio=" + fmt(ratio));
  c.finish();
}

bool exhaustively_blocked(const sea::WaveRealization& real,
                          const los::LinkGeometry& geom, double t) {
  const double eta0 = sea::surface_elevation(real, 0.0, t);
  const double lhs =
      (geom.tower_height_m - (eta0 + geom.antenna_height_m)) / geom.distance_m;
  for (std::size_t j = 1;; ++j) {
    const double x = static_cast<double>(j) * geom.search_step_m;
    if (!(x < geom.distance_m)) break;
    const double rhs =
        (geom.tower_height_m - sea::surface_elevation(real, x, t)) /
        (geom.distance_m - x);
    if (lhs > rhs) return true;
  }
  return false;
}

void criterion_4() {
  Criterion c(4, "scanner matches brute-force blocking oracle", 10.0);
  rng::SplitMix64 gen(777);
  std::size_t checks = 0, agree = 0;
  for (int scenario = 0; scenario < 20; ++scenario) {
    sea::WaveRealization real;
    const std::size_t n_comp = 1 + gen.next() % 4;
    for (std::size_t i = 0; i < n_comp; ++i) {
      real.omegas.push_back(gen.uniform(0.3, 2.0 * std::numbers::pi * 1.5));
      real.wavenumbers.push_back(real.omegas.back() * real.omegas.back() / sea::kGravity);
      real.amplitudes.push_back(gen.uniform(0.0, 0.8));
      real.phases.push_back(gen.uniform(0.0, sea::kTwoPi));
    }
    los::LinkGeometry geom{gen.uniform(20.0, 50.0), gen.uniform(5.0, 40.0),
                           gen.uniform(0.0, 0.5), 0.1};
    for (int step = 0; step < 100; ++step) {
      const double t = 0.1 * step;
      ++checks;
      if (los::find_first_blocker(real, geom, t).has_value() ==
          exhaustively_blocked(real, geom, t)) {
        ++agree;
      }
    }
  }
  c.require(agree == checks, std::to_string(checks - agree) + "/" +
                                 std::to_string(checks) + " disagreements");
  c.finish();
}

void criterion_5() {
  Criterion c(5, "per-seed monotonicity in h_a, T_p and distance", 120.0);
  los::MonteCarloOptions opts;
  opts.n_threads = 0;

  // raising h_a 0 -> 1 m never flips a flag to blocked
  {
    sea::SeaStateParams p{0.5, 2.0, {}};
    const sea::SpectrumGrid grid = sea::build_spectrum_grid(p);
    los::LinkGeometry lo{1000.0, 30.0, 0.0, 1.0};
    los::LinkGeometry hi{1000.0, 30.0, 1.0, 1.0};
    bool flip = false;
    for (std::size_t r = 0; r < 100 && !flip; ++r) {
      const auto real = sea::sample_realization(
          grid, rng::derive_stream_seed(21, r), sea::AmplitudeConvention::EnergyConserving);
      const auto tl_lo = los::los_timeline(real, lo, 60.0, 0.1);
      const auto tl_hi = los::los_timeline(real, hi, 60.0, 0.1);
      for (std::size_t j = 0; j < tl_lo.flags.size(); ++j) {
        if (tl_lo.flags[j] == 1 && tl_hi.flags[j] == 0) flip = true;
      }
    }
    c.require(!flip, "raising h_a flipped a clear flag to blocked");
  }
  // P_LoS nondecreasing in T_p on common seeds
  {
    los::LinkGeometry geom{1000.0, 30.0, 1.0, 1.0};
    const auto pts = los::sweep(los::SweepAxis::PeakPeriod, {10.0, 12.0, 14.0, 16.0},
                                {4.0, 10.0, {}}, geom, 60.0, 0.1, 200, 21,
                                sea::AmplitudeConvention::EnergyConserving, opts);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      c.require(pts[i].stats.p_los >= pts[i - 1].stats.p_los,
                "p_los dropped from T_p=" + fmt(pts[i - 1].value) + " to " +
                    fmt(pts[i].value));
    }
  }
  // P_LoS nonincreasing in distance on common seeds
  {
    los::LinkGeometry geom{1000.0, 30.0, 0.0, 1.0};
    const auto pts = los::sweep(los::SweepAxis::Distance,
                                {500.0, 1000.0, 1500.0, 2000.0}, {0.5, 2.0, {}},
                                geom, 60.0, 0.1, 200, 21,
                                sea::AmplitudeConvention::EnergyConserving, opts);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      c.require(pts[i].stats.p_los <= pts[i - 1].stats.p_los,
                "p_los rose from d=" + fmt(pts[i - 1].value) + " to " +
                    fmt(pts[i].value));
    }
  }
  c.finish();
}

void criterion_6() {
  Criterion c(6, "characterization-table bands under nominal geometry", 300.0);
  los::MonteCarloOptions opts;
  opts.n_threads = 0;
  for (const regression::TableRow& row : regression::table_rows()) {
    if (!row.p_los_min && !row.mu_min_s && !row.gamma_expected_s) continue;
    const regression::RowResult r = regression::check_row(row, 1000, 1, opts);
    c.require(r.passed, "(" + fmt(row.hs_m) + ", " + fmt(row.tp_s) + ", " +
                            fmt(row.ha_m) + "): " +
                            (r.detail.empty() ? "ok" : r.detail) +
                            " p_los=" + fmt(r.stats.p_los) +
                            " mu=" + fmt(r.stats.mu_clos_s) +
                            " gamma=" + fmt(r.stats.gamma_clos_s));
  }
  // informative only: tower-height sensitivity for the mildest state
  for (double htwr : {10.0, 20.0, 30.0, 50.0}) {
    los::LinkGeometry geom{1000.0, htwr, 0.0, 1.0};
    const auto stats = los::run_monte_carlo({0.12, 2.0, {}}, geom, 60.0, 0.1,
                                            200, 1,
                                            sea::AmplitudeConvention::EnergyConserving, opts);
    std::printf("  [info] criterion 6 sensitivity: htwr=%g m -> p_los=%s\n",
                htwr, fmt(stats.p_los).c_str());
  }
  c.finish();
}

void criterion_7() {
  Criterion c(7, "statistics algebra identities", 60.0);
  los::MonteCarloOptions opts;
  opts.n_threads = 0;
  const auto stats = los::run_monte_carlo({0.24, 2.0, {}},
                                          {1000.0, 30.0, 0.0, 1.0}, 60.0, 0.1,
                                          100, 7,
                                          sea::AmplitudeConvention::EnergyConserving, opts);
  double share_sum = 0.0;
  for (double s : stats.time_share) share_sum += s;
  c.require(std::abs(share_sum - 1.0) < 1e-12, "sum P_T^k=" + fmt(share_sum));
  c.require(stats.ccdf[0] == 1.0, "F(t^1)=" + fmt(stats.ccdf[0]));
  for (std::size_t k = 1; k < stats.ccdf.size(); ++k) {
    c.require(stats.ccdf[k] <= stats.ccdf[k - 1], "CCDF not nonincreasing");
  }
  c.require(std::abs(los::outage_probability(stats, stats.dt_s) - stats.p_blos) < 1e-12,
            "P_out(dt) != P_BLoS");

  // segment partition, checked per realization
  sea::SeaStateParams p{0.24, 2.0, {}};
  const sea::SpectrumGrid grid = sea::build_spectrum_grid(p);
  for (std::size_t r = 0; r < 20; ++r) {
    const auto real = sea::sample_realization(
        grid, rng::derive_stream_seed(7, r), sea::AmplitudeConvention::EnergyConserving);
    const auto seg = los::segment_timeline(
        los::los_timeline(real, {1000.0, 30.0, 0.0, 1.0}, 60.0, 0.1));
    c.require(seg.total_steps() == 600, "segment partition != window");
  }
  c.finish();
}

void criterion_8() {
  Criterion c(8, "antenna tilt and directivity anchors", 60.0);
  c.require(std::abs(antenna::required_length(1.0, 17.66) - 1.0494) <= 0.001,
            "L(1, 17.66deg)=" + fmt(antenna::required_length(1.0, 17.66)));
  c.require(std::abs(antenna::required_length(1.0, 9.338) - 1.0134) <= 0.001,
            "L(1, 9.338deg)=" + fmt(antenna::required_length(1.0, 9.338)));
  const double peak = antenna::dipole_directivity(0.0);
  c.require(std::abs(peak - 2.156) <= 0.01, "dipole peak=" + fmt(peak));
  const double d17 = antenna::dipole_directivity(17.66);
  c.require(d17 >= 1.2 && d17 <= 1.8, "dipole(17.66deg)=" + fmt(d17));

  // roughest accepted state: max |tilt| across 1000 realizations
  sea::SeaStateParams p{10.0, 13.0, {}};
  const sea::SpectrumGrid grid = sea::build_spectrum_grid(p);
  double max_tilt = 0.0;
  for (std::size_t r = 0; r < 1000; ++r) {
    const auto real = sea::sample_realization(
        grid, rng::derive_stream_seed(13, r), sea::AmplitudeConvention::EnergyConserving);
    for (const auto& s : antenna::tilt_series(real, 0.0, 60.0, 0.1)) {
      max_tilt = std::max(max_tilt, std::abs(s.theta_a_deg));
    }
  }
  c.require(max_tilt >= 15.0 && max_tilt <= 20.0, "max |tilt|=" + fmt(max_tilt));
  c.finish();
}

void criterion_9() {
  Criterion c(9, "PA power anchors and inverse round trip", 1.0);
  power::PaAssumptions a;
  a.pae_fraction = 0.4;
  a.pa_input_dbm = -std::numeric_limits<double>::infinity();
  a.switch_loss_db = 1.0;
  a.antenna_gain_dbi = 0.0;
  a.backoff_db = 6.0;
  const double dc20 = power::pa_dc_power_mw(20.0, a);
  const double dc23 = power::pa_dc_power_mw(23.0, a);
  c.require(std::abs(dc20 - 1253.0) <= 1.0, "dc(20 dBm)=" + fmt(dc20));
  c.require(std::abs(dc23 - 2500.0) <= 1.0, "dc(23 dBm)=" + fmt(dc23));
  rng::SplitMix64 gen(4);
  for (int i = 0; i < 100; ++i) {
    const double target = gen.uniform(-20.0, 40.0);
    c.require(std::abs(power::eirp_dbm(power::pa_dc_power_mw(target, a), a) -
                       target) < 1e-9,
              "round trip residual at " + fmt(target) + " dBm");
  }
  c.finish();
}

void criterion_10() {
  Criterion c(10, "stats bytes identical across thread counts", 60.0);
  sea::SeaStateParams p{0.24, 2.0, {}};
  los::LinkGeometry geom{1000.0, 30.0, 0.1, 1.0};
  los::MonteCarloOptions opts;
  opts.n_threads = 1;
  const auto a = los::run_monte_carlo(p, geom, 60.0, 0.1, 64, 5,
                                      sea::AmplitudeConvention::EnergyConserving, opts);
  opts.n_threads = 4;
  const auto b = los::run_monte_carlo(p, geom, 60.0, 0.1, 64, 5,
                                      sea::AmplitudeConvention::EnergyConserving, opts);
  opts.n_threads = 3;
  const auto d = los::run_monte_carlo(p, geom, 60.0, 0.1, 64, 5,
                                      sea::AmplitudeConvention::EnergyConserving, opts);
  const std::string ja = out::stats_to_json(a).dump(2);
  c.require(ja == out::stats_to_json(b).dump(2), "1 vs 4 threads differ");
  c.require(ja == out::stats_to_json(d).dump(2), "1 vs 3 threads differ");
  c.finish();
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
  } else {
    std::printf("all criteria passed\n");
  }
  return g_failures;
}
