#ifndef WAVELOS_LOS_HPP
#define WAVELOS_LOS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "wavelos/sea_state.hpp"

// Wave-blocker search along the buoy-tower transect and the LoS statistics
// built on top of it: P_LoS, CLoS/BLoS segmentation, duration histogram,
// time share, conditional CCDF and outage probability, aggregated over
// Monte Carlo realizations.

namespace wavelos::los {

using sea::AmplitudeConvention;
using sea::SeaStateParams;
using sea::SpectrumGrid;
using sea::WaveRealization;

struct LinkGeometry {
  double distance_m = 1000.0;     // buoy to tower
  double tower_height_m = 30.0;
  double antenna_height_m = 0.0;  // buoy antenna tip above mean sea level
  double search_step_m = 1.0;

  void validate() const {
    if (!(distance_m > 0.0) || !(tower_height_m > 0.0) ||
        !(antenna_height_m >= 0.0) || !(search_step_m > 0.0)) {
      throw std::invalid_argument("link geometry fields must be positive "
                                  "(antenna height may be zero)");
    }
    if (!(antenna_height_m < tower_height_m)) {
      throw std::invalid_argument("antenna_height_m must be below tower_height_m");
    }
    if (search_step_m > distance_m / 10.0) {
      throw std::invalid_argument("search_step_m must be <= distance_m / 10");
    }
  }
};

/// Blocking criterion at transect position x and time t: the surface point
/// subtends a shallower angle to the tower than the buoy antenna does.
inline bool is_blocked(const WaveRealization& real, const LinkGeometry& geom,
                       double t, double x) {
  geom.validate();
  if (!(x > 0.0) || !(x < geom.distance_m)) {
    throw std::invalid_argument("x must lie strictly between buoy and tower");
  }
  const double eta0 = sea::surface_elevation(real, 0.0, t);
  const double lhs =
      (geom.tower_height_m - (eta0 + geom.antenna_height_m)) / geom.distance_m;
  const double rhs = (geom.tower_height_m - sea::surface_elevation(real, x, t)) /
                     (geom.distance_m - x);
  return lhs > rhs;
}

struct Blocker {
  double x_m = 0.0;
  double eta_m = 0.0;
};

namespace detail {

/// Scans one realization's transect per timestep with per-component phase
/// rotations instead of trig calls, exiting at the first blocker. Positions
/// where the LoS ray already clears the crest bound sum(a_i) cannot block
/// and are skipped.
class TransectScanner {
 public:
  TransectScanner(const WaveRealization& real, const LinkGeometry& geom)
      : real_(real), geom_(geom), n_(real.n_components()) {
    geom.validate();
    crest_ = real.crest_bound();
    const double dx = geom.search_step_m;
    // largest n with n*dx strictly inside (0, d)
    n_steps_ = static_cast<std::size_t>(
        std::ceil(geom.distance_m / dx - 1e-9)) - 1;
    rc_.resize(n_);
    rs_.resize(n_);
    re_.resize(n_);
    im_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      rc_[i] = std::cos(real.wavenumbers[i] * dx);
      rs_[i] = std::sin(real.wavenumbers[i] * dx);
    }
  }

  std::optional<Blocker> first_blocker(double t) {
    double eta0 = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double ph = real_.omegas[i] * t + real_.phases[i];
      re_[i] = real_.amplitudes[i] * std::cos(ph);
      im_[i] = real_.amplitudes[i] * std::sin(ph);
      eta0 += re_[i];
    }
    const double d = geom_.distance_m;
    const double h = geom_.tower_height_m;
    const double slope = (h - (eta0 + geom_.antenna_height_m)) / d;
    std::size_t last = n_steps_;
    if (slope > 0.0 && crest_ < h) {
      // ray height h - slope*(d - x) reaches the crest bound at x_star;
      // beyond it eta > ray is impossible
      const double x_star = d - (h - crest_) / slope;
      if (x_star < 0.0) return std::nullopt;
      last = std::min<std::size_t>(
          last, static_cast<std::size_t>(std::floor(x_star / geom_.search_step_m)) + 1);
    }
    const double dx = geom_.search_step_m;
    for (std::size_t j = 1; j <= last; ++j) {
      double eta = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        const double r = re_[i] * rc_[i] - im_[i] * rs_[i];
        im_[i] = re_[i] * rs_[i] + im_[i] * rc_[i];
        re_[i] = r;
        eta += r;
      }
      const double x = static_cast<double>(j) * dx;
      if (eta > h - slope * (d - x)) {
        return Blocker{x, eta};
      }
    }
    return std::nullopt;
  }

 private:
  const WaveRealization& real_;
  LinkGeometry geom_;
  std::size_t n_;
  std::size_t n_steps_;
  double crest_ = 0.0;
  std::vector<double> rc_, rs_, re_, im_;
};

}  // namespace detail

/// First transect position (scanning x = dx, 2dx, ... < d) where the
/// blocking criterion holds, with the surface elevation there.
inline std::optional<Blocker> find_first_blocker(const WaveRealization& real,
                                                 const LinkGeometry& geom,
                                                 double t) {
  detail::TransectScanner scanner(real, geom);
  return scanner.first_blocker(t);
}

struct BlockerLogEntry {
  std::size_t t_index = 0;
  double x_blk_m = 0.0;
  double eta_blk_m = 0.0;
};

struct LosTimeline {
  double dt_s = 0.1;
  std::vector<std::uint8_t> flags;  // 1 = LoS clear
  std::vector<BlockerLogEntry> blocker_log;

  std::size_t n_steps() const { return flags.size(); }
};

inline std::size_t window_step_count(double window_s, double dt_s) {
  if (!(dt_s > 0.0) || !(window_s > 0.0)) {
    throw std::invalid_argument("window_s and dt_s must be > 0");
  }
  const double ratio = window_s / dt_s;
  const std::size_t n = static_cast<std::size_t>(std::llround(ratio));
  if (n == 0 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio + 1e-9) {
    throw std::invalid_argument("window_s must be an integer multiple of dt_s");
  }
  return n;
}

inline void check_temporal_resolution(const WaveRealization& real, double dt_s) {
  double omega_max = 0.0;
  for (double w : real.omegas) omega_max = std::max(omega_max, w);
  const double f_max = omega_max / sea::kTwoPi;
  if (f_max > 0.0 && dt_s >= 1.0 / f_max) {
    throw std::invalid_argument(
        "dt_s = " + std::to_string(dt_s) +
        " s does not resolve the largest frequency component (need dt < " +
        std::to_string(1.0 / f_max) + " s)");
  }
}

inline LosTimeline los_timeline(const WaveRealization& real,
                                const LinkGeometry& geom, double window_s,
                                double dt_s, bool log_blockers = false) {
  check_temporal_resolution(real, dt_s);
  const std::size_t n = window_step_count(window_s, dt_s);
  LosTimeline tl;
  tl.dt_s = dt_s;
  tl.flags.resize(n);
  detail::TransectScanner scanner(real, geom);
  for (std::size_t j = 0; j < n; ++j) {
    const std::optional<Blocker> blk =
        scanner.first_blocker(static_cast<double>(j) * dt_s);
    tl.flags[j] = blk ? 0 : 1;
    if (blk && log_blockers) {
      tl.blocker_log.push_back({j, blk->x_m, blk->eta_m});
    }
  }
  return tl;
}

struct SegmentSet {
  double dt_s = 0.1;
  std::vector<std::size_t> clos_counts;  // run lengths in timesteps
  std::vector<std::size_t> blos_counts;

  std::vector<double> clos_durations_s() const {
    std::vector<double> d(clos_counts.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = static_cast<double>(clos_counts[i]) * dt_s;
    return d;
  }
  std::vector<double> blos_durations_s() const {
    std::vector<double> d(blos_counts.size());
    for (std::size_t i = 0; i < d.size(); ++i)
      d[i] = static_cast<double>(blos_counts[i]) * dt_s;
    return d;
  }
  std::size_t total_clos_steps() const {
    std::size_t s = 0;
    for (std::size_t c : clos_counts) s += c;
    return s;
  }
  std::size_t total_steps() const {
    std::size_t s = total_clos_steps();
    for (std::size_t c : blos_counts) s += c;
    return s;
  }
};

/// Run-length encoding of a timeline into maximal CLoS / BLoS segments.
inline SegmentSet segment_timeline(const LosTimeline& tl) {
  if (tl.flags.empty()) {
    throw std::invalid_argument("cannot segment an empty timeline");
  }
  SegmentSet seg;
  seg.dt_s = tl.dt_s;
  std::size_t run = 1;
  for (std::size_t j = 1; j <= tl.flags.size(); ++j) {
    if (j < tl.flags.size() && tl.flags[j] == tl.flags[j - 1]) {
      ++run;
      continue;
    }
    (tl.flags[j - 1] ? seg.clos_counts : seg.blos_counts).push_back(run);
    run = 1;
  }
  return seg;
}

struct LosStatistics {
  double p_los = 0.0;
  double p_blos = 1.0;
  std::vector<std::uint64_t> histogram;  // h_k over bins ((k-1)dt, k dt], k=1..N
  double mu_clos_s = 0.0;
  double sigma_clos_s = 0.0;
  double gamma_clos_s = 0.0;  // mode: t^k of the max-count bin, ties -> smallest
  std::vector<double> time_share;  // P_T^k
  std::vector<double> ccdf;        // F(t^k | LoS)
  std::size_t n_realizations = 0;
  double dt_s = 0.1;
  double window_s = 60.0;
};

/// P_T^k = h_k t^k / sum_i h_i t^i. Undefined when no CLoS segment exists.
inline std::vector<double> clos_time_share(const LosStatistics& stats) {
  double denom = 0.0;
  for (std::size_t k = 0; k < stats.histogram.size(); ++k) {
    denom += static_cast<double>(stats.histogram[k]) * static_cast<double>(k + 1);
  }
  if (denom == 0.0) {
    throw std::invalid_argument("time share undefined: no CLoS segments");
  }
  std::vector<double> share(stats.histogram.size());
  for (std::size_t k = 0; k < share.size(); ++k) {
    share[k] = static_cast<double>(stats.histogram[k]) *
               static_cast<double>(k + 1) / denom;
  }
  return share;
}

/// F(t^k | LoS) = sum_{i>=k} h_i / sum_i h_i.
inline std::vector<double> clos_ccdf(const LosStatistics& stats) {
  std::uint64_t total = 0;
  for (std::uint64_t h : stats.histogram) total += h;
  if (total == 0) {
    throw std::invalid_argument("CCDF undefined: no CLoS segments");
  }
  std::vector<double> f(stats.histogram.size());
  std::uint64_t suffix = 0;
  for (std::size_t k = stats.histogram.size(); k-- > 0;) {
    suffix += stats.histogram[k];
    f[k] = static_cast<double>(suffix) / static_cast<double>(total);
  }
  return f;
}

inline LosStatistics aggregate(const std::vector<SegmentSet>& segment_sets,
                               double dt_s, double window_s) {
  if (segment_sets.empty()) {
    throw std::invalid_argument("aggregate requires at least one realization");
  }
  const std::size_t n_bins = window_step_count(window_s, dt_s);
  LosStatistics stats;
  stats.dt_s = dt_s;
  stats.window_s = window_s;
  stats.n_realizations = segment_sets.size();
  stats.histogram.assign(n_bins, 0);

  double p_sum = 0.0;
  double dur_sum = 0.0, dur_sum2 = 0.0;
  std::uint64_t n_segments = 0;
  for (const SegmentSet& seg : segment_sets) {
    if (seg.total_steps() != n_bins) {
      throw std::invalid_argument("segment set does not partition the window");
    }
    p_sum += static_cast<double>(seg.total_clos_steps()) /
             static_cast<double>(n_bins);
    for (std::size_t c : seg.clos_counts) {
      stats.histogram[c - 1] += 1;
      const double dur = static_cast<double>(c) * dt_s;
      dur_sum += dur;
      dur_sum2 += dur * dur;
      ++n_segments;
    }
  }
  stats.p_los = p_sum / static_cast<double>(segment_sets.size());
  stats.p_blos = 1.0 - stats.p_los;
  if (n_segments > 0) {
    stats.mu_clos_s = dur_sum / static_cast<double>(n_segments);
    if (n_segments > 1) {
      const double var =
          (dur_sum2 - dur_sum * dur_sum / static_cast<double>(n_segments)) /
          static_cast<double>(n_segments - 1);
      stats.sigma_clos_s = std::sqrt(var > 0.0 ? var : 0.0);
    }
    std::size_t mode_bin = 0;
    for (std::size_t k = 1; k < n_bins; ++k) {
      if (stats.histogram[k] > stats.histogram[mode_bin]) mode_bin = k;
    }
    stats.gamma_clos_s = static_cast<double>(mode_bin + 1) * dt_s;
    stats.time_share = clos_time_share(stats);
    stats.ccdf = clos_ccdf(stats);
  }
  return stats;
}

/// P_out(t_h) = P_BLoS + P_LoS (1 - F(t_h | LoS)); t_h snaps up to the next
/// bin edge, a conservative rounding for packet-fit decisions.
inline double outage_probability(const LosStatistics& stats, double t_h_s) {
  if (!(t_h_s > 0.0) || t_h_s > stats.window_s + 1e-12) {
    throw std::invalid_argument("t_h_s must lie in (0, window_s]");
  }
  if (stats.ccdf.empty()) {
    return 1.0;  // never any LoS
  }
  std::size_t k = static_cast<std::size_t>(std::ceil(t_h_s / stats.dt_s - 1e-9));
  k = std::min(std::max<std::size_t>(k, 1), stats.ccdf.size());
  return stats.p_blos + stats.p_los * (1.0 - stats.ccdf[k - 1]);
}

struct MonteCarloOptions {
  std::size_t n_components = sea::kDefaultComponents;
  double omega_min = sea::kDefaultOmegaMin;
  double omega_max = sea::kDefaultOmegaMax;
  unsigned n_threads = 0;  // 0 = hardware concurrency; affects speed only
};

namespace detail {

/// Static-index parallel map: deterministic result regardless of thread count.
template <typename Fn>
void parallel_indexed(std::size_t count, unsigned n_threads, Fn&& fn) {
  unsigned workers = n_threads == 0 ? std::thread::hardware_concurrency() : n_threads;
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, count == 0 ? 1 : count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace detail

inline LosStatistics run_monte_carlo(const SeaStateParams& sea_params,
                                     const LinkGeometry& geom, double window_s,
                                     double dt_s, std::size_t n_realizations,
                                     std::uint64_t master_seed,
                                     AmplitudeConvention convention,
                                     const MonteCarloOptions& opts = {}) {
  if (n_realizations == 0) {
    throw std::invalid_argument("n_realizations must be >= 1");
  }
  geom.validate();
  const SpectrumGrid grid = sea::build_spectrum_grid(
      sea_params, opts.n_components, opts.omega_min, opts.omega_max);
  std::vector<SegmentSet> segments(n_realizations);
  detail::parallel_indexed(n_realizations, opts.n_threads, [&](std::size_t r) {
    const WaveRealization real = sea::sample_realization(
        grid, rng::derive_stream_seed(master_seed, r), convention);
    segments[r] = segment_timeline(los_timeline(real, geom, window_s, dt_s));
  });
  return aggregate(segments, dt_s, window_s);
}

enum class SweepAxis { PeakPeriod, Distance, AntennaHeight };

struct SweepPoint {
  double value = 0.0;
  LosStatistics stats;
};

/// One Monte Carlo per axis value, all under the same master seed.
inline std::vector<SweepPoint> sweep(SweepAxis axis,
                                     const std::vector<double>& values,
                                     SeaStateParams sea_params,
                                     LinkGeometry geom, double window_s,
                                     double dt_s, std::size_t n_realizations,
                                     std::uint64_t master_seed,
                                     AmplitudeConvention convention,
                                     const MonteCarloOptions& opts = {}) {
  if (values.empty()) {
    throw std::invalid_argument("sweep requires at least one value");
  }
  std::vector<SweepPoint> out;
  out.reserve(values.size());
  for (double v : values) {
    switch (axis) {
      case SweepAxis::PeakPeriod: sea_params.tp_s = v; break;
      case SweepAxis::Distance: geom.distance_m = v; break;
      case SweepAxis::AntennaHeight: geom.antenna_height_m = v; break;
    }
    out.push_back({v, run_monte_carlo(sea_params, geom, window_s, dt_s,
                                      n_realizations, master_seed, convention,
                                      opts)});
  }
  return out;
}

}  // namespace wavelos::los

#endif  // WAVELOS_LOS_HPP
