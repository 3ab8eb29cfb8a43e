// wavelos: buoy-to-tower LoS blockage simulator CLI.

#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wavelos/antenna.hpp"
#include "wavelos/dielectric.hpp"
#include "wavelos/los.hpp"
#include "wavelos/output.hpp"
#include "wavelos/power.hpp"
#include "wavelos/regression.hpp"
#include "wavelos/scenario.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wavelos;

struct GlobalOpts {
  std::optional<std::uint64_t> seed;  // overrides scenario seed
  unsigned threads = 0;               // 0 = hardware concurrency
  std::string outdir;                 // resolved output directory
};

std::string default_outdir() {
  const char* env = std::getenv("WAVELOS_OUTDIR");
  return env && *env ? env : ".";
}

/// Collects files written during one run and finishes with a manifest.
class RunWriter {
 public:
  RunWriter(const fs::path& dir, nlohmann::ordered_json config,
            std::uint64_t seed)
      : dir_(dir), config_(std::move(config)), seed_(seed),
        start_(std::chrono::steady_clock::now()) {
    // fail on an unwritable output dir before any compute
    fs::create_directories(dir_);
    const fs::path probe = dir_ / ".wavelos_probe";
    std::ofstream f(probe);
    if (!f) {
      throw std::runtime_error("output directory is not writable: " +
                               dir_.string());
    }
    f.close();
    fs::remove(probe);
  }

  void write(const std::string& name, std::string_view content) {
    out::atomic_write_file(dir_ / name, content);
    files_.push_back(name);
  }

  void finish() {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const auto manifest = out::manifest_json(config_, seed_, wall, files_);
    out::atomic_write_file(dir_ / "manifest.json", manifest.dump(2) + "\n");
    std::cout << "wrote " << files_.size() + 1 << " files to " << dir_.string()
              << "\n";
  }

 private:
  fs::path dir_;
  nlohmann::ordered_json config_;
  std::uint64_t seed_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::string> files_;
};

scenario::Scenario load_scenario(const std::string& config_path,
                                 const GlobalOpts& g) {
  scenario::Scenario s = scenario::parse_scenario_file(config_path);
  if (g.seed) s.master_seed = *g.seed;
  if (s.outputs.empty()) s.outputs = g.outdir;
  return s;
}

// ---------------------------------------------------------------- dielectric

void add_dielectric(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "dielectric", "Complex permittivity, penetration depth and attenuation");
  auto medium = std::make_shared<std::string>("sea");
  auto temp_c = std::make_shared<double>(20.0);
  auto salinity = std::make_shared<double>(35.0);
  auto freqs = std::make_shared<std::vector<double>>();
  auto fmin = std::make_shared<double>(0.1);
  auto fmax = std::make_shared<double>(100.0);
  auto npts = std::make_shared<std::size_t>(0);
  auto outfile = std::make_shared<std::string>();
  cmd->add_option("--medium", *medium, "pure | sea | ice")
      ->check(CLI::IsMember({"pure", "sea", "ice"}));
  cmd->add_option("--temperature-c", *temp_c, "temperature in degC");
  cmd->add_option("--salinity-ppt", *salinity, "salinity in ppt (sea only)");
  cmd->add_option("--freq-ghz", *freqs, "explicit frequency list in GHz");
  cmd->add_option("--freq-min-ghz", *fmin, "log sweep start");
  cmd->add_option("--freq-max-ghz", *fmax, "log sweep end");
  cmd->add_option("--freq-points", *npts, "log sweep point count");
  cmd->add_option("-o,--output", *outfile, "write CSV here instead of stdout");

  cmd->callback([=, &g] {
    dielectric::MediumSpec spec;
    spec.kind = *medium == "pure" ? dielectric::MediumKind::PureWater
                : *medium == "ice" ? dielectric::MediumKind::Ice
                                   : dielectric::MediumKind::SeaWater;
    spec.temperature_celsius = *temp_c;
    spec.salinity_ppt = spec.kind == dielectric::MediumKind::SeaWater ? *salinity : 0.0;

    std::vector<double> grid = *freqs;
    if (grid.empty()) {
      const std::size_t n = *npts == 0 ? 50 : *npts;
      const double lmin = std::log10(*fmin), lmax = std::log10(*fmax);
      for (std::size_t i = 0; i < n; ++i) {
        const double u = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
        grid.push_back(std::pow(10.0, lmin + u * (lmax - lmin)));
      }
    }
    std::string csv = "f_ghz,eps_real,eps_imag,delta_m,att_db_per_m\n";
    for (double f : grid) {
      const dielectric::MediumSample s = dielectric::complex_permittivity(spec, f);
      const double delta = dielectric::penetration_depth(s);
      csv += out::format_double(f);
      csv += ',';
      csv += out::format_double(s.eps_real);
      csv += ',';
      csv += out::format_double(s.eps_imag);
      csv += ',';
      csv += out::format_double(delta);
      csv += ',';
      csv += out::format_double(std::isinf(delta)
                                    ? 0.0
                                    : dielectric::kDbPerPenetrationDepth / delta);
      csv += '\n';
    }
    if (outfile->empty()) {
      std::cout << csv;
    } else {
      nlohmann::ordered_json config;
      config["subcommand"] = "dielectric";
      config["medium"] = *medium;
      config["temperature_c"] = *temp_c;
      config["salinity_ppt"] = spec.salinity_ppt;
      config["frequencies_ghz"] = grid;
      RunWriter run(g.outdir, config, 0);
      run.write(*outfile, csv);
      run.finish();
    }
  });
}

// ---------------------------------------------------------------------- wave

void add_wave(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "wave", "Sample a sea-surface realization and trace its elevation");
  auto config_path = std::make_shared<std::string>();
  auto positions = std::make_shared<std::vector<double>>();
  auto realization = std::make_shared<std::size_t>(0);
  cmd->add_option("config", *config_path, "scenario config file")->required();
  cmd->add_option("--x-m", *positions, "transect positions (default: 0)");
  cmd->add_option("--realization", *realization, "realization index");

  cmd->callback([=, &g] {
    const scenario::Scenario s = load_scenario(*config_path, g);
    RunWriter run(s.outputs, scenario::scenario_to_json(s), s.master_seed);
    if (positions->empty()) positions->push_back(0.0);
    const sea::SpectrumGrid grid = sea::build_spectrum_grid(s.sea_state);
    const sea::WaveRealization real = sea::sample_realization(
        grid, rng::derive_stream_seed(s.master_seed, *realization), s.convention);

    std::string csv = "t_s,x_m,eta_m\n";
    const std::size_t n = los::window_step_count(s.window_s, s.dt_s);
    for (std::size_t j = 0; j < n; ++j) {
      const double t = static_cast<double>(j) * s.dt_s;
      for (double x : *positions) {
        csv += out::format_double(t);
        csv += ',';
        csv += out::format_double(x);
        csv += ',';
        csv += out::format_double(sea::surface_elevation(real, x, t));
        csv += '\n';
      }
    }
    nlohmann::ordered_json summary;
    summary["hs_m"] = s.sea_state.hs_m;
    summary["tp_s"] = s.sea_state.tp_s;
    summary["realization"] = *realization;
    summary["realized_swh_m"] =
        sea::realized_significant_height(real, s.window_s, s.dt_s);
    summary["crest_bound_m"] = real.crest_bound();
    summary["convention"] = scenario::convention_name(s.convention);

    run.write("wave.csv", csv);
    run.write("wave_summary.json", summary.dump(2) + "\n");
    run.finish();
  });
}

// ----------------------------------------------------------------------- los

void add_los(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "los", "Monte Carlo LoS availability statistics for a scenario");
  auto config_path = std::make_shared<std::string>();
  auto timelines = std::make_shared<std::size_t>(0);
  cmd->add_option("config", *config_path, "scenario config file")->required();
  cmd->add_option("--timelines", *timelines,
                  "also write per-realization timeline CSVs for the first N");

  cmd->callback([=, &g] {
    const scenario::Scenario s = load_scenario(*config_path, g);
    RunWriter run(s.outputs, scenario::scenario_to_json(s), s.master_seed);
    los::MonteCarloOptions opts;
    opts.n_threads = g.threads;
    const los::LosStatistics stats = los::run_monte_carlo(
        s.sea_state, s.geom, s.window_s, s.dt_s, s.n_realizations,
        s.master_seed, s.convention, opts);

    run.write("stats.json", out::stats_to_json(stats).dump(2) + "\n");
    run.write("histogram.csv", out::histogram_csv(stats));
    run.write("outage.csv", out::outage_csv(stats));
    if (*timelines > 0) {
      const sea::SpectrumGrid grid = sea::build_spectrum_grid(s.sea_state);
      const std::size_t n = std::min(*timelines, s.n_realizations);
      for (std::size_t r = 0; r < n; ++r) {
        const sea::WaveRealization real = sea::sample_realization(
            grid, rng::derive_stream_seed(s.master_seed, r), s.convention);
        const los::LosTimeline tl =
            los::los_timeline(real, s.geom, s.window_s, s.dt_s);
        run.write("timeline_" + std::to_string(r) + ".csv",
                  out::timeline_csv(tl));
      }
    }
    run.finish();
    std::cout << "p_los = " << out::format_double(stats.p_los) << "\n";
  });
}

// ------------------------------------------------------------------- antenna

void add_antenna(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "antenna", "Tilt trajectory, required length and gain excursion");
  auto config_path = std::make_shared<std::string>();
  auto x_pos = std::make_shared<double>(0.0);
  auto stencil = std::make_shared<double>(1.0);
  auto realization = std::make_shared<std::size_t>(0);
  auto pattern_file = std::make_shared<std::string>();
  auto symmetric = std::make_shared<bool>(true);
  cmd->add_option("config", *config_path, "scenario config file")->required();
  cmd->add_option("--x-m", *x_pos, "transect position of the buoy");
  cmd->add_option("--stencil-m", *stencil, "slope stencil half-width");
  cmd->add_option("--realization", *realization, "realization index");
  cmd->add_option("--pattern-file", *pattern_file,
                  "tabulated elevation pattern CSV (angle_deg,dbi); default is "
                  "the analytic half-wave dipole");
  cmd->add_flag("--symmetric,!--asymmetric", *symmetric,
                "mirror the tabulated pattern about broadside");

  cmd->callback([=, &g] {
    const scenario::Scenario s = load_scenario(*config_path, g);
    RunWriter run(s.outputs, scenario::scenario_to_json(s), s.master_seed);
    const sea::SpectrumGrid grid = sea::build_spectrum_grid(s.sea_state);
    const sea::WaveRealization real = sea::sample_realization(
        grid, rng::derive_stream_seed(s.master_seed, *realization), s.convention);
    const std::vector<antenna::TiltSample> tilts =
        antenna::tilt_series(real, *x_pos, s.window_s, s.dt_s, *stencil);

    antenna::ElevationPattern pattern = antenna::ElevationPattern::analytic_dipole();
    if (!pattern_file->empty()) {
      std::ifstream f(*pattern_file);
      if (!f) {
        throw std::runtime_error("cannot read pattern file: " + *pattern_file);
      }
      std::vector<std::pair<double, double>> rows;
      std::string line;
      while (std::getline(f, line)) {
        if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) ||
                              line[0] == '-' || line[0] == '+')) {
          continue;  // header / comment
        }
        std::istringstream ls(line);
        double angle, dbi;
        char comma;
        if (ls >> angle >> comma >> dbi) rows.emplace_back(angle, dbi);
      }
      pattern = antenna::ElevationPattern::tabulated(std::move(rows), *symmetric);
    }

    std::string tilt_csv = "t_s,theta_deg,normalized_length\n";
    double max_abs_tilt = 0.0;
    for (const antenna::TiltSample& ts : tilts) {
      max_abs_tilt = std::max(max_abs_tilt, std::abs(ts.theta_a_deg));
      tilt_csv += out::format_double(ts.t_s);
      tilt_csv += ',';
      tilt_csv += out::format_double(ts.theta_a_deg);
      tilt_csv += ',';
      tilt_csv += out::format_double(antenna::required_length(1.0, ts.theta_a_deg));
      tilt_csv += '\n';
    }
    std::string gain_csv = "theta_deg,dbi\n";
    for (double th = 0.0; th <= max_abs_tilt + 1e-9; th += 0.1) {
      gain_csv += out::format_double(th);
      gain_csv += ',';
      gain_csv += out::format_double(pattern.evaluate(th));
      gain_csv += '\n';
    }
    const auto [glo, ghi] = antenna::gain_excursion(pattern, tilts);

    nlohmann::ordered_json summary;
    summary["max_abs_tilt_deg"] = max_abs_tilt;
    summary["required_length_at_max_tilt"] =
        antenna::required_length(1.0, max_abs_tilt);
    summary["gain_min_dbi"] = glo;
    summary["gain_max_dbi"] = ghi;

    run.write("tilt.csv", tilt_csv);
    run.write("gain.csv", gain_csv);
    run.write("antenna_summary.json", summary.dump(2) + "\n");
    run.finish();
  });
}

// --------------------------------------------------------------------- power

void add_power(CLI::App& app) {
  auto* cmd = app.add_subcommand(
      "power", "PA DC power vs EIRP for the UE transmit chain");
  auto target_eirp = std::make_shared<double>(std::numeric_limits<double>::quiet_NaN());
  auto dc_mw = std::make_shared<double>(std::numeric_limits<double>::quiet_NaN());
  auto a = std::make_shared<power::PaAssumptions>();
  a->pa_input_dbm = -std::numeric_limits<double>::infinity();
  cmd->add_option("--eirp-dbm", *target_eirp, "solve for DC power");
  cmd->add_option("--dc-mw", *dc_mw, "solve for EIRP");
  cmd->add_option("--pae", a->pae_fraction, "power-added efficiency (0,1]");
  cmd->add_option("--input-dbm", a->pa_input_dbm,
                  "PA RF drive (default: negligible)");
  cmd->add_option("--switch-loss-db", a->switch_loss_db, "switch insertion loss");
  cmd->add_option("--antenna-gain-dbi", a->antenna_gain_dbi, "antenna gain");
  cmd->add_option("--backoff-db", a->backoff_db, "PA back-off");

  cmd->callback([=] {
    const bool have_eirp = !std::isnan(*target_eirp);
    const bool have_dc = !std::isnan(*dc_mw);
    if (have_eirp == have_dc) {
      throw CLI::ValidationError("power",
                                 "give exactly one of --eirp-dbm / --dc-mw");
    }
    nlohmann::ordered_json j;
    if (have_eirp) {
      j["eirp_dbm"] = *target_eirp;
      j["pa_dc_mw"] = power::pa_dc_power_mw(*target_eirp, *a);
    } else {
      j["pa_dc_mw"] = *dc_mw;
      j["eirp_dbm"] = power::eirp_dbm(*dc_mw, *a);
    }
    j["pae"] = a->pae_fraction;
    j["switch_loss_db"] = a->switch_loss_db;
    j["antenna_gain_dbi"] = a->antenna_gain_dbi;
    j["backoff_db"] = a->backoff_db;
    std::cout << j.dump() << "\n";
  });
}

// --------------------------------------------------------------------- sweep

void add_sweep(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "sweep", "Availability curve along one scenario axis");
  auto config_path = std::make_shared<std::string>();
  auto axis = std::make_shared<std::string>();
  auto values = std::make_shared<std::vector<double>>();
  cmd->add_option("config", *config_path, "scenario config file")->required();
  cmd->add_option("--axis", *axis, "tp | d | ha")
      ->required()
      ->check(CLI::IsMember({"tp", "d", "ha"}));
  cmd->add_option("--values", *values, "axis values")
      ->required()
      ->delimiter(',');

  cmd->callback([=, &g] {
    const scenario::Scenario s = load_scenario(*config_path, g);
    const los::SweepAxis ax = *axis == "tp"  ? los::SweepAxis::PeakPeriod
                              : *axis == "d" ? los::SweepAxis::Distance
                                             : los::SweepAxis::AntennaHeight;
    los::MonteCarloOptions opts;
    opts.n_threads = g.threads;
    const auto points =
        los::sweep(ax, *values, s.sea_state, s.geom, s.window_s, s.dt_s,
                   s.n_realizations, s.master_seed, s.convention, opts);

    std::string csv = *axis + ",p_los,p_blos,mu_clos_s,sigma_clos_s,gamma_clos_s\n";
    for (const los::SweepPoint& p : points) {
      csv += out::format_double(p.value);
      csv += ',';
      csv += out::format_double(p.stats.p_los);
      csv += ',';
      csv += out::format_double(p.stats.p_blos);
      csv += ',';
      csv += out::format_double(p.stats.mu_clos_s);
      csv += ',';
      csv += out::format_double(p.stats.sigma_clos_s);
      csv += ',';
      csv += out::format_double(p.stats.gamma_clos_s);
      csv += '\n';
    }
    nlohmann::ordered_json config = scenario::scenario_to_json(s);
    config["sweep_axis"] = *axis;
    config["sweep_values"] = *values;
    RunWriter run(s.outputs, config, s.master_seed);
    run.write("sweep.csv", csv);
    run.finish();
  });
}

// ------------------------------------------------------------------- regress

void add_regress(CLI::App& app, GlobalOpts& g) {
  auto* cmd = app.add_subcommand(
      "regress", "Re-run the published characterization table with band checks");
  auto n_real = std::make_shared<std::size_t>(1000);
  auto n_sens = std::make_shared<std::size_t>(300);
  cmd->add_option("--realizations", *n_real, "realizations per table row");
  cmd->add_option("--sensitivity-realizations", *n_sens,
                  "realizations per sensitivity/monotonicity point");

  cmd->callback([=, &g] {
    const std::uint64_t seed = g.seed.value_or(1);
    const regression::Report report =
        regression::run_regression(*n_real, seed, g.threads, *n_sens);

    for (const regression::RowResult& r : report.rows) {
      std::cout << "(" << r.row.hs_m << ", " << r.row.tp_s << ", " << r.row.ha_m
                << "): p_los=" << out::format_double(r.stats.p_los)
                << " ref=" << out::format_double(r.row.ref_p_los) << " ["
                << (!r.has_bands ? "report" : r.passed ? "pass" : "fail") << "]"
                << (r.detail.empty() ? "" : " " + r.detail) << "\n";
    }
    for (const regression::MonotonicityResult& m : report.monotonicity) {
      std::cout << m.name << ": " << (m.passed ? "pass" : "fail") << "\n";
    }
    nlohmann::ordered_json config;
    config["subcommand"] = "regress";
    config["realizations"] = *n_real;
    config["sensitivity_realizations"] = *n_sens;
    RunWriter run(g.outdir, config, seed);
    run.write("regress.json", regression::report_to_json(report).dump(2) + "\n");
    run.finish();
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wavelos: ocean-wave LoS blockage simulator"};
  app.require_subcommand(1);

  GlobalOpts g;
  g.outdir = default_outdir();
  // subcommand callbacks run during parse, so capture the seed eagerly
  app.add_option_function<std::uint64_t>(
      "--seed", [&g](std::uint64_t v) { g.seed = v; },
      "master seed (overrides scenario config)");
  app.add_option("--threads", g.threads,
                 "worker threads; affects speed only, never results");
  app.add_option("--outdir", g.outdir, "output directory (env WAVELOS_OUTDIR)");

  add_dielectric(app, g);
  add_wave(app, g);
  add_los(app, g);
  add_antenna(app, g);
  add_power(app);
  add_sweep(app, g);
  add_regress(app, g);

  CLI11_PARSE(app, argc, argv);
  return 0;
}
