#ifndef WAVELOS_OUTPUT_HPP
#define WAVELOS_OUTPUT_HPP

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "wavelos/los.hpp"

// Result persistence: shortest round-trip numeric formatting, atomic file
// writes (temp + rename) and the stats/histogram/outage serializations.

namespace wavelos::out {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc{}) {
    throw std::runtime_error("failed to format double");
  }
  return std::string(buf, res.ptr);
}

inline void atomic_write_file(const std::filesystem::path& path,
                              std::string_view content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    }
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  fs::rename(tmp, path);
}

inline nlohmann::ordered_json stats_to_json(const los::LosStatistics& s) {
  nlohmann::ordered_json j;
  j["p_los"] = s.p_los;
  j["p_blos"] = s.p_blos;
  j["mu_clos_s"] = s.mu_clos_s;
  j["sigma_clos_s"] = s.sigma_clos_s;
  j["gamma_clos_s"] = s.gamma_clos_s;
  j["n_realizations"] = s.n_realizations;
  j["dt_s"] = s.dt_s;
  j["window_s"] = s.window_s;
  j["histogram"] = s.histogram;
  j["time_share"] = s.time_share;
  j["ccdf"] = s.ccdf;
  return j;
}

inline std::string histogram_csv(const los::LosStatistics& s) {
  std::string csv = "t_k_s,h_k,p_t_k,ccdf\n";
  for (std::size_t k = 0; k < s.histogram.size(); ++k) {
    csv += format_double(static_cast<double>(k + 1) * s.dt_s);
    csv += ',';
    csv += std::to_string(s.histogram[k]);
    csv += ',';
    csv += format_double(k < s.time_share.size() ? s.time_share[k] : 0.0);
    csv += ',';
    csv += format_double(k < s.ccdf.size() ? s.ccdf[k] : 0.0);
    csv += '\n';
  }
  return csv;
}

inline std::string outage_csv(const los::LosStatistics& s) {
  std::string csv = "t_h_s,p_out\n";
  const std::size_t n = s.histogram.size();
  for (std::size_t k = 1; k <= n; ++k) {
    const double t_h = static_cast<double>(k) * s.dt_s;
    csv += format_double(t_h);
    csv += ',';
    csv += format_double(los::outage_probability(s, t_h));
    csv += '\n';
  }
  return csv;
}

inline std::string timeline_csv(const los::LosTimeline& tl) {
  std::string csv = "t_s,los\n";
  for (std::size_t j = 0; j < tl.flags.size(); ++j) {
    csv += format_double(static_cast<double>(j) * tl.dt_s);
    csv += ',';
    csv += tl.flags[j] ? '1' : '0';
    csv += '\n';
  }
  return csv;
}

inline nlohmann::ordered_json manifest_json(
    const nlohmann::ordered_json& config, std::uint64_t master_seed,
    double wall_time_s, const std::vector<std::string>& files) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["config"] = config;
  j["master_seed"] = master_seed;
  j["wall_time_s"] = wall_time_s;
  j["files"] = files;
  return j;
}

}  // namespace wavelos::out

#endif  // WAVELOS_OUTPUT_HPP
