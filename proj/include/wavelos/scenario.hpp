#ifndef WAVELOS_SCENARIO_HPP
#define WAVELOS_SCENARIO_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelos/los.hpp"
#include "wavelos/output.hpp"

// Scenario configuration: a flat key-value document (or the same schema as
// JSON) describing one sea state + link geometry + simulation controls.

namespace wavelos::scenario {

struct Scenario {
  sea::SeaStateParams sea_state;
  los::LinkGeometry geom;
  double window_s = 60.0;
  double dt_s = 0.1;
  std::size_t n_realizations = 1000;
  std::uint64_t master_seed = 1;
  sea::AmplitudeConvention convention = sea::AmplitudeConvention::EnergyConserving;
  std::string outputs;  // output directory; empty = caller decides
};

inline std::string convention_name(sea::AmplitudeConvention c) {
  return c == sea::AmplitudeConvention::PaperLiteral ? "paper_literal"
                                                     : "energy_conserving";
}

inline sea::AmplitudeConvention convention_from_name(const std::string& name) {
  if (name == "energy_conserving" || name == "energy") {
    return sea::AmplitudeConvention::EnergyConserving;
  }
  if (name == "paper_literal" || name == "paper") {
    return sea::AmplitudeConvention::PaperLiteral;
  }
  throw std::invalid_argument(
      "unknown convention '" + name +
      "' (expected energy_conserving or paper_literal)");
}

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

/// Flat key -> string-value map from either a key-value document or JSON.
inline std::map<std::string, std::string> parse_flat_document(
    const std::string& text) {
  std::map<std::string, std::string> kv;
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object()) {
      throw std::invalid_argument("JSON scenario must be an object");
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_string()) {
        kv[key] = value.get<std::string>();
      } else {
        kv[key] = value.dump();
      }
    }
    return kv;
  }
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " is not 'key = value': " + line);
    }
    const std::string key = trim(line.substr(0, sep));
    const std::string value = trim(line.substr(sep + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  " has an empty key or value");
    }
    if (kv.count(key)) {
      throw std::invalid_argument("duplicate config key: " + key);
    }
    kv[key] = value;
  }
  return kv;
}

inline double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "' has a non-numeric value: " + value);
  }
}

inline std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "' needs a nonnegative integer, got: " + value);
  }
}

}  // namespace detail

/// Validates a fully assembled scenario; throws naming the violated rule.
inline void validate_scenario(const Scenario& s) {
  const sea::SeaStateValidation v = sea::validate_sea_state(s.sea_state);
  if (!v.accepted) {
    throw std::invalid_argument("scenario rejected: " + v.reason);
  }
  s.geom.validate();
  // default discretization tops out at 1.5 Hz; dt must resolve it
  const double f_max = sea::kDefaultOmegaMax / sea::kTwoPi;
  if (s.dt_s >= 1.0 / f_max) {
    throw std::invalid_argument(
        "dt_s = " + std::to_string(s.dt_s) +
        " s does not resolve the largest frequency component " +
        std::to_string(f_max) + " Hz (need dt_s < " +
        std::to_string(1.0 / f_max) + " s)");
  }
  los::window_step_count(s.window_s, s.dt_s);  // integrality check
  if (s.n_realizations == 0) {
    throw std::invalid_argument("n_realizations must be >= 1");
  }
}

inline Scenario parse_scenario_text(const std::string& text) {
  std::map<std::string, std::string> kv = detail::parse_flat_document(text);

  static const std::vector<std::string> required = {"hs_m", "tp_s", "ha_m",
                                                    "htwr_m", "d_m"};
  static const std::vector<std::string> optional = {
      "dx_m", "window_s", "dt_s", "n_realizations",
      "seed", "convention", "outputs", "depth_m"};

  std::string missing;
  for (const std::string& key : required) {
    if (!kv.count(key)) {
      if (!missing.empty()) missing += ", ";
      missing += key;
    }
  }
  if (!missing.empty()) {
    throw std::invalid_argument("missing required config keys: " + missing);
  }
  for (const auto& [key, value] : kv) {
    (void)value;
    const bool known =
        std::find(required.begin(), required.end(), key) != required.end() ||
        std::find(optional.begin(), optional.end(), key) != optional.end();
    if (!known) {
      throw std::invalid_argument("unknown config key: " + key);
    }
  }

  Scenario s;
  s.sea_state.hs_m = detail::to_double("hs_m", kv["hs_m"]);
  s.sea_state.tp_s = detail::to_double("tp_s", kv["tp_s"]);
  if (kv.count("depth_m")) {
    s.sea_state.water_depth_m = detail::to_double("depth_m", kv["depth_m"]);
  }
  s.geom.antenna_height_m = detail::to_double("ha_m", kv["ha_m"]);
  s.geom.tower_height_m = detail::to_double("htwr_m", kv["htwr_m"]);
  s.geom.distance_m = detail::to_double("d_m", kv["d_m"]);
  if (kv.count("dx_m")) s.geom.search_step_m = detail::to_double("dx_m", kv["dx_m"]);
  if (kv.count("window_s")) s.window_s = detail::to_double("window_s", kv["window_s"]);
  if (kv.count("dt_s")) s.dt_s = detail::to_double("dt_s", kv["dt_s"]);
  if (kv.count("n_realizations")) {
    s.n_realizations = static_cast<std::size_t>(
        detail::to_u64("n_realizations", kv["n_realizations"]));
  }
  if (kv.count("seed")) s.master_seed = detail::to_u64("seed", kv["seed"]);
  if (kv.count("convention")) s.convention = convention_from_name(kv["convention"]);
  if (kv.count("outputs")) s.outputs = kv["outputs"];

  validate_scenario(s);
  return s;
}

inline Scenario parse_scenario_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) {
    throw std::invalid_argument("cannot read scenario file: " + path);
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_scenario_text(buf.str());
}

/// Canonical key-value form; parse(serialize(s)) == s.
inline std::string serialize_scenario(const Scenario& s) {
  std::string text;
  const auto add = [&text](const std::string& key, const std::string& value) {
    text += key;
    text += " = ";
    text += value;
    text += '\n';
  };
  add("hs_m", out::format_double(s.sea_state.hs_m));
  add("tp_s", out::format_double(s.sea_state.tp_s));
  if (s.sea_state.water_depth_m) {
    add("depth_m", out::format_double(*s.sea_state.water_depth_m));
  }
  add("ha_m", out::format_double(s.geom.antenna_height_m));
  add("htwr_m", out::format_double(s.geom.tower_height_m));
  add("d_m", out::format_double(s.geom.distance_m));
  add("dx_m", out::format_double(s.geom.search_step_m));
  add("window_s", out::format_double(s.window_s));
  add("dt_s", out::format_double(s.dt_s));
  add("n_realizations", std::to_string(s.n_realizations));
  add("seed", std::to_string(s.master_seed));
  add("convention", convention_name(s.convention));
  if (!s.outputs.empty()) add("outputs", s.outputs);
  return text;
}

inline nlohmann::ordered_json scenario_to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  j["hs_m"] = s.sea_state.hs_m;
  j["tp_s"] = s.sea_state.tp_s;
  if (s.sea_state.water_depth_m) j["depth_m"] = *s.sea_state.water_depth_m;
  j["ha_m"] = s.geom.antenna_height_m;
  j["htwr_m"] = s.geom.tower_height_m;
  j["d_m"] = s.geom.distance_m;
  j["dx_m"] = s.geom.search_step_m;
  j["window_s"] = s.window_s;
  j["dt_s"] = s.dt_s;
  j["n_realizations"] = s.n_realizations;
  j["seed"] = s.master_seed;
  j["convention"] = convention_name(s.convention);
  if (!s.outputs.empty()) j["outputs"] = s.outputs;
  return j;
}

}  // namespace wavelos::scenario

#endif  // WAVELOS_SCENARIO_HPP
