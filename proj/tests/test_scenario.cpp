#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "wavelos/output.hpp"
#include "wavelos/scenario.hpp"

using namespace wavelos;
using namespace wavelos::scenario;

namespace {

const char* kMinimalConfig =
    "hs_m = 0.5\n"
    "tp_s = 2\n"
    "ha_m = 0.1\n"
    "htwr_m = 30\n"
    "d_m = 1000\n";

std::string contains_check(const std::exception& e, const std::string& needle) {
  if (std::string(e.what()).find(needle) != std::string::npos) return "";
  return std::string("'") + e.what() + "' lacks '" + needle + "'";
}

}  // namespace

TEST_CASE("minimal config fills defaults") {
  const Scenario s = parse_scenario_text(kMinimalConfig);
  CHECK(s.sea_state.hs_m == 0.5);
  CHECK(s.sea_state.tp_s == 2.0);
  CHECK(s.geom.antenna_height_m == 0.1);
  CHECK(s.geom.tower_height_m == 30.0);
  CHECK(s.geom.distance_m == 1000.0);
  CHECK(s.geom.search_step_m == 1.0);
  CHECK(s.window_s == 60.0);
  CHECK(s.dt_s == 0.1);
  CHECK(s.n_realizations == 1000);
  CHECK(s.master_seed == 1);
  CHECK(s.convention == sea::AmplitudeConvention::EnergyConserving);
}

TEST_CASE("all missing required keys are reported together") {
  try {
    parse_scenario_text("hs_m = 0.5\nd_m = 1000\n");
    FAIL("expected a missing-key error");
  } catch (const std::invalid_argument& e) {
    for (const char* key : {"tp_s", "ha_m", "htwr_m"}) {
      CHECK_MESSAGE(std::string(e.what()).find(key) != std::string::npos,
                    contains_check(e, key));
    }
    CHECK(std::string(e.what()).find("hs_m") == std::string::npos);
  }
}

TEST_CASE("config rejections") {
  SUBCASE("breaking sea state") {
    const std::string cfg =
        "hs_m = 4\ntp_s = 2\nha_m = 0\nhtwr_m = 30\nd_m = 1000\n";
    CHECK_THROWS_AS(parse_scenario_text(cfg), std::invalid_argument);
  }
  SUBCASE("dt too coarse for the discretized band") {
    const std::string cfg = std::string(kMinimalConfig) + "dt_s = 1\nwindow_s = 60\n";
    try {
      parse_scenario_text(cfg);
      FAIL("expected a dt rejection");
    } catch (const std::invalid_argument& e) {
      CHECK_MESSAGE(std::string(e.what()).find("dt_s") != std::string::npos,
                    contains_check(e, "dt_s"));
    }
  }
  SUBCASE("window not a multiple of dt") {
    const std::string cfg = std::string(kMinimalConfig) + "window_s = 60.05\n";
    CHECK_THROWS_AS(parse_scenario_text(cfg), std::invalid_argument);
  }
  SUBCASE("unknown key") {
    const std::string cfg = std::string(kMinimalConfig) + "hz_m = 3\n";
    try {
      parse_scenario_text(cfg);
      FAIL("expected an unknown-key error");
    } catch (const std::invalid_argument& e) {
      CHECK_MESSAGE(std::string(e.what()).find("hz_m") != std::string::npos,
                    contains_check(e, "hz_m"));
    }
  }
  SUBCASE("duplicate key") {
    const std::string cfg = std::string(kMinimalConfig) + "hs_m = 0.7\n";
    CHECK_THROWS_AS(parse_scenario_text(cfg), std::invalid_argument);
  }
  SUBCASE("non-numeric value") {
    const std::string cfg =
        "hs_m = tall\ntp_s = 2\nha_m = 0\nhtwr_m = 30\nd_m = 1000\n";
    CHECK_THROWS_AS(parse_scenario_text(cfg), std::invalid_argument);
  }
  SUBCASE("antenna above tower") {
    const std::string cfg =
        "hs_m = 0.5\ntp_s = 2\nha_m = 31\nhtwr_m = 30\nd_m = 1000\n";
    CHECK_THROWS_AS(parse_scenario_text(cfg), std::invalid_argument);
  }
}

TEST_CASE("comments, blank lines and colon separators are accepted") {
  const std::string cfg =
      "# scenario\n"
      "\n"
      "hs_m: 0.5  # significant wave height\n"
      "tp_s: 2\n"
      "ha_m: 0\n"
      "htwr_m: 30\n"
      "d_m: 1000\n";
  CHECK(parse_scenario_text(cfg).sea_state.hs_m == 0.5);
}

TEST_CASE("JSON form parses to the same scenario") {
  const std::string json = R"({
    "hs_m": 0.5, "tp_s": 2, "ha_m": 0.1, "htwr_m": 30, "d_m": 1000,
    "n_realizations": 50, "seed": 9, "convention": "paper_literal"
  })";
  const Scenario s = parse_scenario_text(json);
  CHECK(s.sea_state.hs_m == 0.5);
  CHECK(s.n_realizations == 50);
  CHECK(s.master_seed == 9);
  CHECK(s.convention == sea::AmplitudeConvention::PaperLiteral);
}

TEST_CASE("serialize/parse round trip is the identity") {
  Scenario s = parse_scenario_text(kMinimalConfig);
  s.master_seed = 424242;
  s.n_realizations = 123;
  s.dt_s = 0.05;
  s.geom.search_step_m = 0.25;
  s.convention = sea::AmplitudeConvention::PaperLiteral;
  s.outputs = "out/run1";
  const Scenario t = parse_scenario_text(serialize_scenario(s));
  CHECK(t.sea_state.hs_m == s.sea_state.hs_m);
  CHECK(t.sea_state.tp_s == s.sea_state.tp_s);
  CHECK(t.geom.distance_m == s.geom.distance_m);
  CHECK(t.geom.tower_height_m == s.geom.tower_height_m);
  CHECK(t.geom.antenna_height_m == s.geom.antenna_height_m);
  CHECK(t.geom.search_step_m == s.geom.search_step_m);
  CHECK(t.window_s == s.window_s);
  CHECK(t.dt_s == s.dt_s);
  CHECK(t.n_realizations == s.n_realizations);
  CHECK(t.master_seed == s.master_seed);
  CHECK(t.convention == s.convention);
  CHECK(t.outputs == s.outputs);
  // and serialization itself is a fixed point
  CHECK(serialize_scenario(t) == serialize_scenario(s));
}

TEST_CASE("scenario file IO") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "wavelos_scenario_test.cfg";
  {
    std::ofstream f(path);
    f << kMinimalConfig;
  }
  CHECK(parse_scenario_file(path.string()).geom.distance_m == 1000.0);
  fs::remove(path);
  CHECK_THROWS_AS(parse_scenario_file(path.string()), std::invalid_argument);
}

TEST_CASE("convention names") {
  CHECK(convention_name(sea::AmplitudeConvention::EnergyConserving) ==
        "energy_conserving");
  CHECK(convention_from_name("energy") == sea::AmplitudeConvention::EnergyConserving);
  CHECK(convention_from_name("paper") == sea::AmplitudeConvention::PaperLiteral);
  CHECK_THROWS_AS(convention_from_name("bogus"), std::invalid_argument);
}

TEST_CASE("double formatting round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 1e-17, 12345.6789, -0.0, 60.0}) {
    CHECK(std::stod(out::format_double(v)) == v);
  }
  CHECK(out::format_double(60.0) == "60");
}

TEST_CASE("atomic write leaves no temp file behind") {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / "wavelos_out_test" / "a.txt";
  out::atomic_write_file(path, "hello\n");
  std::ifstream f(path);
  std::string line;
  std::getline(f, line);
  CHECK(line == "hello");
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  out::atomic_write_file(path, "rewritten\n");
  std::ifstream g(path);
  std::getline(g, line);
  CHECK(line == "rewritten");
  fs::remove_all(path.parent_path());
}
