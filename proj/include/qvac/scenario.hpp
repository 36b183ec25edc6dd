#pragma once

#include <map>
#include <string>
#include <vector>

#include "qvac/quadrature.hpp"

namespace qvac::scenario {

inline constexpr const char* kVersion = "qvac 1.0.0";

struct SweepSpec {
  std::string variable;       // "u", "a_nm" or "omega_a" depending on scenario
  std::vector<double> grid;   // strictly monotone
};

struct Config {
  std::string scenario;
  double T_env_K = 300.0;
  double T_body_K = 600.0;
  std::map<std::string, double> geometry;   // per-scenario keys, validated
  std::map<std::string, double> materials;
  std::string cloud_path;                   // voxel scenario only
  quad::QuadratureSpec quad;
  SweepSpec sweep;
  std::string basename;                     // output file stem
};

// Strict parse: unknown keys anywhere are an error; malformed JSON reports
// line and byte position.  Absent keys take scenario defaults.
Config parse_config(const std::string& json_text);
Config parse_config_file(const std::string& path);

struct RunOutput {
  std::string csv;           // '#'-metadata header + comma-separated rows
  std::string summary_json;
  std::string plot_script;   // gnuplot text; empty when fewer than 2 rows
  std::string basename;
  bool converged = true;
  std::vector<std::string> notes;
};

RunOutput run(const Config& cfg);

std::vector<std::string> scenario_names();
std::string list_scenarios();
// A complete config with every default spelled out, round-trips via
// parse_config.
std::string default_config(const std::string& scenario);

}  // namespace qvac::scenario
