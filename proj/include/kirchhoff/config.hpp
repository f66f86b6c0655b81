#pragma once

#include <array>
#include <map>
#include <string>

#include "kirchhoff/model.hpp"
#include "kirchhoff/solver.hpp"

namespace kirchhoff {

// Parsed run configuration.  Sections: [problem] (family plus family
// parameters), [grid] (kind/extent/nodes, merged into the family parameters),
// [solver], [sampling], [surface].  Unknown sections or keys raise
// ConfigError; the CLI maps that to a usage failure.
struct RunConfig {
  std::string family = "power";
  std::map<std::string, std::string> problem_params;  // includes grid keys
  SolveConfig solver;
  std::string guess_file;  // set when solver.initial_guess == user
  SamplingConfig sampling;
  std::array<double, 2> surface_t_range = {0.2, 2.0};
  std::array<double, 2> surface_s_range = {0.2, 2.0};
  int surface_samples = 41;
  std::string source_text;  // raw file contents, hashed into reports
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

// Instantiates the configured problem via the built-in families.
ProblemSpec make_problem(const RunConfig& config);

// FNV-1a over the raw config text, for provenance lines in reports.
std::string config_hash(const std::string& text);

}  // namespace kirchhoff
