#include "kirchhoff/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace kirchhoff {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& section, const std::string& key,
                 const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size())
    throw ConfigError("[" + section + "] " + key + ": not a number: '" +
                      value + "'");
  return v;
}

int to_int(const std::string& section, const std::string& key,
           const std::string& value) {
  const double v = to_number(section, key, value);
  const int i = int(v);
  if (double(i) != v)
    throw ConfigError("[" + section + "] " + key + ": not an integer: '" +
                      value + "'");
  return i;
}

void apply_solver_key(RunConfig& cfg, const std::string& key,
                      const std::string& value) {
  SolveConfig& s = cfg.solver;
  if (key == "max_iterations")
    s.max_outer_iterations = to_int("solver", key, value);
  else if (key == "residual_tolerance")
    s.residual_tolerance = to_number("solver", key, value);
  else if (key == "projection_tolerance")
    s.projection_tolerance = to_number("solver", key, value);
  else if (key == "diagnostic_q")
    s.diagnostic_q = to_number("solver", key, value);
  else if (key == "seed")
    s.seed = std::uint64_t(to_int("solver", key, value));
  else if (key == "initial_step")
    s.step_rule.initial_step = to_number("solver", key, value);
  else if (key == "max_backtracks")
    s.step_rule.max_backtracks = to_int("solver", key, value);
  else if (key == "preconditioner") {
    if (value == "none")
      s.preconditioner = Preconditioner::none;
    else if (value == "inverse-laplacian")
      s.preconditioner = Preconditioner::inverse_laplacian;
    else
      throw ConfigError("[solver] preconditioner: expected 'none' or "
                        "'inverse-laplacian', got '" + value + "'");
  } else if (key == "initial_guess") {
    if (value == "sine")
      s.initial_guess = InitialGuess::sine_modes;
    else if (value == "random")
      s.initial_guess = InitialGuess::random_smooth;
    else
      throw ConfigError("[solver] initial_guess: expected 'sine' or "
                        "'random', got '" + value + "'");
  } else if (key == "guess_file") {
    cfg.guess_file = value;
    s.initial_guess = InitialGuess::user;
  } else {
    throw ConfigError("[solver]: unknown key '" + key + "'");
  }
}

void apply_sampling_key(RunConfig& cfg, const std::string& key,
                        const std::string& value) {
  if (key == "t_min")
    cfg.sampling.t_min = to_number("sampling", key, value);
  else if (key == "t_max")
    cfg.sampling.t_max = to_number("sampling", key, value);
  else if (key == "points")
    cfg.sampling.points = to_int("sampling", key, value);
  else
    throw ConfigError("[sampling]: unknown key '" + key + "'");
}

void apply_surface_key(RunConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "t_min")
    cfg.surface_t_range[0] = to_number("surface", key, value);
  else if (key == "t_max")
    cfg.surface_t_range[1] = to_number("surface", key, value);
  else if (key == "s_min")
    cfg.surface_s_range[0] = to_number("surface", key, value);
  else if (key == "s_max")
    cfg.surface_s_range[1] = to_number("surface", key, value);
  else if (key == "samples")
    cfg.surface_samples = to_int("surface", key, value);
  else
    throw ConfigError("[surface]: unknown key '" + key + "'");
}

const std::set<std::string> kGridKeys = {"kind",     "extent", "extent_y",
                                         "nodes",    "nodes_y", "N"};

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  cfg.source_text = text;
  std::istringstream in(text);
  std::string line, section;
  std::set<std::string> seen;  // "section/key", for duplicate detection
  bool have_family = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "problem" && section != "grid" && section != "solver" &&
          section != "sampling" && section != "surface")
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": key outside any section");
    if (key.empty() || value.empty())
      throw ConfigError("line " + std::to_string(lineno) +
                        ": empty key or value");
    if (!seen.insert(section + "/" + key).second)
      throw ConfigError("[" + section + "]: duplicate key '" + key + "'");
    if (section == "problem") {
      if (key == "family") {
        cfg.family = value;
        have_family = true;
      } else {
        if (!cfg.problem_params.emplace(key, value).second)
          throw ConfigError("[problem]: duplicate key '" + key + "'");
      }
    } else if (section == "grid") {
      if (!kGridKeys.count(key))
        throw ConfigError("[grid]: unknown key '" + key + "'");
      if (!cfg.problem_params.emplace(key, value).second)
        throw ConfigError("[grid]: duplicate key '" + key + "'");
    } else if (section == "solver") {
      apply_solver_key(cfg, key, value);
    } else if (section == "sampling") {
      apply_sampling_key(cfg, key, value);
    } else {
      apply_surface_key(cfg, key, value);
    }
  }
  if (!have_family) throw ConfigError("[problem]: missing 'family'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

ProblemSpec make_problem(const RunConfig& config) {
  try {
    return builtin_problem(config.family, config.problem_params);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace kirchhoff
