#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kirchhoff/grid.hpp"
#include "kirchhoff/nfunction.hpp"

namespace kirchhoff {

// Nonlocal coefficient M with antiderivative M_hat (M_hat(0) = 0).
struct KirchhoffTerm {
  std::function<double(double)> M;
  std::function<double(double)> M_prime;
  std::function<double(double)> M_hat;
  double sigma0 = 0.0;  // M(0)
  std::string label;
};

KirchhoffTerm make_constant_kirchhoff(double m0);
KirchhoffTerm make_affine_kirchhoff(double m0, double b);  // M = m0 + b t
KirchhoffTerm make_log_kirchhoff(double m0);               // M = m0 + ln(1+t)

// Superlinear nonlinearity f with antiderivative F and growth exponent theta.
struct Nonlinearity {
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  std::function<double(double)> F;
  double theta = 0.0;
  std::string label;
};

Nonlinearity make_power_nonlinearity(double theta);  // f = |t|^{theta-2} t

// A complete problem instance.
struct ProblemSpec {
  PhiSpec phi;
  KirchhoffTerm kirchhoff;
  Nonlinearity nonlinearity;
  int dimension = 1;
  GridDomain domain;
};

enum class Strictness { strict, desk };

struct SamplingConfig {
  double t_min = 1e-4;
  double t_max = 1e4;
  int points = 400;
};

struct HypothesisCheck {
  std::string name;
  bool passed = true;
  bool warned = false;   // desk-mode downgrade of a window check
  double worst_t = 0.0;  // sample with the worst margin
  double margin = 0.0;   // signed slack; negative means violated
  std::string detail;
};

struct HypothesisReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed() const;
  bool has_warnings() const;
  const HypothesisCheck* find(const std::string& name) const;
};

// Machine-check of every structural hypothesis on sampled grids.  In desk
// mode the exponent-window checks become warnings, which admits 1D test
// problems outside the dimension range of the continuous theory.
HypothesisReport verify_hypotheses(const ProblemSpec& problem,
                                   const SamplingConfig& sampling,
                                   Strictness strictness);

// Built-in problem families: power, double-power, gamma, plog.  Parameters
// arrive as a key/value map; unknown names or missing keys raise
// std::invalid_argument listing the valid keys.
ProblemSpec builtin_problem(const std::string& name,
                            const std::map<std::string, std::string>& params);

}  // namespace kirchhoff
