#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kirchhoff/nehari.hpp"

namespace kirchhoff {

struct ArmijoParams {
  double initial_step = 1.0;
  double backtrack = 0.5;             // in (0, 1)
  double sufficient_decrease = 0.0;   // 0 accepts any strict decrease
  int max_backtracks = 45;
};

enum class Preconditioner { none, inverse_laplacian };
enum class InitialGuess { sine_modes, random_smooth, user };

struct SolveConfig {
  int max_outer_iterations = 3000;
  double residual_tolerance = 1e-8;
  double projection_tolerance = 1e-12;
  ArmijoParams step_rule;
  Preconditioner preconditioner = Preconditioner::inverse_laplacian;
  InitialGuess initial_guess = InitialGuess::sine_modes;
  std::optional<ScalarField> user_field;
  double diagnostic_q = 0.0;  // 0 picks a q in (m, l*) automatically
  std::uint64_t seed = 0;
};

struct SolveReport {
  bool converged = false;
  double energy_c0 = 0.0;
  double residual_norm = 0.0;
  int nodal_domains = 0;
  double scaling_drift = 0.0;  // |t-1| + |s-1| after a final re-projection
  int iterations = 0;
  std::vector<double> energy_trace;
  std::vector<double> mass_trace_plus;   // sum vol |w+|^q per iteration
  std::vector<double> mass_trace_minus;
  std::optional<double> ground_energy;
  double lower_bound_diag = 0.0;  // (theta-4m)/(4 theta) sigma0 xi0(|grad w|_Phi)
  double diagnostic_q = 0.0;
  std::string failure;  // empty unless the run aborted
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, ScalarField last)
      : std::runtime_error(what), last_iterate(std::move(last)) {}
  ScalarField last_iterate;
};

// Minimizes J over the discrete nodal Nehari set by project-then-descend.
// Throws SolveError on projection failure or sign loss mid-run.
std::pair<ScalarField, SolveReport> minimize_nodal(const ProblemSpec& problem,
                                                   const SolveConfig& config);

// Same scheme on the one-parameter Nehari set (ground-state candidate).
std::pair<ScalarField, SolveReport> minimize_ground(const ProblemSpec& problem,
                                                    const SolveConfig& config);

struct AuditCheck {
  std::string name;
  bool passed = true;
  bool skipped = false;
  double value = 0.0;
  std::string detail;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool all_passed() const;  // ignores skipped entries
  const AuditCheck* find(const std::string& name) const;
};

// Structural battery on a converged candidate: sign change, nodal domain
// count, Luxemburg norms of grad w+/-, q-mass trace, J'(w+-)w+- <= tol,
// maximality scan, Hessian signs, and the reported lower-bound diagnostic.
AuditReport audit_solution(const ProblemSpec& problem, const ScalarField& w,
                           const SolveReport& report);

}  // namespace kirchhoff
