#pragma once

#include <string>
#include <vector>

#include "kirchhoff/model.hpp"

namespace kirchhoff {

// One scalar inequality checked over a sampled grid.  For lhs <= rhs the
// margin is max over samples of (lhs - rhs) / max(1, |lhs|, |rhs|); the check
// passes when the margin stays below the stated slack.
struct LemmaCheck {
  std::string name;
  bool passed = true;
  double worst_margin = 0.0;
  double worst_point = 0.0;
  double second_point = 0.0;  // for two-variable sweeps
  double slack = 0.0;
};

struct LemmaSuiteResult {
  std::vector<LemmaCheck> checks;
  bool all_passed() const;
  const LemmaCheck* find(const std::string& name) const;
};

// Scalar inequality suites for one problem family: Young's inequality, the
// complement bounds, the Phi/Psi/Phi*/complement sandwiches, the Legendre
// involution, the M and f structure relations, and the monotonicity facts
// used by the Nehari machinery.  Phi*-based checks are skipped (with a note)
// when index_l >= dimension.
LemmaSuiteResult run_lemma_suite(const ProblemSpec& problem,
                                 const SamplingConfig& sampling);

}  // namespace kirchhoff
