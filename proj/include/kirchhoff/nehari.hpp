#pragma once

#include <array>
#include <vector>

#include "kirchhoff/field.hpp"

namespace kirchhoff {

struct PairScaling {
  double t = 1.0;
  double s = 1.0;
};

struct ProjectionResult {
  PairScaling scaling;
  std::array<double, 2> upsilon_residual = {0.0, 0.0};
  int iterations = 0;
  std::array<double, 2> bracket = {1.0, 1.0};  // Miranda box [r, R]
  bool converged = false;
};

// h^v(t, s) = J(t v+ + s v-).  Requires a sign-changing v.
double h_value(const ProblemSpec& problem, const ScalarField& v, double t,
               double s);

// Gradient of h: (J'(t v+ + s v-) v+, J'(t v+ + s v-) v-).
std::array<double, 2> upsilon(const ProblemSpec& problem, const ScalarField& v,
                              double t, double s);

// Places t v+ + s v- on the nodal Nehari set: locates a Miranda box from the
// four edge sign conditions, then root-polishes with damped Newton (finite
// difference Jacobian), falling back to alternating 1D bisection.
// tol is relative to the Upsilon scale on the bracket.
ProjectionResult project_to_M(const ProblemSpec& problem, const ScalarField& v,
                              double tol);

// One-parameter Nehari projection: t > 0 with J'(t u) u = 0.
double project_to_N(const ProblemSpec& problem, const ScalarField& u,
                    double tol);

struct SurfaceScan {
  std::array<double, 2> t_range;
  std::array<double, 2> s_range;
  int samples = 0;
  std::vector<double> h;  // row-major, s fastest
  double h_identity = 0.0;
  int argmax_i = 0;  // t index
  int argmax_j = 0;  // s index
  bool max_at_identity = false;

  double t_at(int i) const;
  double s_at(int j) const;
};

// Evaluates h^w on an n x n grid over the box and reports whether the grid
// argmax lies in the cell containing (1, 1).
SurfaceScan maximality_scan(const ProblemSpec& problem, const ScalarField& w,
                            std::array<double, 2> t_range,
                            std::array<double, 2> s_range, int samples);

struct HessianDiag {
  double d11 = 0.0;
  double d12 = 0.0;
  double d21 = 0.0;
  double d22 = 0.0;
  double det = 0.0;
};

// Central finite-difference Jacobian of Upsilon^w at (1, 1), step 1e-4.
HessianDiag hessian_check(const ProblemSpec& problem, const ScalarField& w);

}  // namespace kirchhoff
