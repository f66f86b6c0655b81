#pragma once

#include <utility>

#include "kirchhoff/common.hpp"
#include "kirchhoff/grid.hpp"
#include "kirchhoff/model.hpp"

namespace kirchhoff {

// Pointwise positive/negative parts; u_plus + u_minus == u exactly.
std::pair<ScalarField, ScalarField> decompose(const ScalarField& u);

CellGradient cell_gradient(const ScalarField& u, Exec exec);
CellGradient cell_gradient(const ScalarField& u);

// Q(u) = sum_cells vol * Phi(|grad u|).
double modular_gradient(const ProblemSpec& problem, const ScalarField& u,
                        Exec exec);
double modular_gradient(const ProblemSpec& problem, const ScalarField& u);

// J(u) = M_hat(Q(u)) - sum_nodes vol * F(u).
double energy(const ProblemSpec& problem, const ScalarField& u, Exec exec);
double energy(const ProblemSpec& problem, const ScalarField& u);

// Volume-weighted representer of J'(u): <residual(u), v> = J'(u) v for every
// discrete test field v, with <a, b> = sum_nodes vol * a_i * b_i.
ScalarField residual(const ProblemSpec& problem, const ScalarField& u,
                     Exec exec);
ScalarField residual(const ProblemSpec& problem, const ScalarField& u);

// Volume-weighted inner product and norm.
double inner(const ScalarField& a, const ScalarField& b);
double norm(const ScalarField& a);

enum class NormMode { gradient, value };

// Luxemburg norm: inf { tau > 0 : modular(|.| / tau) <= 1 }, by bisection.
double luxemburg_norm(const PhiSpec& phi, const ScalarField& u, NormMode mode);

// Connected components of {u > eps} plus components of {u < -eps};
// 4-neighbor adjacency in 2D, chain adjacency in 1D.
int nodal_domain_count(const ScalarField& u, double eps);

// axpy-style helpers used by the solvers.
ScalarField combine(const ScalarField& a, double ca, const ScalarField& b,
                    double cb);
ScalarField scale(const ScalarField& a, double c);

}  // namespace kirchhoff
