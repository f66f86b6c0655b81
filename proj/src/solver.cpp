#include "kirchhoff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace kirchhoff {

namespace {

constexpr double kSignLossModular = 1e-12;

// Modular of the node values: sum vol * Phi(|u|).
double modular_value(const PhiSpec& phi, const ScalarField& u) {
  double acc = 0.0;
  for (double v : u.values)
    if (v != 0.0) acc += phi_big(phi, std::abs(v));
  return acc * u.domain.node_volume();
}

// Solves A d = r with the frozen-coefficient modular operator
// A v = -div(M(Q(u)) phi(|grad u|) grad v): Thomas in 1D, conjugate
// gradients with edge-averaged coefficients in 2D.  For Phi = t^2 this is a
// scaled Dirichlet Laplacian; for the other families the varying coefficient
// keeps the preconditioned direction aligned with the modular geometry.
ScalarField apply_inverse_modular(const ProblemSpec& problem,
                                  const ScalarField& u, const ScalarField& r) {
  const GridDomain& dom = r.domain;
  const CellGradient grad = cell_gradient(u);
  const double mq = problem.kirchhoff.M(modular_gradient(problem, u));
  std::vector<double> coef(grad.magnitude.size());
  for (std::size_t c = 0; c < coef.size(); ++c)
    coef[c] = mq * problem.phi.phi(std::max(grad.magnitude[c], 1e-12));
  ScalarField d(dom);
  if (dom.kind == GridDomain::Kind::interval) {
    const int n = dom.resolution[0];
    const double h2 = dom.spacing(0) * dom.spacing(0);
    // node i couples to cells i and i+1
    std::vector<double> c(std::size_t(n), 0.0), rhs(r.values);
    auto diag = [&](int i) {
      return (coef[std::size_t(i)] + coef[std::size_t(i) + 1]) / h2;
    };
    auto off = [&](int i) {  // coupling between nodes i-1 and i (cell i)
      return -coef[std::size_t(i)] / h2;
    };
    double beta = diag(0);
    d.values[0] = rhs[0] / beta;
    for (int i = 1; i < n; ++i) {
      c[std::size_t(i)] = off(i) / beta;
      beta = diag(i) - off(i) * c[std::size_t(i)];
      d.values[std::size_t(i)] =
          (rhs[std::size_t(i)] - off(i) * d.values[std::size_t(i) - 1]) / beta;
    }
    for (int i = n - 2; i >= 0; --i)
      d.values[std::size_t(i)] -=
          c[std::size_t(i) + 1] * d.values[std::size_t(i) + 1];
    return d;
  }
  const int nx = dom.resolution[0], ny = dom.resolution[1];
  const double ihx = 1.0 / dom.spacing(0), ihy = 1.0 / dom.spacing(1);
  // exact frozen-coefficient operator: forward-difference gradient, per-cell
  // weight, and the same gather the residual uses -- SPD by construction
  std::vector<double> fx(coef.size()), fy(coef.size());
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    auto node = [&](int i, int j) -> double {
      if (i < 0 || j < 0 || i >= nx || j >= ny) return 0.0;
      return x[std::size_t(j) * std::size_t(nx) + std::size_t(i)];
    };
    auto cell = [&](int a, int b) {
      return std::size_t(b) * std::size_t(nx + 1) + std::size_t(a);
    };
    for (int b = 0; b <= ny; ++b) {
      for (int a = 0; a <= nx; ++a) {
        const double base = node(a - 1, b - 1);
        const std::size_t c = cell(a, b);
        fx[c] = coef[c] * (node(a, b - 1) - base) * ihx;
        fy[c] = coef[c] * (node(a - 1, b) - base) * ihy;
      }
    }
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        y[std::size_t(j) * std::size_t(nx) + std::size_t(i)] =
            ihx * (fx[cell(i, j + 1)] - fx[cell(i + 1, j + 1)]) +
            ihy * (fy[cell(i + 1, j)] - fy[cell(i + 1, j + 1)]);
      }
    }
  };
  const std::size_t n = r.size();
  std::vector<double> x(n, 0.0), res(r.values), p(res), ap(n);
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
  };
  double rr = dot(res, res);
  const double rr0 = rr;
  for (int it = 0; it < 2000 && rr > 1e-24 * rr0; ++it) {
    apply(p, ap);
    const double alpha = rr / dot(p, ap);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      res[i] -= alpha * ap[i];
    }
    const double rr_new = dot(res, res);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = res[i] + beta * p[i];
  }
  d.values = std::move(x);
  return d;
}

ScalarField sine_mode_guess(const GridDomain& dom, bool sign_changing) {
  ScalarField u(dom);
  const double pi = std::numbers::pi;
  for (int k = 0; k < dom.node_count(); ++k) {
    const auto pos = dom.node_position(k);
    double v = std::sin((sign_changing ? 2.0 : 1.0) * pi * pos[0] /
                        dom.extent[0]);
    if (dom.kind == GridDomain::Kind::rectangle)
      v *= std::sin(pi * pos[1] / dom.extent[1]);
    u.values[std::size_t(k)] = v;
  }
  return u;
}

ScalarField random_smooth_guess(const GridDomain& dom, std::uint64_t seed,
                                bool sign_changing) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.2, 1.0);
  const double pi = std::numbers::pi;
  ScalarField u(dom);
  const int modes = 3;
  std::vector<double> cx(modes), cy(modes);
  for (int a = 0; a < modes; ++a) {
    cx[std::size_t(a)] = coef(rng);
    cy[std::size_t(a)] = coef(rng);
  }
  for (int k = 0; k < dom.node_count(); ++k) {
    const auto pos = dom.node_position(k);
    double v = 0.0;
    for (int a = 0; a < modes; ++a) {
      const int mode = sign_changing ? a + 2 : a + 1;
      double term = cx[std::size_t(a)] *
                    std::sin(mode * pi * pos[0] / dom.extent[0]);
      if (dom.kind == GridDomain::Kind::rectangle)
        term *= std::sin((a + 1) * pi * pos[1] / dom.extent[1]);
      v += term;
    }
    u.values[std::size_t(k)] = v;
  }
  return u;
}

ScalarField initial_guess(const ProblemSpec& problem, const SolveConfig& config,
                          bool sign_changing) {
  ScalarField u;
  switch (config.initial_guess) {
    case InitialGuess::sine_modes:
      u = sine_mode_guess(problem.domain, sign_changing);
      break;
    case InitialGuess::random_smooth:
      u = random_smooth_guess(problem.domain, config.seed, sign_changing);
      break;
    case InitialGuess::user:
      if (!config.user_field)
        throw std::invalid_argument("solver: user initial guess not supplied");
      u = *config.user_field;
      break;
  }
  // scale to modular 1 for a reproducible starting size
  const double q = modular_gradient(problem, u);
  if (q > 0.0) {
    double lo = 1e-8, hi = 1e8;
    for (int i = 0; i < 120; ++i) {
      const double mid = std::sqrt(lo * hi);
      if (modular_gradient(problem, scale(u, mid)) < 1.0)
        lo = mid;
      else
        hi = mid;
    }
    u = scale(u, std::sqrt(lo * hi));
  }
  return u;
}

double auto_diagnostic_q(const ProblemSpec& problem) {
  const double m = problem.phi.index_m;
  const double lstar =
      critical_exponent(problem.phi.index_l, problem.dimension);
  if (!std::isfinite(lstar)) return m + 1.0;
  return std::min(m + 1.0, 0.5 * (m + lstar));
}

double q_mass(const ScalarField& u, double q) {
  double acc = 0.0;
  for (double v : u.values) acc += std::pow(std::abs(v), q);
  return acc * u.domain.node_volume();
}

double lower_bound_diagnostic(const ProblemSpec& problem,
                              const ScalarField& w) {
  const double theta = problem.nonlinearity.theta;
  const double m = problem.phi.index_m;
  const double gnorm = luxemburg_norm(problem.phi, w, NormMode::gradient);
  const double xi0 =
      xi_tau(XiKind::xi0, problem.phi.index_l, m, problem.dimension, gnorm);
  return (theta - 4.0 * m) / (4.0 * theta) * problem.kirchhoff.sigma0 * xi0;
}

ScalarField precondition(const ProblemSpec& problem, const ScalarField& u,
                         const ScalarField& r, Preconditioner kind) {
  return kind == Preconditioner::inverse_laplacian
             ? apply_inverse_modular(problem, u, r)
             : r;
}

}  // namespace

std::pair<ScalarField, SolveReport> minimize_nodal(const ProblemSpec& problem,
                                                   const SolveConfig& config) {
  SolveReport report;
  report.diagnostic_q =
      config.diagnostic_q > 0.0 ? config.diagnostic_q
                                : auto_diagnostic_q(problem);

  ScalarField v = initial_guess(problem, config, /*sign_changing=*/true);

  auto project = [&](const ScalarField& field) -> ScalarField {
    const ProjectionResult pr =
        project_to_M(problem, field, config.projection_tolerance);
    if (!pr.converged)
      throw SolveError("minimize_nodal: projection did not converge", field);
    auto [fp, fm] = decompose(field);
    return combine(fp, pr.scaling.t, fm, pr.scaling.s);
  };

  ScalarField w = project(v);
  double Jw = energy(problem, w);

  auto record = [&](const ScalarField& field, double J) {
    report.energy_trace.push_back(J);
    auto [fp, fm] = decompose(field);
    report.mass_trace_plus.push_back(q_mass(fp, report.diagnostic_q));
    report.mass_trace_minus.push_back(q_mass(fm, report.diagnostic_q));
  };

  int it = 0;
  for (; it < config.max_outer_iterations; ++it) {
    {
      auto [wp, wm] = decompose(w);
      if (modular_value(problem.phi, wp) < kSignLossModular ||
          modular_value(problem.phi, wm) < kSignLossModular)
        throw SolveError("minimize_nodal: iterate left the sign-changing cone",
                         w);
    }
    const ScalarField r = residual(problem, w);
    report.residual_norm = norm(r) / std::max(1.0, std::abs(Jw));
    record(w, Jw);
    if (report.residual_norm <= config.residual_tolerance) {
      report.converged = true;
      break;
    }

    ScalarField d = precondition(problem, w, r, config.preconditioner);
    double g0 = inner(r, d);
    if (g0 <= 0.0) {
      d = r;  // preconditioner produced a non-descent direction
      g0 = inner(r, r);
    }

    auto try_step = [&](double lambda) -> std::optional<double> {
      ScalarField trial = combine(w, 1.0, d, -lambda);
      try {
        ScalarField projected = project(trial);
        const double Jt = energy(problem, projected);
        if (Jt < Jw - config.step_rule.sufficient_decrease * lambda * g0) {
          w = std::move(projected);
          Jw = Jt;
          return Jt;
        }
      } catch (const std::exception&) {
        // trial lost its sign change or its projection bracket
      }
      return std::nullopt;
    };
    double lambda = config.step_rule.initial_step;
    bool accepted = false;
    for (int back = 0; back < config.step_rule.max_backtracks; ++back) {
      if (try_step(lambda)) {
        accepted = true;
        // expand while the energy keeps dropping; a fixed unit step zig-zags
        if (back == 0)
          for (int grow = 0; grow < 40; ++grow) {
            lambda *= 2.0;
            if (!try_step(lambda)) break;
          }
        break;
      }
      lambda *= config.step_rule.backtrack;
    }
    if (!accepted) break;  // stalled; residual decides convergence below
  }
  report.iterations = it;
  if (!report.converged) {
    const ScalarField r = residual(problem, w);
    report.residual_norm = norm(r) / std::max(1.0, std::abs(Jw));
    report.converged = report.residual_norm <= config.residual_tolerance;
    if (!report.converged)
      report.failure = "residual tolerance not reached in " +
                       std::to_string(it) + " iterations";
  }

  report.energy_c0 = Jw;
  double wmax = 0.0;
  for (double val : w.values) wmax = std::max(wmax, std::abs(val));
  report.nodal_domains = nodal_domain_count(w, 1e-6 * wmax);
  const ProjectionResult final_pr =
      project_to_M(problem, w, config.projection_tolerance);
  report.scaling_drift = std::abs(final_pr.scaling.t - 1.0) +
                         std::abs(final_pr.scaling.s - 1.0);
  report.lower_bound_diag = lower_bound_diagnostic(problem, w);
  return {std::move(w), std::move(report)};
}

std::pair<ScalarField, SolveReport> minimize_ground(const ProblemSpec& problem,
                                                    const SolveConfig& config) {
  SolveReport report;
  report.diagnostic_q =
      config.diagnostic_q > 0.0 ? config.diagnostic_q
                                : auto_diagnostic_q(problem);

  ScalarField v = initial_guess(problem, config, /*sign_changing=*/false);

  auto project = [&](const ScalarField& field) -> ScalarField {
    const double t = project_to_N(problem, field, config.projection_tolerance);
    return scale(field, t);
  };

  ScalarField u = project(v);
  double Ju = energy(problem, u);

  ScalarField d_prev;
  int it = 0;
  for (; it < config.max_outer_iterations; ++it) {
    if (modular_value(problem.phi, u) < kSignLossModular)
      throw SolveError("minimize_ground: iterate collapsed to zero", u);
    const ScalarField r = residual(problem, u);
    report.residual_norm = norm(r) / std::max(1.0, std::abs(Ju));
    report.energy_trace.push_back(Ju);
    if (report.residual_norm <= config.residual_tolerance) {
      report.converged = true;
      break;
    }

    ScalarField d = precondition(problem, u, r, config.preconditioner);
    // project out the radial component (the Nehari rescale neutralizes it
    // anyway, and leaving it in makes the descent zig-zag) and add a little
    // heavy-ball momentum
    const double radial = inner(d, u) / inner(u, u);
    d = combine(d, 1.0, u, -radial);
    if (!d_prev.values.empty()) d = combine(d, 1.0, d_prev, 0.3);
    d_prev = d;
    double g0 = inner(r, d);
    if (g0 <= 0.0) {
      d = r;
      g0 = inner(r, r);
    }

    auto try_step = [&](double lambda) -> std::optional<double> {
      ScalarField trial = combine(u, 1.0, d, -lambda);
      try {
        ScalarField projected = project(trial);
        const double Jt = energy(problem, projected);
        if (Jt < Ju - config.step_rule.sufficient_decrease * lambda * g0) {
          u = std::move(projected);
          Ju = Jt;
          return Jt;
        }
      } catch (const std::exception&) {
        // projection bracket failed on this trial
      }
      return std::nullopt;
    };
    double lambda = config.step_rule.initial_step;
    bool accepted = false;
    for (int back = 0; back < config.step_rule.max_backtracks; ++back) {
      if (try_step(lambda)) {
        accepted = true;
        if (back == 0)
          for (int grow = 0; grow < 40; ++grow) {
            lambda *= 2.0;
            if (!try_step(lambda)) break;
          }
        break;
      }
      lambda *= config.step_rule.backtrack;
    }
    if (!accepted) break;
  }
  report.iterations = it;
  if (!report.converged) {
    const ScalarField r = residual(problem, u);
    report.residual_norm = norm(r) / std::max(1.0, std::abs(Ju));
    report.converged = report.residual_norm <= config.residual_tolerance;
    if (!report.converged)
      report.failure = "residual tolerance not reached in " +
                       std::to_string(it) + " iterations";
  }

  report.energy_c0 = Ju;
  double umax = 0.0;
  for (double val : u.values) umax = std::max(umax, std::abs(val));
  report.nodal_domains = nodal_domain_count(u, 1e-6 * umax);
  report.scaling_drift =
      std::abs(project_to_N(problem, u, config.projection_tolerance) - 1.0);
  report.lower_bound_diag = lower_bound_diagnostic(problem, u);
  return {std::move(u), std::move(report)};
}

bool AuditReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AuditCheck& c) {
    return c.skipped || c.passed;
  });
}

const AuditCheck* AuditReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

AuditReport audit_solution(const ProblemSpec& problem, const ScalarField& w,
                           const SolveReport& report) {
  AuditReport audit;
  const double tol = 1e-6 * std::max(1.0, std::abs(report.energy_c0));

  auto [wp, wm] = decompose(w);
  const double mod_p = modular_value(problem.phi, wp);
  const double mod_m = modular_value(problem.phi, wm);
  const bool sign_change =
      mod_p > kSignLossModular && mod_m > kSignLossModular;
  audit.checks.push_back({"sign-change", sign_change, false,
                          std::min(mod_p, mod_m),
                          "modulars " + std::to_string(mod_p) + ", " +
                              std::to_string(mod_m)});

  double scale_max = 0.0;
  for (double v : w.values) scale_max = std::max(scale_max, std::abs(v));
  const int domains = nodal_domain_count(w, 1e-6 * scale_max);
  audit.checks.push_back(
      {"nodal-domains", domains == 2, false, double(domains), ""});

  auto skipped = [&](const std::string& name) {
    audit.checks.push_back(
        {name, true, true, 0.0, "skipped: field does not change sign"});
  };

  if (sign_change) {
    // Luxemburg norms of grad w+/- bounded away from zero
    const double np = luxemburg_norm(problem.phi, wp, NormMode::gradient);
    const double nm = luxemburg_norm(problem.phi, wm, NormMode::gradient);
    audit.checks.push_back({"gradient-norms-positive",
                            np > 1e-8 && nm > 1e-8, false, std::min(np, nm),
                            "|grad w+|_Phi=" + std::to_string(np) +
                                " |grad w-|_Phi=" + std::to_string(nm)});

    // q-mass along the trace stays positive
    double min_mass = std::numeric_limits<double>::infinity();
    for (double v : report.mass_trace_plus) min_mass = std::min(min_mass, v);
    for (double v : report.mass_trace_minus) min_mass = std::min(min_mass, v);
    if (report.mass_trace_plus.empty()) {
      const double q = report.diagnostic_q > 0.0 ? report.diagnostic_q : 1.0;
      min_mass = std::min(q_mass(wp, q), q_mass(wm, q));
    }
    audit.checks.push_back(
        {"q-mass-positive", min_mass > 0.0, false, min_mass, ""});

    // membership inequality J'(w+-) w+- <= 0 (up to tol)
    const double jp = inner(residual(problem, wp), wp);
    const double jm = inner(residual(problem, wm), wm);
    audit.checks.push_back({"J'(w+)w+ <= 0", jp <= tol, false, jp, ""});
    audit.checks.push_back({"J'(w-)w- <= 0", jm <= tol, false, jm, ""});

    // Upsilon(1,1) = 0 within tolerance
    const auto u11 = upsilon(problem, w, 1.0, 1.0);
    const double u_max = std::max(std::abs(u11[0]), std::abs(u11[1]));
    audit.checks.push_back({"Upsilon(1,1)=0", u_max <= tol, false, u_max, ""});

    const SurfaceScan scan =
        maximality_scan(problem, w, {0.2, 2.0}, {0.2, 2.0}, 41);
    audit.checks.push_back({"h-max-at-(1,1)", scan.max_at_identity, false,
                            scan.h_identity,
                            "argmax (" + std::to_string(scan.t_at(scan.argmax_i)) +
                                ", " + std::to_string(scan.s_at(scan.argmax_j)) +
                                ")"});

    const HessianDiag hd = hessian_check(problem, w);
    audit.checks.push_back({"hessian-d11<0", hd.d11 < 0.0, false, hd.d11, ""});
    audit.checks.push_back({"hessian-d22<0", hd.d22 < 0.0, false, hd.d22, ""});
    audit.checks.push_back({"hessian-det>0", hd.det > 0.0, false, hd.det, ""});
  } else {
    skipped("gradient-norms-positive");
    skipped("q-mass-positive");
    skipped("J'(w+)w+ <= 0");
    skipped("J'(w-)w- <= 0");
    skipped("Upsilon(1,1)=0");
    skipped("h-max-at-(1,1)");
    skipped("hessian-d11<0");
    skipped("hessian-d22<0");
    skipped("hessian-det>0");
  }

  // reported diagnostics, never gating
  audit.checks.push_back({"lower-bound-diagnostic", true, false,
                          report.lower_bound_diag,
                          "(theta-4m)/(4 theta) sigma0 xi0(|grad w|_Phi)"});
  {
    const double num = modular_value(problem.phi, w);
    const double den = modular_gradient(problem, w);
    const double ratio = den > 0.0 ? num / den : 0.0;
    audit.checks.push_back({"poincare-ratio-finite", std::isfinite(ratio),
                            false, ratio,
                            "modular(u) / modular(grad u)"});
  }
  if (report.ground_energy) {
    audit.checks.push_back({"nodal-above-ground",
                            report.energy_c0 > *report.ground_energy, false,
                            report.energy_c0 - *report.ground_energy, ""});
  }
  return audit;
}

}  // namespace kirchhoff
