#include "kirchhoff/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kirchhoff {

namespace {

constexpr double kSlack = 1e-9;
constexpr double kTableSlack = 1e-4;  // checks against interpolated Phi_*

struct Accumulator {
  LemmaCheck check;

  explicit Accumulator(std::string name, double slack) {
    check.name = std::move(name);
    check.slack = slack;
    check.worst_margin = -std::numeric_limits<double>::infinity();
  }

  // requires lhs <= rhs at (t, s)
  void le(double lhs, double rhs, double t, double s = 0.0) {
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    const double margin = (lhs - rhs) / scale;
    if (margin > check.worst_margin) {
      check.worst_margin = margin;
      check.worst_point = t;
      check.second_point = s;
    }
  }

  LemmaCheck finish() {
    check.passed = check.worst_margin <= check.slack;
    return check;
  }
};

std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(std::size_t(n), 0.0);
  for (int i = 0; i < n; ++i)
    g[std::size_t(i)] = lo + (hi - lo) * i / double(n - 1);
  return g;
}

}  // namespace

bool LemmaSuiteResult::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

const LemmaCheck* LemmaSuiteResult::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

LemmaSuiteResult run_lemma_suite(const ProblemSpec& problem,
                                 const SamplingConfig& sampling) {
  const PhiSpec& phi = problem.phi;
  const double l = phi.index_l, m = phi.index_m;
  const int N = problem.dimension;
  const auto grid = log_grid(sampling.t_min, sampling.t_max, sampling.points);
  // coarser grids for the two-variable sweeps; complement() bisects per call
  const auto t_coarse = log_grid(sampling.t_min, sampling.t_max, 60);
  const auto rho_grid = log_grid(1e-2, 1e2, 33);
  const auto box_grid = linear_grid(0.0, 10.0, 41);

  LemmaSuiteResult suite;

  {
    Accumulator acc("young-inequality", kSlack);
    for (double t : box_grid)
      for (double s : box_grid)
        acc.le(s * t, phi_big(phi, t) + complement(phi, s), t, s);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("complement-of-psi", kSlack);
    for (double t : t_coarse)
      acc.le(complement(phi, psi(phi, t)), phi_big(phi, 2.0 * t), t);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("complement-of-phi-over-t", kSlack);
    for (double t : t_coarse)
      acc.le(complement(phi, phi_big(phi, t) / t), phi_big(phi, t), t);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator lo("phi-sandwich-lower", kSlack);
    Accumulator hi("phi-sandwich-upper", kSlack);
    for (double rho : rho_grid) {
      const double x0 = xi_tau(XiKind::xi0, l, m, N, rho);
      const double x1 = xi_tau(XiKind::xi1, l, m, N, rho);
      for (double t : t_coarse) {
        const double mid = phi_big(phi, rho * t), base = phi_big(phi, t);
        lo.le(x0 * base, mid, rho, t);
        hi.le(mid, x1 * base, rho, t);
      }
    }
    suite.checks.push_back(lo.finish());
    suite.checks.push_back(hi.finish());
  }
  {
    Accumulator lo("psi-sandwich-lower", kSlack);
    Accumulator hi("psi-sandwich-upper", kSlack);
    for (double rho : rho_grid) {
      const double t0 = xi_tau(XiKind::tau0, l, m, N, rho);
      const double t1 = xi_tau(XiKind::tau1, l, m, N, rho);
      for (double t : t_coarse) {
        const double mid = psi(phi, rho * t), base = psi(phi, t);
        lo.le(t0 * base, mid, rho, t);
        hi.le(mid, t1 * base, rho, t);
      }
    }
    suite.checks.push_back(lo.finish());
    suite.checks.push_back(hi.finish());
  }
  if (l < double(N)) {
    const SobolevConjugate conj(phi, N);
    Accumulator lo("conjugate-sandwich-lower", kTableSlack);
    Accumulator hi("conjugate-sandwich-upper", kTableSlack);
    for (double rho : rho_grid) {
      const double x2 = xi_tau(XiKind::xi2, l, m, N, rho);
      const double x3 = xi_tau(XiKind::xi3, l, m, N, rho);
      for (double t : t_coarse) {
        const double mid = conj.value(rho * t), base = conj.value(t);
        lo.le(x2 * base, mid, rho, t);
        hi.le(mid, x3 * base, rho, t);
      }
    }
    suite.checks.push_back(lo.finish());
    suite.checks.push_back(hi.finish());
  }
  {
    Accumulator lo("complement-sandwich-lower", kSlack);
    Accumulator hi("complement-sandwich-upper", kSlack);
    for (double rho : rho_grid) {
      const double x4 = xi_tau(XiKind::xi4, l, m, N, rho);
      const double x5 = xi_tau(XiKind::xi5, l, m, N, rho);
      for (double t : t_coarse) {
        const double mid = complement(phi, rho * t);
        const double base = complement(phi, t);
        lo.le(x4 * base, mid, rho, t);
        hi.le(mid, x5 * base, rho, t);
      }
    }
    suite.checks.push_back(lo.finish());
    suite.checks.push_back(hi.finish());
  }
  {
    Accumulator acc("legendre-involution", 1e-6);
    for (double t : t_coarse) {
      const double base = phi_big(phi, t), twice = biconjugate(phi, t);
      acc.le(std::abs(twice - base) / std::max(1.0, std::abs(base)), 0.0, t);
    }
    suite.checks.push_back(acc.finish());
  }

  const KirchhoffTerm& kir = problem.kirchhoff;
  const Nonlinearity& non = problem.nonlinearity;
  {
    Accumulator acc("M-derivative-bound", kSlack);
    for (double t : grid) acc.le(kir.M_prime(t) * t, kir.M(t), t);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("M-hat-half-bound", kSlack);
    for (double t : grid) acc.le(0.5 * kir.M(t) * t, kir.M_hat(t), t);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("M-hat-gap-monotone", kSlack);
    auto gap = [&](double t) { return kir.M_hat(t) - 0.5 * kir.M(t) * t; };
    for (std::size_t i = 1; i < grid.size(); ++i)
      acc.le(gap(grid[i - 1]), gap(grid[i]), grid[i]);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("M-hat-superadditive", kSlack);
    for (double t : box_grid)
      for (double s : box_grid)
        acc.le(kir.M_hat(t) + kir.M_hat(s), kir.M_hat(t + s), t, s);
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("f-derivative-bound", kSlack);
    for (double t : grid) {
      acc.le((2.0 * m - 1.0) * non.f(t), non.f_prime(t) * t, t);
      acc.le((2.0 * m - 1.0) * -non.f(-t), non.f_prime(-t) * t, -t);
    }
    suite.checks.push_back(acc.finish());
  }
  {
    Accumulator acc("f-gap-monotone", kSlack);
    auto gap = [&](double t) {
      return non.f(t) * t / (2.0 * m) - non.F(t);
    };
    for (std::size_t i = 1; i < grid.size(); ++i)
      acc.le(gap(grid[i - 1]), gap(grid[i]), grid[i]);
    suite.checks.push_back(acc.finish());
  }

  return suite;
}

}  // namespace kirchhoff
