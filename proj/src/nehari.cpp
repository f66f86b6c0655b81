#include "kirchhoff/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kirchhoff {

namespace {

constexpr double kBracketFloor = 1e-8;
constexpr double kBracketCeil = 1e8;

// Evaluator over the +/- split of a fixed field, so repeated (t, s) probes
// reuse the decomposition.
struct Surface {
  const ProblemSpec& problem;
  ScalarField v_plus;
  ScalarField v_minus;

  Surface(const ProblemSpec& p, const ScalarField& v) : problem(p) {
    auto [up, um] = decompose(v);
    v_plus = std::move(up);
    v_minus = std::move(um);
    const double np = norm(v_plus), nm = norm(v_minus);
    if (np == 0.0 || nm == 0.0)
      throw std::invalid_argument("nehari: field does not change sign");
  }

  ScalarField at(double t, double s) const {
    return combine(v_plus, t, v_minus, s);
  }
  double h(double t, double s) const { return energy(problem, at(t, s)); }
  std::array<double, 2> gradient(double t, double s) const {
    const ScalarField r = residual(problem, at(t, s));
    return {inner(r, v_plus), inner(r, v_minus)};
  }
};

double maxabs(const std::array<double, 2>& u) {
  return std::max(std::abs(u[0]), std::abs(u[1]));
}

// Edge sign conditions of the Miranda box [r, R]^2, sampled along each edge.
bool small_edges_ok(const Surface& surf, double r, double R) {
  for (int k = 0; k < 5; ++k) {
    const double y = r + (R - r) * k / 4.0;
    if (surf.gradient(r, y)[0] <= 0.0) return false;
    if (surf.gradient(y, r)[1] <= 0.0) return false;
  }
  return true;
}

bool large_edges_ok(const Surface& surf, double r, double R) {
  for (int k = 0; k < 5; ++k) {
    const double y = r + (R - r) * k / 4.0;
    if (surf.gradient(R, y)[0] >= 0.0) return false;
    if (surf.gradient(y, R)[1] >= 0.0) return false;
  }
  return true;
}

}  // namespace

double h_value(const ProblemSpec& problem, const ScalarField& v, double t,
               double s) {
  if (t < 0.0 || s < 0.0) throw std::domain_error("h_value: negative scaling");
  const Surface surf(problem, v);
  return surf.h(t, s);
}

std::array<double, 2> upsilon(const ProblemSpec& problem, const ScalarField& v,
                              double t, double s) {
  const Surface surf(problem, v);
  return surf.gradient(t, s);
}

ProjectionResult project_to_M(const ProblemSpec& problem, const ScalarField& v,
                              double tol) {
  if (tol <= 0.0) throw std::domain_error("project_to_M: tol <= 0");
  const Surface surf(problem, v);
  ProjectionResult result;

  // Locate the Miranda box: shrink r until the small-side signs hold, grow R
  // until the large-side signs hold, mirroring the r/R construction of the
  // existence proof.
  double r = 1.0, R = 1.0;
  for (;;) {
    if (!small_edges_ok(surf, r, R)) {
      r *= 0.5;
      if (r < kBracketFloor)
        throw std::runtime_error(
            "project_to_M: no Miranda box, small-edge signs never hold below "
            "r = 1e-8");
      continue;
    }
    if (!large_edges_ok(surf, r, R)) {
      R *= 2.0;
      if (R > kBracketCeil)
        throw std::runtime_error(
            "project_to_M: no Miranda box, large-edge signs never hold up to "
            "R = 1e8");
      continue;
    }
    break;
  }
  result.bracket = {r, R};

  // Residual scale for the relative stopping test.
  const double scale =
      std::max({1.0, maxabs(surf.gradient(r, r)), maxabs(surf.gradient(R, R))});

  // Seed on the diagonal: Upsilon_1 + Upsilon_2 changes sign between (r, r)
  // and (R, R), and the diagonal root sits close to the full root, clear of
  // the trivial root's Newton basin at the origin.
  double t;
  {
    double lo = r, hi = R;
    for (int k = 0; k < 60; ++k) {
      const double mid = 0.5 * (lo + hi);
      const auto g = surf.gradient(mid, mid);
      if (g[0] + g[1] > 0.0)
        lo = mid;
      else
        hi = mid;
    }
    t = 0.5 * (lo + hi);
  }
  double s = t;
  std::array<double, 2> u = surf.gradient(t, s);
  constexpr int kMaxIter = 120;
  int it = 0;
  for (; it < kMaxIter; ++it) {
    if (maxabs(u) <= tol * scale) break;
    // damped Newton with finite-difference Jacobian
    const double eps = 1e-6 * std::max(t, s);
    const auto upt = surf.gradient(t + eps, s), umt = surf.gradient(t - eps, s);
    const auto ups = surf.gradient(t, s + eps), ums = surf.gradient(t, s - eps);
    const double j11 = (upt[0] - umt[0]) / (2.0 * eps);
    const double j12 = (ups[0] - ums[0]) / (2.0 * eps);
    const double j21 = (upt[1] - umt[1]) / (2.0 * eps);
    const double j22 = (ups[1] - ums[1]) / (2.0 * eps);
    const double det = j11 * j22 - j12 * j21;
    double dt, ds;
    if (std::abs(det) > 1e-300) {
      dt = -(j22 * u[0] - j12 * u[1]) / det;
      ds = -(-j21 * u[0] + j11 * u[1]) / det;
    } else {
      dt = -u[0];
      ds = -u[1];
    }
    bool accepted = false;
    double lambda = 1.0;
    for (int half = 0; half < 30; ++half) {
      // keep iterates inside the box; the root is bracketed there and the
      // trivial root at the origin attracts unclamped Newton steps
      const double tn = std::clamp(t + lambda * dt, r, R);
      const double sn = std::clamp(s + lambda * ds, r, R);
      const auto un = surf.gradient(tn, sn);
      if (maxabs(un) < maxabs(u)) {
        t = tn;
        s = sn;
        u = un;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      // alternating 1D bisection inside the box
      double lo = r, hi = R;
      for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (surf.gradient(mid, s)[0] > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      t = 0.5 * (lo + hi);
      lo = r;
      hi = R;
      for (int k = 0; k < 80; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (surf.gradient(t, mid)[1] > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      s = 0.5 * (lo + hi);
      u = surf.gradient(t, s);
    }
  }

  result.scaling = {t, s};
  result.upsilon_residual = u;
  result.iterations = it;
  result.converged = maxabs(u) <= tol * scale;
  return result;
}

double project_to_N(const ProblemSpec& problem, const ScalarField& u,
                    double tol) {
  if (tol <= 0.0) throw std::domain_error("project_to_N: tol <= 0");
  if (norm(u) == 0.0)
    throw std::invalid_argument("project_to_N: zero field");
  auto g = [&](double t) {
    return inner(residual(problem, scale(u, t)), u);
  };
  double lo = 1.0, hi = 1.0;
  while (g(lo) <= 0.0) {
    lo *= 0.5;
    if (lo < kBracketFloor)
      throw std::runtime_error("project_to_N: no small-side bracket");
  }
  while (g(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > kBracketCeil)
      throw std::runtime_error("project_to_N: no large-side bracket");
  }
  const double scale_g = std::max({1.0, std::abs(g(lo)), std::abs(g(hi))});
  double t = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    t = 0.5 * (lo + hi);
    const double v = g(t);
    if (std::abs(v) <= tol * scale_g) break;
    if (v > 0.0)
      lo = t;
    else
      hi = t;
    if (hi - lo <= 1e-16 * hi) break;
  }
  return t;
}

double SurfaceScan::t_at(int i) const {
  return t_range[0] + (t_range[1] - t_range[0]) * i / double(samples - 1);
}
double SurfaceScan::s_at(int j) const {
  return s_range[0] + (s_range[1] - s_range[0]) * j / double(samples - 1);
}

SurfaceScan maximality_scan(const ProblemSpec& problem, const ScalarField& w,
                            std::array<double, 2> t_range,
                            std::array<double, 2> s_range, int samples) {
  if (samples < 2) throw std::domain_error("maximality_scan: samples < 2");
  const Surface surf(problem, w);
  SurfaceScan scan;
  scan.t_range = t_range;
  scan.s_range = s_range;
  scan.samples = samples;
  scan.h.resize(std::size_t(samples) * std::size_t(samples));
  scan.h_identity = surf.h(1.0, 1.0);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    for (int j = 0; j < samples; ++j) {
      const double val = surf.h(scan.t_at(i), scan.s_at(j));
      scan.h[std::size_t(i) * std::size_t(samples) + std::size_t(j)] = val;
      if (val > best) {
        best = val;
        scan.argmax_i = i;
        scan.argmax_j = j;
      }
    }
  }
  // the argmax cell must contain (1, 1)
  const double dt = (t_range[1] - t_range[0]) / (samples - 1);
  const double ds = (s_range[1] - s_range[0]) / (samples - 1);
  scan.max_at_identity =
      std::abs(scan.t_at(scan.argmax_i) - 1.0) <= dt + 1e-12 &&
      std::abs(scan.s_at(scan.argmax_j) - 1.0) <= ds + 1e-12 &&
      best <= scan.h_identity + 1e-9 * std::max(1.0, std::abs(best));
  return scan;
}

HessianDiag hessian_check(const ProblemSpec& problem, const ScalarField& w) {
  const Surface surf(problem, w);
  const double eps = 1e-4;
  const auto upt = surf.gradient(1.0 + eps, 1.0);
  const auto umt = surf.gradient(1.0 - eps, 1.0);
  const auto ups = surf.gradient(1.0, 1.0 + eps);
  const auto ums = surf.gradient(1.0, 1.0 - eps);
  HessianDiag d;
  d.d11 = (upt[0] - umt[0]) / (2.0 * eps);
  d.d12 = (ups[0] - ums[0]) / (2.0 * eps);
  d.d21 = (upt[1] - umt[1]) / (2.0 * eps);
  d.d22 = (ups[1] - ums[1]) / (2.0 * eps);
  d.det = d.d11 * d.d22 - d.d12 * d.d21;
  return d;
}

}  // namespace kirchhoff
