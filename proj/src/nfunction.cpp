#include "kirchhoff/nfunction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kirchhoff {

namespace detail {

namespace {

double simpson_step(const std::function<double(double)>& f, double a,
                    double fa, double b, double fb, double fm, double whole,
                    double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, fa, b, fb, fm, whole, tol, 50);
}

}  // namespace detail

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / double(n - 1));
  return g;
}

double phi_big(const PhiSpec& spec, double t) {
  if (!std::isfinite(t)) throw std::domain_error("phi_big: non-finite t");
  const double a = std::abs(t);
  if (a == 0.0) return 0.0;
  if (spec.closed_phi_big) return spec.closed_phi_big(a);
  auto integrand = [&spec](double s) { return s > 0.0 ? spec.phi(s) * s : 0.0; };
  // tolerance relative to the integrand scale
  const double scale = std::max(integrand(a), 1.0) * a;
  return detail::adaptive_simpson(integrand, 0.0, a, 1e-12 * scale);
}

double psi(const PhiSpec& spec, double t) {
  if (t < 0.0 || !std::isfinite(t)) throw std::domain_error("psi: t < 0");
  if (t == 0.0) return 0.0;
  return spec.phi(t) * t;
}

double phi_big_inverse(const PhiSpec& spec, double y) {
  if (y < 0.0 || !std::isfinite(y))
    throw std::domain_error("phi_big_inverse: y < 0");
  if (y == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (phi_big(spec, hi) < y) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2100)
      throw std::runtime_error("phi_big_inverse: bracket growth failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (phi_big(spec, mid) < y)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  return 0.5 * (lo + hi);
}

double complement(const PhiSpec& spec, double s) {
  if (s < 0.0 || !std::isfinite(s)) throw std::domain_error("complement: s < 0");
  if (s == 0.0) return 0.0;
  // The maximizer solves Psi(t*) = s; Psi is strictly increasing by (phi_1).
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (psi(spec, hi) < s) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2100)
      throw std::runtime_error("complement: Psi bounded above, bracket failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (psi(spec, mid) < s)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-16 * hi) break;
  }
  const double tstar = 0.5 * (lo + hi);
  return s * tstar - phi_big(spec, tstar);
}

double biconjugate(const PhiSpec& spec, double t) {
  if (t < 0.0 || !std::isfinite(t))
    throw std::domain_error("biconjugate: t < 0");
  if (t == 0.0) return 0.0;
  auto g = [&](double s) { return s * t - complement(spec, s); };
  // g is concave with g(0) = 0; bracket the maximizer then golden-section.
  double hi = 1.0;
  int guard = 0;
  while (g(2.0 * hi) > g(hi)) {
    hi *= 2.0;
    if (++guard > 2100) throw std::runtime_error("biconjugate: no bracket");
  }
  double a = 0.0, b = 4.0 * hi;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < 160 && (b - a) > 1e-14 * b; ++i) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + gr * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - gr * (b - a);
      g1 = g(x1);
    }
  }
  return std::max(g1, g2);
}

double critical_exponent(double index, int dimension) {
  if (index >= dimension) return std::numeric_limits<double>::infinity();
  return index * dimension / (dimension - index);
}

namespace {

// Fritsch-Carlson monotone cubic slopes for increasing data.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  d[0] = delta[0];
  d[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d[i] = 0.0;
    } else {
      const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
      const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
      d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  return d;
}

double pchip_eval(const std::vector<double>& x, const std::vector<double>& y,
                  const std::vector<double>& d, double xq) {
  const auto it = std::upper_bound(x.begin(), x.end(), xq);
  std::size_t i = it == x.begin() ? 0 : std::size_t(it - x.begin()) - 1;
  i = std::min(i, x.size() - 2);
  const double h = x[i + 1] - x[i];
  const double u = (xq - x[i]) / h;
  const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
  const double h10 = u * (1.0 - u) * (1.0 - u);
  const double h01 = u * u * (3.0 - 2.0 * u);
  const double h11 = u * u * (u - 1.0);
  return h00 * y[i] + h10 * h * d[i] + h01 * y[i + 1] + h11 * h * d[i + 1];
}

}  // namespace

SobolevConjugate::SobolevConjugate(const PhiSpec& spec, int dimension)
    : dimension_(dimension) {
  if (dimension < 2)
    throw std::domain_error("SobolevConjugate: dimension must be >= 2");
  if (spec.index_l >= dimension)
    throw std::runtime_error(
        "SobolevConjugate: index_l >= N, the conjugate integral diverges");
  if (spec.index_l <= 1.0)
    throw std::runtime_error(
        "SobolevConjugate: index_l <= 1, integrand not integrable at 0");

  constexpr int kNodes = 4096;
  const double t_lo = 1e-80, t_hi = 1e80;
  // Integrate g(u) = Phi^{-1}(e^u) e^{-u/N} over u = log s.
  auto g = [&](double u) {
    return phi_big_inverse(spec, std::exp(u)) * std::exp(-u / dimension);
  };
  const double u0 = std::log(t_lo);
  // Head [0, t_lo]: local power-law fit Phi^{-1}(s) ~ C s^{1/alpha}.
  const double g0 = g(u0);
  const double slope = (std::log(g(u0 + 1e-3)) - std::log(g(u0 - 1e-3))) / 2e-3;
  double acc = slope > 1e-12 ? g0 / slope : 0.0;

  log_t_.resize(kNodes);
  log_inv_.resize(kNodes);
  const double du_total = std::log(t_hi) - u0;
  double uprev = u0, gprev = g0;
  for (int i = 0; i < kNodes; ++i) {
    const double u = u0 + du_total * i / double(kNodes - 1);
    if (i > 0) {
      // Simpson over [uprev, u] with 4 substeps.
      const int sub = 4;
      const double h = (u - uprev) / sub;
      double fa = gprev;
      for (int k = 0; k < sub; ++k) {
        const double a = uprev + k * h;
        const double fm = g(a + 0.5 * h);
        const double fb = g(a + h);
        acc += h / 6.0 * (fa + 4.0 * fm + fb);
        fa = fb;
      }
      gprev = fa;
      uprev = u;
    }
    log_t_[i] = u;
    log_inv_[i] = std::log(acc);
  }
  slope_ = pchip_slopes(log_t_, log_inv_);
}

double SobolevConjugate::inverse(double y) const {
  if (y < 0.0) throw std::domain_error("SobolevConjugate::inverse: y < 0");
  if (y == 0.0) return 0.0;
  return std::exp(pchip_eval(log_t_, log_inv_, slope_, std::log(y)));
}

double SobolevConjugate::value(double t) const {
  if (t < 0.0) throw std::domain_error("SobolevConjugate::value: t < 0");
  if (t == 0.0) return 0.0;
  const double lx = std::log(t);
  // Invert the monotone table: find y with Phi_*^{-1}(y) = t.
  double lo = log_t_.front(), hi = log_t_.back();
  if (lx <= log_inv_.front()) {
    // extrapolate with the boundary slope
    return std::exp(lo + (lx - log_inv_.front()) / slope_.front());
  }
  if (lx >= log_inv_.back())
    return std::exp(hi + (lx - log_inv_.back()) / slope_.back());
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pchip_eval(log_t_, log_inv_, slope_, mid) < lx)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-14) break;
  }
  return std::exp(0.5 * (lo + hi));
}

double SobolevConjugate::derivative(double t) const {
  const double h = 1e-5 * std::max(t, 1e-8);
  return (value(t + h) - value(std::max(t - h, 0.0))) /
         (h + std::min(t, h));
}

std::pair<double, double> estimate_indices(const PhiSpec& spec,
                                           std::span<const double> grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double t : grid) {
    const double ratio = spec.phi(t) * t * t / phi_big(spec, t);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  return {lo, hi};
}

double xi_tau(XiKind kind, double l, double m, int dimension, double t) {
  if (t < 0.0) throw std::domain_error("xi_tau: t < 0");
  auto mm = [t](double a, double b, bool want_min) {
    const double pa = std::pow(t, a), pb = std::pow(t, b);
    return want_min ? std::min(pa, pb) : std::max(pa, pb);
  };
  switch (kind) {
    case XiKind::xi0:
      return mm(l, m, true);
    case XiKind::xi1:
      return mm(l, m, false);
    case XiKind::tau0:
      return mm(l - 1.0, m - 1.0, true);
    case XiKind::tau1:
      return mm(l - 1.0, m - 1.0, false);
    case XiKind::xi4:
      return mm(l / (l - 1.0), m / (m - 1.0), true);
    case XiKind::xi5:
      return mm(l / (l - 1.0), m / (m - 1.0), false);
    case XiKind::xi2:
    case XiKind::xi3: {
      if (l >= dimension)
        throw std::domain_error("xi_tau: critical kind requires index_l < N");
      const double ls = critical_exponent(l, dimension);
      const double ms = critical_exponent(m, dimension);
      return mm(ls, ms, kind == XiKind::xi2);
    }
  }
  throw std::logic_error("xi_tau: unknown kind");
}

double delta2_constant(const PhiSpec& spec, std::span<const double> grid) {
  const double K = std::pow(2.0, spec.index_m);
  for (double t : grid) {
    const double lhs = phi_big(spec, 2.0 * t);
    const double rhs = K * phi_big(spec, t);
    if (lhs > rhs * (1.0 + 1e-9))
      throw std::runtime_error("delta2_constant: Phi(2t) <= K Phi(t) fails at t=" +
                               std::to_string(t));
  }
  return K;
}

double delta2_constant(const PhiSpec& spec) {
  const auto grid = log_grid(1e-4, 1e4, 400);
  return delta2_constant(spec, grid);
}

PhiSpec make_power_phi(double p) {
  PhiSpec s;
  s.phi = [p](double t) { return p * std::pow(t, p - 2.0); };
  s.phi_prime = [p](double t) { return p * (p - 2.0) * std::pow(t, p - 3.0); };
  s.closed_phi_big = [p](double t) { return std::pow(t, p); };
  s.index_l = p;
  s.index_m = p;
  s.label = "power(p=" + std::to_string(p) + ")";
  return s;
}

PhiSpec make_double_power_phi(double p0, double p1) {
  PhiSpec s;
  s.phi = [p0, p1](double t) {
    return p0 * std::pow(t, p0 - 2.0) + p1 * std::pow(t, p1 - 2.0);
  };
  s.phi_prime = [p0, p1](double t) {
    return p0 * (p0 - 2.0) * std::pow(t, p0 - 3.0) +
           p1 * (p1 - 2.0) * std::pow(t, p1 - 3.0);
  };
  s.closed_phi_big = [p0, p1](double t) {
    return std::pow(t, p0) + std::pow(t, p1);
  };
  s.index_l = p0;
  s.index_m = p1;
  s.label = "double-power(" + std::to_string(p0) + "," + std::to_string(p1) + ")";
  return s;
}

PhiSpec make_gamma_phi(double gamma) {
  PhiSpec s;
  s.phi = [gamma](double t) {
    return 2.0 * gamma * std::pow(1.0 + t * t, gamma - 1.0);
  };
  s.phi_prime = [gamma](double t) {
    return 4.0 * gamma * (gamma - 1.0) * t * std::pow(1.0 + t * t, gamma - 2.0);
  };
  s.closed_phi_big = [gamma](double t) {
    return std::pow(1.0 + t * t, gamma) - 1.0;
  };
  s.index_l = 2.0;
  s.index_m = 2.0 * gamma;
  s.label = "gamma(" + std::to_string(gamma) + ")";
  return s;
}

PhiSpec make_plog_phi(double p, double q) {
  PhiSpec s;
  // Phi = t^p log(t^q + 1); phi = Phi'(t)/t.
  s.phi = [p, q](double t) {
    const double tq = std::pow(t, q);
    return p * std::pow(t, p - 2.0) * std::log1p(tq) +
           q * std::pow(t, p + q - 2.0) / (tq + 1.0);
  };
  s.phi_prime = [p, q](double t) {
    const double tq = std::pow(t, q);
    const double L = std::log1p(tq);
    const double d1 = p * (p - 2.0) * std::pow(t, p - 3.0) * L +
                      p * q * std::pow(t, p + q - 3.0) / (tq + 1.0);
    const double d2 = q * (p + q - 2.0) * std::pow(t, p + q - 3.0) / (tq + 1.0) -
                      q * q * std::pow(t, p + 2.0 * q - 3.0) /
                          ((tq + 1.0) * (tq + 1.0));
    return d1 + d2;
  };
  s.closed_phi_big = [p, q](double t) {
    return std::pow(t, p) * std::log1p(std::pow(t, q));
  };
  s.index_l = p;
  s.index_m = p + q;
  s.label = "plog(" + std::to_string(p) + "," + std::to_string(q) + ")";
  return s;
}

}  // namespace kirchhoff
