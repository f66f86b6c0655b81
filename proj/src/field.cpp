#include "kirchhoff/field.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace kirchhoff {

namespace {

std::atomic<Exec> g_default_exec{Exec::parallel};

constexpr std::ptrdiff_t kBlock = 4096;
constexpr double kGradEps = 1e-12;  // regularization inside phi only

// Deterministic reduction: fixed blocks summed in index order regardless of
// the thread schedule.
template <class F>
double block_reduce(std::ptrdiff_t n, Exec exec, F&& f) {
  const std::ptrdiff_t nb = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(static_cast<std::size_t>(nb), 0.0);
  const bool par = exec == Exec::parallel;
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::ptrdiff_t lo = b * kBlock;
    const std::ptrdiff_t hi = std::min(lo + kBlock, n);
    double acc = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) acc += f(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

Exec default_execution() { return g_default_exec.load(); }
void set_default_execution(Exec exec) { g_default_exec.store(exec); }

std::pair<ScalarField, ScalarField> decompose(const ScalarField& u) {
  ScalarField up(u.domain), um(u.domain);
  for (std::size_t i = 0; i < u.size(); ++i) {
    up.values[i] = std::max(u.values[i], 0.0);
    um.values[i] = std::min(u.values[i], 0.0);
  }
  return {std::move(up), std::move(um)};
}

CellGradient cell_gradient(const ScalarField& u, Exec exec) {
  const GridDomain& d = u.domain;
  CellGradient g;
  g.cell_volume = d.cell_volume();
  const bool par = exec == Exec::parallel;
  if (d.kind == GridDomain::Kind::interval) {
    const int n = d.resolution[0];
    const double inv_h = 1.0 / d.spacing(0);
    g.gx.resize(static_cast<std::size_t>(n) + 1);
    g.magnitude.resize(g.gx.size());
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c <= n; ++c) {
      const double ul = c > 0 ? u.values[std::size_t(c - 1)] : 0.0;
      const double ur = c < n ? u.values[std::size_t(c)] : 0.0;
      g.gx[std::size_t(c)] = (ur - ul) * inv_h;
      g.magnitude[std::size_t(c)] = std::abs(g.gx[std::size_t(c)]);
    }
    return g;
  }
  const int nx = d.resolution[0], ny = d.resolution[1];
  const double ihx = 1.0 / d.spacing(0), ihy = 1.0 / d.spacing(1);
  const std::size_t ncells = std::size_t(nx + 1) * std::size_t(ny + 1);
  g.gx.resize(ncells);
  g.gy.resize(ncells);
  g.magnitude.resize(ncells);
  auto node = [&](int i, int j) -> double {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return 0.0;
    return u.values[std::size_t(j) * std::size_t(nx) + std::size_t(i)];
  };
#pragma omp parallel for schedule(static) if (par)
  for (int cj = 0; cj <= ny; ++cj) {
    for (int ci = 0; ci <= nx; ++ci) {
      // forward differences anchored at node (ci-1, cj-1); cell-averaged
      // gradients are blind to the checkerboard mode and descent finds it
      const double a = node(ci - 1, cj - 1);
      const double b = node(ci, cj - 1);
      const double c = node(ci - 1, cj);
      const std::size_t idx = std::size_t(cj) * std::size_t(nx + 1) + std::size_t(ci);
      g.gx[idx] = (b - a) * ihx;
      g.gy[idx] = (c - a) * ihy;
      g.magnitude[idx] = std::hypot(g.gx[idx], g.gy[idx]);
    }
  }
  return g;
}

CellGradient cell_gradient(const ScalarField& u) {
  return cell_gradient(u, default_execution());
}

double modular_gradient(const ProblemSpec& problem, const ScalarField& u,
                        Exec exec) {
  const CellGradient g = cell_gradient(u, exec);
  const auto& phi = problem.phi;
  const double vol = g.cell_volume;
  return block_reduce(std::ptrdiff_t(g.magnitude.size()), exec,
                      [&](std::ptrdiff_t c) {
                        const double mag = g.magnitude[std::size_t(c)];
                        return mag > 0.0 ? vol * phi_big(phi, mag) : 0.0;
                      });
}

double modular_gradient(const ProblemSpec& problem, const ScalarField& u) {
  return modular_gradient(problem, u, default_execution());
}

double energy(const ProblemSpec& problem, const ScalarField& u, Exec exec) {
  const double q = modular_gradient(problem, u, exec);
  const double vol = u.domain.node_volume();
  const auto& F = problem.nonlinearity.F;
  const double mass = block_reduce(
      std::ptrdiff_t(u.size()), exec,
      [&](std::ptrdiff_t i) { return F(u.values[std::size_t(i)]); });
  return problem.kirchhoff.M_hat(q) - vol * mass;
}

double energy(const ProblemSpec& problem, const ScalarField& u) {
  return energy(problem, u, default_execution());
}

ScalarField residual(const ProblemSpec& problem, const ScalarField& u,
                     Exec exec) {
  const GridDomain& d = u.domain;
  const CellGradient g = cell_gradient(u, exec);
  const double q = modular_gradient(problem, u, exec);
  const double M = problem.kirchhoff.M(q);
  const auto& phi = problem.phi.phi;
  const auto& f = problem.nonlinearity.f;
  const bool par = exec == Exec::parallel;

  // flux = phi(|grad u|) grad u per cell; the residual is its exact discrete
  // adjoint so that <r, v> = J'(u) v for every test field v.
  std::vector<double> fx(g.gx.size()), fy(g.gy.size());
#pragma omp parallel for schedule(static) if (par)
  for (std::ptrdiff_t c = 0; c < std::ptrdiff_t(g.gx.size()); ++c) {
    const double mag = std::max(g.magnitude[std::size_t(c)], kGradEps);
    const double ph = phi(mag);
    fx[std::size_t(c)] = ph * g.gx[std::size_t(c)];
    if (!fy.empty()) fy[std::size_t(c)] = ph * g.gy[std::size_t(c)];
  }

  ScalarField r(d);
  if (d.kind == GridDomain::Kind::interval) {
    const int n = d.resolution[0];
    const double inv_h = 1.0 / d.spacing(0);
#pragma omp parallel for schedule(static) if (par)
    for (int i = 0; i < n; ++i) {
      const double div = (fx[std::size_t(i)] - fx[std::size_t(i) + 1]) * inv_h;
      r.values[std::size_t(i)] = M * div - f(u.values[std::size_t(i)]);
    }
    return r;
  }
  const int nx = d.resolution[0], ny = d.resolution[1];
  const double ihx = 1.0 / d.spacing(0), ihy = 1.0 / d.spacing(1);
  auto cell = [nx](int ci, int cj) {
    return std::size_t(cj) * std::size_t(nx + 1) + std::size_t(ci);
  };
#pragma omp parallel for schedule(static) if (par)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      // node (i, j) anchors cell (i+1, j+1) and enters the x-difference of
      // cell (i, j+1) and the y-difference of cell (i+1, j)
      const double div =
          ihx * (fx[cell(i, j + 1)] - fx[cell(i + 1, j + 1)]) +
          ihy * (fy[cell(i + 1, j)] - fy[cell(i + 1, j + 1)]);
      const std::size_t idx = std::size_t(j) * std::size_t(nx) + std::size_t(i);
      r.values[idx] = M * div - f(u.values[idx]);
    }
  }
  return r;
}

ScalarField residual(const ProblemSpec& problem, const ScalarField& u) {
  return residual(problem, u, default_execution());
}

double inner(const ScalarField& a, const ScalarField& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("inner: incompatible fields");
  const double vol = a.domain.node_volume();
  return vol * block_reduce(std::ptrdiff_t(a.size()), default_execution(),
                            [&](std::ptrdiff_t i) {
                              return a.values[std::size_t(i)] *
                                     b.values[std::size_t(i)];
                            });
}

double norm(const ScalarField& a) { return std::sqrt(inner(a, a)); }

double luxemburg_norm(const PhiSpec& phi, const ScalarField& u, NormMode mode) {
  std::vector<double> mags;
  double vol;
  if (mode == NormMode::gradient) {
    CellGradient g = cell_gradient(u);
    mags = std::move(g.magnitude);
    vol = g.cell_volume;
  } else {
    mags.reserve(u.size());
    for (double v : u.values) mags.push_back(std::abs(v));
    vol = u.domain.node_volume();
  }
  double sup = 0.0;
  for (double m : mags) sup = std::max(sup, m);
  if (sup == 0.0) return 0.0;

  auto modular = [&](double tau) {
    return vol * block_reduce(std::ptrdiff_t(mags.size()), default_execution(),
                              [&](std::ptrdiff_t i) {
                                const double m = mags[std::size_t(i)];
                                return m > 0.0 ? phi_big(phi, m / tau) : 0.0;
                              });
  };
  double lo = sup * 1e-12, hi = sup * 1e12;
  while (modular(lo) < 1.0) lo *= 0.25;
  while (modular(hi) > 1.0) hi *= 4.0;
  double tau = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    tau = 0.5 * (lo + hi);
    const double rho = modular(tau);
    if (std::abs(rho - 1.0) <= 1e-10) break;
    if (rho > 1.0)
      lo = tau;
    else
      hi = tau;
    if (hi - lo <= 1e-16 * hi) break;
  }
  return tau;
}

int nodal_domain_count(const ScalarField& u, double eps) {
  if (eps < 0.0) throw std::domain_error("nodal_domain_count: eps < 0");
  const GridDomain& d = u.domain;
  const int n = d.node_count();
  // sign classes: +1 above eps, -1 below -eps, 0 dead zone
  std::vector<int> cls(std::size_t(n), 0);
  for (int i = 0; i < n; ++i) {
    if (u.values[std::size_t(i)] > eps)
      cls[std::size_t(i)] = 1;
    else if (u.values[std::size_t(i)] < -eps)
      cls[std::size_t(i)] = -1;
  }
  std::vector<int> label(std::size_t(n), -1);
  int components = 0;
  std::vector<int> stack;
  const int nx = d.kind == GridDomain::Kind::interval ? n : d.resolution[0];
  const int ny = d.kind == GridDomain::Kind::interval ? 1 : d.resolution[1];
  auto idx = [nx](int i, int j) { return j * nx + i; };
  for (int start = 0; start < n; ++start) {
    if (cls[std::size_t(start)] == 0 || label[std::size_t(start)] >= 0) continue;
    const int c = cls[std::size_t(start)];
    ++components;
    stack.push_back(start);
    label[std::size_t(start)] = components;
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int i = cur % nx, j = cur / nx;
      const int nbors[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
      for (const auto& nb : nbors) {
        if (nb[0] < 0 || nb[0] >= nx || nb[1] < 0 || nb[1] >= ny) continue;
        const int k = idx(nb[0], nb[1]);
        if (cls[std::size_t(k)] == c && label[std::size_t(k)] < 0) {
          label[std::size_t(k)] = components;
          stack.push_back(k);
        }
      }
    }
  }
  return components;
}

ScalarField combine(const ScalarField& a, double ca, const ScalarField& b,
                    double cb) {
  if (a.size() != b.size())
    throw std::invalid_argument("combine: incompatible fields");
  ScalarField out(a.domain);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.values[i] = ca * a.values[i] + cb * b.values[i];
  return out;
}

ScalarField scale(const ScalarField& a, double c) {
  ScalarField out(a.domain);
  for (std::size_t i = 0; i < a.size(); ++i) out.values[i] = c * a.values[i];
  return out;
}

}  // namespace kirchhoff
