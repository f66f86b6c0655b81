#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kirchhoff {

// Generator of an N-function: Phi(t) = int_0^|t| phi(s) s ds.  The growth
// indices l, m are declared by the caller and validated against sampled
// ratios; they are never inferred silently.
struct PhiSpec {
  std::function<double(double)> phi;             // t > 0 -> phi(t) > 0
  std::function<double(double)> phi_prime;       // t > 0 -> phi'(t)
  std::function<double(double)> closed_phi_big;  // optional closed form of Phi
  double index_l = 0.0;
  double index_m = 0.0;
  std::string label;
};

// Phi(|t|), via the closed form when present, adaptive quadrature otherwise.
double phi_big(const PhiSpec& spec, double t);

// Psi(t) = phi(t) t for t >= 0, with Psi(0) = 0 taken as the limit.
double psi(const PhiSpec& spec, double t);

// Inverse of Phi on [0, inf): returns t >= 0 with Phi(t) = y.
double phi_big_inverse(const PhiSpec& spec, double y);

// Complement (Legendre transform) of Phi: max_{t>=0} { s t - Phi(t) }.
double complement(const PhiSpec& spec, double s);

// Legendre biconjugate of Phi, computed by maximizing s t - complement(s)
// numerically; recovers Phi for convex Phi.
double biconjugate(const PhiSpec& spec, double t);

// l* = l N / (N - l); +inf when l >= N (the embedding is never critical).
double critical_exponent(double index, int dimension);

// Sobolev conjugate Phi_* for a fixed dimension, built eagerly from the
// quadrature Phi_*^{-1}(t) = int_0^t Phi^{-1}(s) / s^{(N+1)/N} ds and
// tabulated on a log-spaced grid with monotone cubic interpolation.
// Immutable after construction; safe for concurrent read-only use.
class SobolevConjugate {
 public:
  SobolevConjugate(const PhiSpec& spec, int dimension);

  double value(double t) const;      // Phi_*(t)
  double inverse(double y) const;    // Phi_*^{-1}(y)
  double derivative(double t) const; // Phi_*'(t), central finite difference

  int dimension() const { return dimension_; }

 private:
  int dimension_;
  std::vector<double> log_t_;    // log of the argument of Phi_*^{-1}
  std::vector<double> log_inv_;  // log of Phi_*^{-1}
  std::vector<double> slope_;    // pchip slopes on the log-log table
};

// Inf and sup of phi(t) t^2 / Phi(t) over the grid.
std::pair<double, double> estimate_indices(const PhiSpec& spec,
                                           std::span<const double> grid);

// Sandwich functions of Lemmas 2.3-2.7 style bounds.
enum class XiKind { xi0, xi1, xi2, xi3, xi4, xi5, tau0, tau1 };

double xi_tau(XiKind kind, double index_l, double index_m, int dimension,
              double t);

// K = 2^m together with a sampled verification of Phi(2t) <= K Phi(t).
double delta2_constant(const PhiSpec& spec, std::span<const double> grid);
double delta2_constant(const PhiSpec& spec);

// n log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, int n);

// Built-in generator families.
PhiSpec make_power_phi(double p);                    // Phi = t^p
PhiSpec make_double_power_phi(double p0, double p1); // Phi = t^p0 + t^p1
PhiSpec make_gamma_phi(double gamma);                // Phi = (1+t^2)^gamma - 1
PhiSpec make_plog_phi(double p, double q);           // Phi = t^p log(t^q + 1)

namespace detail {
// Adaptive Simpson quadrature of f on [a, b] with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);
}  // namespace detail

}  // namespace kirchhoff
