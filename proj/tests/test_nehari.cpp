#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "kirchhoff/nehari.hpp"

using namespace kirchhoff;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec problem_1d(double theta = 4.0, bool kirchhoff = false) {
  ProblemSpec p;
  p.phi = make_power_phi(2.0);
  p.kirchhoff =
      kirchhoff ? make_affine_kirchhoff(1.0, 1.0) : make_constant_kirchhoff(1.0);
  p.nonlinearity = make_power_nonlinearity(theta);
  p.dimension = 3;
  p.domain = GridDomain::interval(1.0, 64);
  return p;
}

ScalarField sine_field(const GridDomain& dom, int mode) {
  ScalarField u(dom);
  for (int k = 0; k < dom.node_count(); ++k)
    u.values[std::size_t(k)] =
        std::sin(mode * kPi * dom.node_position(k)[0] / dom.extent[0]);
  return u;
}

ScalarField random_sign_changing(const GridDomain& dom, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.2, 1.0);
  ScalarField u = sine_field(dom, 2);
  const double a = dist(rng), b = dist(rng);
  const ScalarField u3 = sine_field(dom, 3);
  for (std::size_t i = 0; i < u.size(); ++i)
    u.values[i] = a * u.values[i] + 0.3 * b * u3.values[i];
  return u;
}

// positive and negative humps with supports separated by an exact zero node,
// so no grid cell sees both signs and the h surface decouples exactly
ScalarField separated_sign_changing(const GridDomain& dom, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.3, 1.5);
  const double a = dist(rng), b = dist(rng);
  ScalarField u = sine_field(dom, 2);
  for (int k = 0; k < dom.node_count(); ++k) {
    const double x = dom.node_position(k)[0];
    u.values[std::size_t(k)] *= (x < 0.5 ? a : b);
    if (std::abs(u.values[std::size_t(k)]) < 1e-12)
      u.values[std::size_t(k)] = 0.0;
  }
  return u;
}

}  // namespace

TEST_CASE("upsilon matches finite differences of h") {
  for (bool kir : {false, true}) {
    const ProblemSpec p = problem_1d(4.0, kir);
    const ScalarField v = random_sign_changing(p.domain, 3);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.3, 3.0);
    for (int k = 0; k < 20; ++k) {
      const double t = dist(rng), s = dist(rng);
      const auto u = upsilon(p, v, t, s);
      const double eps = 1e-6;
      const double fd_t =
          (h_value(p, v, t + eps, s) - h_value(p, v, t - eps, s)) / (2.0 * eps);
      const double fd_s =
          (h_value(p, v, t, s + eps) - h_value(p, v, t, s - eps)) / (2.0 * eps);
      const double scale_t = std::max(1.0, std::abs(fd_t));
      const double scale_s = std::max(1.0, std::abs(fd_s));
      CHECK(std::abs(u[0] - fd_t) / scale_t < 1e-6);
      CHECK(std::abs(u[1] - fd_s) / scale_s < 1e-6);
    }
  }
}

TEST_CASE("projection lands on the nodal Nehari set") {
  for (bool kir : {false, true}) {
    // the affine Kirchhoff term needs theta > 4 for h to decay at infinity
    const ProblemSpec p = problem_1d(kir ? 6.0 : 4.0, kir);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const ScalarField v = random_sign_changing(p.domain, seed);
      const auto pr = project_to_M(p, v, 1e-12);
      REQUIRE(pr.converged);
      CHECK(pr.scaling.t > 0.0);
      CHECK(pr.scaling.s > 0.0);
      const auto u = upsilon(p, v, pr.scaling.t, pr.scaling.s);
      const double scale = std::max(
          {1.0, std::abs(upsilon(p, v, pr.bracket[0], pr.bracket[0])[0]),
           std::abs(upsilon(p, v, pr.bracket[1], pr.bracket[1])[0])});
      CHECK(std::abs(u[0]) <= 1e-10 * scale);
      CHECK(std::abs(u[1]) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("projection is idempotent") {
  const ProblemSpec p = problem_1d();
  const ScalarField v = random_sign_changing(p.domain, 5);
  const auto pr = project_to_M(p, v, 1e-12);
  auto [vp, vm] = decompose(v);
  const ScalarField w = combine(vp, pr.scaling.t, vm, pr.scaling.s);
  const auto again = project_to_M(p, w, 1e-12);
  CHECK(again.scaling.t == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(again.scaling.s == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("projection scalings are inverse to field scalings") {
  const ProblemSpec p = problem_1d();
  const ScalarField v = random_sign_changing(p.domain, 9);
  const auto base = project_to_M(p, v, 1e-12);
  for (double c : {0.5, 2.0, 7.0}) {
    const auto scaled = project_to_M(p, scale(v, c), 1e-12);
    CHECK(scaled.scaling.t == doctest::Approx(base.scaling.t / c).epsilon(1e-7));
    CHECK(scaled.scaling.s == doctest::Approx(base.scaling.s / c).epsilon(1e-7));
  }
}

TEST_CASE("decoupled projection matches the closed form") {
  // constant M decouples h(t, s); with Phi = t^2 and f = |u|^2 u the
  // stationarity condition 2 t Q - t^3 P = 0 gives t = sqrt(2 Q / P)
  ProblemSpec p = problem_1d(4.0, false);
  p.domain = GridDomain::interval(1.0, 63);  // places a node at x = 1/2
  for (std::uint64_t seed = 2; seed <= 6; ++seed) {
    const ScalarField v = separated_sign_changing(p.domain, seed);
    auto [vp, vm] = decompose(v);
    const double vol = p.domain.node_volume();
    auto closed = [&](const ScalarField& part) {
      const double q = modular_gradient(p, part);
      double quartic = 0.0;
      for (double x : part.values) quartic += x * x * x * x;
      return std::sqrt(2.0 * q / (vol * quartic));
    };
    const auto pr = project_to_M(p, v, 1e-12);
    REQUIRE(pr.converged);
    CHECK(pr.scaling.t == doctest::Approx(closed(vp)).epsilon(1e-8));
    CHECK(pr.scaling.s == doctest::Approx(closed(vm)).epsilon(1e-8));
  }
}

TEST_CASE("projection requires a sign change") {
  const ProblemSpec p = problem_1d();
  const ScalarField v = sine_field(p.domain, 1);
  CHECK_THROWS_AS(project_to_M(p, v, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(h_value(p, v, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("one-parameter projection") {
  const ProblemSpec p = problem_1d();
  const ScalarField u = sine_field(p.domain, 1);
  const double t = project_to_N(p, u, 1e-12);
  CHECK(t > 0.0);
  const ScalarField w = scale(u, t);
  CHECK(std::abs(inner(residual(p, w), u)) < 1e-6);
  CHECK(project_to_N(p, w, 1e-12) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("the identity maximizes h over the scaling quadrant") {
  for (bool kir : {false, true}) {
    const ProblemSpec p = problem_1d(kir ? 6.0 : 4.0, kir);
    const ScalarField v = random_sign_changing(p.domain, 13);
    const auto pr = project_to_M(p, v, 1e-12);
    auto [vp, vm] = decompose(v);
    const ScalarField w = combine(vp, pr.scaling.t, vm, pr.scaling.s);
    const auto scan = maximality_scan(p, w, {0.2, 2.0}, {0.2, 2.0}, 41);
    CHECK(scan.max_at_identity);
    CHECK(scan.h_identity == doctest::Approx(energy(p, w)).epsilon(1e-12));
    // far down the diagonal the surface is deeply negative
    CHECK(h_value(p, w, 40.0, 40.0) < scan.h_identity);
  }
}

TEST_CASE("hessian of h at the identity is a strict maximum") {
  const ProblemSpec p = problem_1d(6.0, true);
  const ScalarField v = random_sign_changing(p.domain, 17);
  const auto pr = project_to_M(p, v, 1e-12);
  auto [vp, vm] = decompose(v);
  const ScalarField w = combine(vp, pr.scaling.t, vm, pr.scaling.s);
  const auto d = hessian_check(p, w);
  CHECK(d.d11 < 0.0);
  CHECK(d.d22 < 0.0);
  CHECK(d.det > 0.0);
  CHECK(d.d12 == doctest::Approx(d.d21).epsilon(1e-6));
}
