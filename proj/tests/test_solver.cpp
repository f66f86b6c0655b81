#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "kirchhoff/solver.hpp"

using namespace kirchhoff;

namespace {

constexpr double kPi = std::numbers::pi;

ProblemSpec power_problem(double theta, int nodes) {
  ProblemSpec p;
  p.phi = make_power_phi(2.0);
  p.kirchhoff = make_constant_kirchhoff(1.0);
  p.nonlinearity = make_power_nonlinearity(theta);
  p.dimension = 3;
  p.domain = GridDomain::interval(1.0, nodes);
  return p;
}

SolveConfig quick_config() {
  SolveConfig cfg;
  cfg.residual_tolerance = 1e-7;
  return cfg;
}

}  // namespace

TEST_CASE("nodal solve on the power problem") {
  const ProblemSpec p = power_problem(5.0, 64);
  const auto [w, report] = minimize_nodal(p, quick_config());

  CHECK(report.converged);
  CHECK(report.residual_norm <= 1e-7);
  CHECK(report.nodal_domains == 2);
  CHECK(report.scaling_drift < 1e-8);
  CHECK(report.energy_c0 > 0.0);
  CHECK(report.energy_c0 == doctest::Approx(energy(p, w)).epsilon(1e-12));
  REQUIRE(report.energy_trace.size() == std::size_t(report.iterations) + 1);
  for (std::size_t i = 1; i < report.energy_trace.size(); ++i)
    CHECK(report.energy_trace[i] <= report.energy_trace[i - 1]);

  const auto audit = audit_solution(p, w, report);
  for (const auto& c : audit.checks) {
    INFO(c.name, " value=", c.value, " ", c.detail);
    CHECK((c.passed || c.skipped));
  }
  CHECK(audit.all_passed());
}

TEST_CASE("ground solve sits below the nodal level") {
  const ProblemSpec p = power_problem(5.0, 64);
  const auto [w, nodal] = minimize_nodal(p, quick_config());
  const auto [u, ground] = minimize_ground(p, quick_config());

  CHECK(ground.converged);
  CHECK(ground.nodal_domains == 1);
  CHECK(ground.energy_c0 > 0.0);
  CHECK(nodal.energy_c0 > 2.0 * ground.energy_c0);
}

TEST_CASE("kirchhoff nodal solve") {
  ProblemSpec p = power_problem(6.0, 64);
  p.kirchhoff = make_affine_kirchhoff(1.0, 1.0);
  const auto [w, report] = minimize_nodal(p, quick_config());
  CHECK(report.converged);
  CHECK(report.nodal_domains == 2);
  const auto audit = audit_solution(p, w, report);
  CHECK(audit.all_passed());
}

TEST_CASE("2D nodal solve on a coarse rectangle") {
  ProblemSpec p;
  p.phi = make_double_power_phi(2.0, 3.0);
  p.kirchhoff = make_constant_kirchhoff(1.0);
  p.nonlinearity = make_power_nonlinearity(7.0);
  p.dimension = 4;
  p.domain = GridDomain::rectangle(1.0, 1.0, 24, 24);
  SolveConfig cfg;
  cfg.residual_tolerance = 1e-6;
  const auto [w, report] = minimize_nodal(p, cfg);
  CHECK(report.converged);
  CHECK(report.nodal_domains == 2);
  const auto audit = audit_solution(p, w, report);
  for (const auto& c : audit.checks) {
    INFO(c.name, " value=", c.value, " ", c.detail);
    CHECK((c.passed || c.skipped));
  }
}

TEST_CASE("solves are deterministic for a fixed seed") {
  const ProblemSpec p = power_problem(5.0, 64);
  SolveConfig cfg = quick_config();
  cfg.initial_guess = InitialGuess::random_smooth;
  cfg.seed = 42;
  const auto [w1, r1] = minimize_nodal(p, cfg);
  const auto [w2, r2] = minimize_nodal(p, cfg);
  CHECK(r1.iterations == r2.iterations);
  CHECK(r1.energy_c0 == r2.energy_c0);
  for (std::size_t i = 0; i < w1.size(); ++i)
    CHECK(w1.values[i] == w2.values[i]);
}

TEST_CASE("one-signed user guess is rejected") {
  const ProblemSpec p = power_problem(5.0, 64);
  SolveConfig cfg = quick_config();
  cfg.initial_guess = InitialGuess::user;
  ScalarField guess(p.domain);
  for (int k = 0; k < p.domain.node_count(); ++k)
    guess.values[std::size_t(k)] =
        std::sin(kPi * p.domain.node_position(k)[0]);
  cfg.user_field = guess;
  CHECK_THROWS(minimize_nodal(p, cfg));
}

TEST_CASE("audit flags a one-signed field and skips dependent checks") {
  const ProblemSpec p = power_problem(5.0, 64);
  const auto [u, ground] = minimize_ground(p, quick_config());

  SolveReport fake = ground;
  fake.nodal_domains = nodal_domain_count(u, 1e-9);
  const auto audit = audit_solution(p, u, fake);
  CHECK_FALSE(audit.all_passed());

  const auto* sign = audit.find("sign-change");
  REQUIRE(sign != nullptr);
  CHECK_FALSE(sign->passed);
  const auto* domains = audit.find("nodal-domains");
  REQUIRE(domains != nullptr);
  CHECK_FALSE(domains->passed);

  for (const auto& c : audit.checks) {
    if (c.name == "sign-change" || c.name == "nodal-domains") continue;
    INFO(c.name);
    CHECK((c.passed || c.skipped));
  }
  CHECK(audit.find("Upsilon(1,1)=0")->skipped);
  CHECK(audit.find("hessian-det>0")->skipped);
}

TEST_CASE("iteration cap produces a clean non-converged report") {
  const ProblemSpec p = power_problem(5.0, 64);
  SolveConfig cfg = quick_config();
  cfg.max_outer_iterations = 2;
  cfg.residual_tolerance = 1e-14;
  const auto [w, report] = minimize_nodal(p, cfg);
  CHECK_FALSE(report.converged);
  CHECK(report.iterations <= 2);
  CHECK_FALSE(report.failure.empty());
}
