#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kirchhoff/lemmas.hpp"

using namespace kirchhoff;

namespace {

ProblemSpec family(const std::string& name) {
  ProblemSpec p;
  if (name == "power") {
    p.phi = make_power_phi(2.0);
    p.nonlinearity = make_power_nonlinearity(5.0);
    p.dimension = 3;
  } else if (name == "double-power") {
    p.phi = make_double_power_phi(2.0, 3.0);
    p.nonlinearity = make_power_nonlinearity(7.0);
    p.dimension = 4;
  } else if (name == "gamma") {
    p.phi = make_gamma_phi(1.2);
    p.nonlinearity = make_power_nonlinearity(5.5);
    p.dimension = 3;
  } else {
    p.phi = make_plog_phi(2.0, 0.5);
    p.nonlinearity = make_power_nonlinearity(5.5);
    p.dimension = 3;
  }
  p.kirchhoff = make_affine_kirchhoff(1.0, 1.0);
  p.domain = GridDomain::interval(1.0, 16);
  return p;
}

}  // namespace

TEST_CASE("every inequality holds for all built-in generator families") {
  for (const char* name : {"power", "double-power", "gamma", "plog"}) {
    const auto suite = run_lemma_suite(family(name), SamplingConfig{});
    INFO("family: ", name);
    for (const auto& c : suite.checks) {
      INFO(c.name, " worst margin ", c.worst_margin, " at t=", c.worst_point,
           " s=", c.second_point);
      CHECK(c.passed);
    }
    CHECK(suite.all_passed());
  }
}

TEST_CASE("conjugate checks are present exactly when l < N") {
  const auto sub = run_lemma_suite(family("power"), SamplingConfig{});
  CHECK(sub.find("conjugate-sandwich-lower") != nullptr);
  CHECK(sub.find("conjugate-sandwich-upper") != nullptr);

  ProblemSpec p = family("power");
  p.dimension = 2;  // l = N, the Sobolev conjugate degenerates
  const auto flat = run_lemma_suite(p, SamplingConfig{});
  CHECK(flat.find("conjugate-sandwich-lower") == nullptr);
  CHECK(flat.find("conjugate-sandwich-upper") == nullptr);
  CHECK(flat.find("young-inequality") != nullptr);
}

TEST_CASE("a sublinear nonlinearity breaks the derivative bound") {
  ProblemSpec p = family("power");
  // f = |u| u has f'(t) t = 2 f(t), well below (2m - 1) f = 3 f
  p.nonlinearity = make_power_nonlinearity(2.0);
  const auto suite = run_lemma_suite(p, SamplingConfig{});
  const auto* bound = suite.find("f-derivative-bound");
  REQUIRE(bound != nullptr);
  CHECK_FALSE(bound->passed);
  CHECK_FALSE(suite.all_passed());
}

TEST_CASE("a decaying Kirchhoff term breaks the M bounds") {
  ProblemSpec p = family("power");
  p.kirchhoff.label = "decay";
  p.kirchhoff.M = [](double t) { return 1.0 / (1.0 + t); };
  p.kirchhoff.M_prime = [](double t) {
    return -1.0 / ((1.0 + t) * (1.0 + t));
  };
  p.kirchhoff.M_hat = [](double t) { return std::log1p(t); };
  p.kirchhoff.sigma0 = 0.0;
  const auto suite = run_lemma_suite(p, SamplingConfig{});
  const auto* super = suite.find("M-hat-superadditive");
  REQUIRE(super != nullptr);
  CHECK_FALSE(super->passed);
}

TEST_CASE("find returns null for unknown names") {
  const auto suite = run_lemma_suite(family("power"), SamplingConfig{});
  CHECK(suite.find("no-such-check") == nullptr);
}
