#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kirchhoff/model.hpp"

using namespace kirchhoff;

namespace {

ProblemSpec semilinear_power(double theta) {
  ProblemSpec p;
  p.phi = make_power_phi(2.0);
  p.kirchhoff = make_constant_kirchhoff(1.0);
  p.nonlinearity = make_power_nonlinearity(theta);
  p.dimension = 3;
  p.domain = GridDomain::interval(1.0, 16);
  return p;
}

}  // namespace

TEST_CASE("kirchhoff terms") {
  const KirchhoffTerm c = make_constant_kirchhoff(2.0);
  CHECK(c.M(5.0) == doctest::Approx(2.0));
  CHECK(c.M_hat(5.0) == doctest::Approx(10.0));
  CHECK(c.sigma0 == doctest::Approx(2.0));

  const KirchhoffTerm a = make_affine_kirchhoff(1.0, 1.0);
  CHECK(a.M(3.0) == doctest::Approx(4.0));
  CHECK(a.M_hat(3.0) == doctest::Approx(3.0 + 4.5));
  CHECK(a.M_prime(3.0) == doctest::Approx(1.0));

  const KirchhoffTerm lg = make_log_kirchhoff(1.0);
  CHECK(lg.M(0.0) == doctest::Approx(1.0));
  CHECK(lg.M(std::exp(1.0) - 1.0) == doctest::Approx(2.0));
  // M_hat(t) = t + (1+t) log(1+t) - t matches the quadrature of M
  CHECK(lg.M_hat(2.0) == doctest::Approx(2.0 + 3.0 * std::log(3.0) - 2.0));
}

TEST_CASE("power nonlinearity") {
  const Nonlinearity nl = make_power_nonlinearity(4.0);
  CHECK(nl.f(2.0) == doctest::Approx(8.0));
  CHECK(nl.f(-2.0) == doctest::Approx(-8.0));
  CHECK(nl.F(2.0) == doctest::Approx(4.0));
  CHECK(nl.f_prime(2.0) == doctest::Approx(12.0));
  CHECK(nl.f(0.0) == 0.0);
}

TEST_CASE("strict verification passes inside the exponent windows") {
  const SamplingConfig sampling;
  const auto report =
      verify_hypotheses(semilinear_power(5.0), sampling, Strictness::strict);
  for (const auto& c : report.checks) {
    INFO(c.name, " margin=", c.margin, " ", c.detail);
    CHECK(c.passed);
    CHECK_FALSE(c.warned);
  }
  CHECK(report.all_passed());
  CHECK_FALSE(report.has_warnings());
}

TEST_CASE("theta at the window edge: strict fails, desk warns") {
  const SamplingConfig sampling;
  const ProblemSpec p = semilinear_power(4.0);  // 2m = 4, not theta > 2m

  const auto strict = verify_hypotheses(p, sampling, Strictness::strict);
  CHECK_FALSE(strict.all_passed());
  const auto* window = strict.find("window: theta in (2m, l*)");
  REQUIRE(window != nullptr);
  CHECK_FALSE(window->passed);

  const auto desk = verify_hypotheses(p, sampling, Strictness::desk);
  CHECK(desk.all_passed());
  CHECK(desk.has_warnings());
  const auto* warned = desk.find("window: theta in (2m, l*)");
  REQUIRE(warned != nullptr);
  CHECK(warned->passed);
  CHECK(warned->warned);
}

TEST_CASE("gamma with large exponent violates the m window") {
  ProblemSpec p = semilinear_power(5.0);
  p.phi = make_gamma_phi(2.0);  // l = 2, m = 4 > min(l*/2, N) = 3
  p.nonlinearity = make_power_nonlinearity(9.0);
  const auto report =
      verify_hypotheses(p, SamplingConfig{}, Strictness::strict);
  const auto* window = report.find("window: l < m < min(l*/2, N)");
  REQUIRE(window != nullptr);
  CHECK_FALSE(window->passed);
}

TEST_CASE("affine and log Kirchhoff terms verify") {
  for (auto term : {make_affine_kirchhoff(1.0, 1.0), make_log_kirchhoff(1.0)}) {
    ProblemSpec p = semilinear_power(5.0);
    p.kirchhoff = term;
    const auto report =
        verify_hypotheses(p, SamplingConfig{}, Strictness::strict);
    INFO(term.label);
    CHECK(report.all_passed());
  }
}

TEST_CASE("builtin problems") {
  const ProblemSpec p = builtin_problem(
      "power", {{"p", "2"}, {"theta", "4"}, {"M", "affine"}, {"m0", "1"},
                {"b", "0.5"}, {"kind", "interval"}, {"extent", "1"},
                {"nodes", "64"}, {"N", "3"}});
  CHECK(p.phi.index_l == doctest::Approx(2.0));
  CHECK(p.dimension == 3);
  CHECK(p.domain.resolution[0] == 64);
  CHECK(p.kirchhoff.M(2.0) == doctest::Approx(2.0));
  CHECK(p.nonlinearity.theta == doctest::Approx(4.0));

  const ProblemSpec q = builtin_problem(
      "double-power", {{"p0", "2"}, {"p1", "3"}, {"theta", "7"},
                       {"M", "constant"}, {"m0", "1"}, {"kind", "rectangle"},
                       {"extent", "1"}, {"extent_y", "2"}, {"nodes", "8"},
                       {"nodes_y", "12"}, {"N", "4"}});
  CHECK(q.domain.kind == GridDomain::Kind::rectangle);
  CHECK(q.domain.extent[1] == doctest::Approx(2.0));
  CHECK(q.phi.index_m == doctest::Approx(3.0));

  CHECK_THROWS_AS(builtin_problem("nope", {}), std::invalid_argument);
  CHECK_THROWS_AS(
      builtin_problem("power", {{"p", "2"}, {"theta", "4"}, {"M", "constant"},
                                {"m0", "1"}, {"kind", "interval"},
                                {"extent", "1"}, {"nodes", "64"}, {"N", "3"},
                                {"bogus", "1"}}),
      std::invalid_argument);
}
