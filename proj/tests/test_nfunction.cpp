#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kirchhoff/nfunction.hpp"

using namespace kirchhoff;

TEST_CASE("power family closed forms") {
  const PhiSpec p2 = make_power_phi(2.0);
  CHECK(phi_big(p2, 1.5) == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(phi_big(p2, 0.0) == 0.0);
  CHECK(psi(p2, 3.0) == doctest::Approx(6.0).epsilon(1e-12));

  const PhiSpec p3 = make_power_phi(3.0);
  CHECK(psi(p3, std::sqrt(2.0)) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("double-power and gamma closed forms") {
  const PhiSpec dp = make_double_power_phi(2.0, 3.0);
  CHECK(phi_big(dp, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(psi(dp, 1.0) == doctest::Approx(5.0).epsilon(1e-12));

  const PhiSpec g2 = make_gamma_phi(2.0);
  CHECK(phi_big(g2, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("quadrature Phi matches closed forms") {
  for (PhiSpec spec : {make_power_phi(2.5), make_double_power_phi(2.0, 3.0),
                       make_gamma_phi(1.2), make_plog_phi(2.0, 0.5)}) {
    const auto closed = spec.closed_phi_big;
    spec.closed_phi_big = nullptr;  // force the quadrature path
    for (double t : {1e-3, 0.1, 1.0, 7.5, 120.0}) {
      const double want = closed(t);
      CHECK(phi_big(spec, t) ==
            doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("inverse of Phi") {
  const PhiSpec p2 = make_power_phi(2.0);
  CHECK(phi_big_inverse(p2, 4.0) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(phi_big_inverse(p2, 0.0) == 0.0);

  const PhiSpec dp = make_double_power_phi(2.0, 3.0);
  CHECK(phi_big_inverse(dp, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
  for (double t : {0.02, 0.7, 4.0, 300.0})
    CHECK(phi_big_inverse(dp, phi_big(dp, t)) ==
          doctest::Approx(t).epsilon(1e-10));
}

TEST_CASE("complement closed forms and Young's inequality") {
  const PhiSpec p2 = make_power_phi(2.0);
  // conjugate of t^2 is s^2/4
  CHECK(complement(p2, 2.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(complement(p2, 0.0) == 0.0);

  const PhiSpec p4 = make_power_phi(4.0);
  // sup st - t^4 at s = 4 is attained at t = 1
  CHECK(complement(p4, 4.0) == doctest::Approx(3.0).epsilon(1e-9));

  const PhiSpec dp = make_double_power_phi(2.0, 3.0);
  for (double s : {0.1, 1.0, 10.0})
    for (double t : {0.1, 1.0, 10.0})
      CHECK(s * t <= phi_big(dp, t) + complement(dp, s) + 1e-9);
}

TEST_CASE("complement bounds against Phi") {
  for (const PhiSpec& spec :
       {make_power_phi(2.0), make_double_power_phi(2.0, 3.0),
        make_gamma_phi(1.5), make_plog_phi(2.0, 0.5)}) {
    for (double t : {0.05, 0.3, 1.0, 4.0, 50.0}) {
      const double big = phi_big(spec, t);
      CHECK(complement(spec, psi(spec, t)) <=
            phi_big(spec, 2.0 * t) * (1.0 + 1e-9));
      CHECK(complement(spec, big / t) <= big * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("Legendre biconjugate recovers Phi") {
  for (const PhiSpec& spec :
       {make_power_phi(3.0), make_double_power_phi(2.0, 3.0),
        make_gamma_phi(1.2), make_plog_phi(2.0, 0.5)}) {
    for (double t : {0.01, 0.4, 1.0, 12.0, 900.0}) {
      const double big = phi_big(spec, t);
      CHECK(biconjugate(spec, t) ==
            doctest::Approx(big).epsilon(1e-6));
    }
  }
}

TEST_CASE("growth indices from sampled ratios") {
  const auto grid = log_grid(1e-4, 1e4, 400);
  {
    const auto [lo, hi] = estimate_indices(make_power_phi(2.0), grid);
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(2.0).epsilon(1e-9));
  }
  {
    const auto [lo, hi] = estimate_indices(make_double_power_phi(2.0, 3.0),
                                           grid);
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(hi == doctest::Approx(3.0).epsilon(1e-2));
  }
  {
    const auto [lo, hi] = estimate_indices(make_gamma_phi(1.2), grid);
    CHECK(lo == doctest::Approx(2.0).epsilon(1e-2));
    CHECK(hi == doctest::Approx(2.4).epsilon(1e-2));
  }
  {
    const auto [lo, hi] = estimate_indices(make_plog_phi(2.0, 0.5), grid);
    CHECK(lo >= 2.0 - 1e-9);
    CHECK(hi <= 2.5 + 1e-9);
  }
}

TEST_CASE("critical exponent") {
  CHECK(critical_exponent(2.0, 3) == doctest::Approx(6.0));
  CHECK(critical_exponent(2.0, 4) == doctest::Approx(4.0));
  CHECK(std::isinf(critical_exponent(3.0, 3)));
  CHECK(std::isinf(critical_exponent(4.0, 2)));
}

TEST_CASE("sandwich functions") {
  CHECK(xi_tau(XiKind::xi0, 2.0, 3.0, 3, 0.5) ==
        doctest::Approx(0.125).epsilon(1e-12));
  CHECK(xi_tau(XiKind::xi0, 2.0, 3.0, 3, 2.0) ==
        doctest::Approx(4.0).epsilon(1e-12));
  CHECK(xi_tau(XiKind::xi1, 2.0, 3.0, 3, 2.0) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(xi_tau(XiKind::tau0, 2.0, 3.0, 3, 0.5) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(xi_tau(XiKind::xi4, 2.0, 3.0, 3, 4.0) ==
        doctest::Approx(std::pow(4.0, 1.5)).epsilon(1e-12));
  // starred indices for l=2, m=2.2, N=3: l* = 6, m* = 8.25
  CHECK(xi_tau(XiKind::xi2, 2.0, 2.2, 3, 2.0) ==
        doctest::Approx(std::pow(2.0, 6.0)).epsilon(1e-12));
  CHECK(xi_tau(XiKind::xi3, 2.0, 2.2, 3, 2.0) ==
        doctest::Approx(std::pow(2.0, 8.25)).epsilon(1e-12));
  CHECK_THROWS_AS(xi_tau(XiKind::xi2, 3.0, 3.0, 3, 2.0), std::domain_error);
}

TEST_CASE("doubling constant") {
  CHECK(delta2_constant(make_power_phi(2.0)) == doctest::Approx(4.0));
  CHECK(delta2_constant(make_power_phi(3.0)) == doctest::Approx(8.0));
  CHECK(delta2_constant(make_plog_phi(2.0, 0.5)) ==
        doctest::Approx(std::pow(2.0, 2.5)));
}

TEST_CASE("Sobolev conjugate of the power family is exact") {
  // Phi = t^2, N = 3: Phi_*^{-1}(t) = 6 t^{1/6}, so Phi_*(t) = (t/6)^6.
  const SobolevConjugate conj(make_power_phi(2.0), 3);
  CHECK(conj.value(6.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(conj.inverse(1.0) == doctest::Approx(6.0).epsilon(1e-6));
  for (double t : {0.3, 2.0, 30.0, 4000.0})
    CHECK(conj.value(t) ==
          doctest::Approx(std::pow(t / 6.0, 6.0)).epsilon(1e-5));
  // log-log slope approaches the critical exponent
  const double slope = std::log(conj.value(200.0) / conj.value(100.0)) /
                       std::log(2.0);
  CHECK(slope == doctest::Approx(6.0).epsilon(1e-2));
}

TEST_CASE("Sobolev conjugate rejects supercritical generators") {
  CHECK_THROWS(SobolevConjugate(make_power_phi(3.0), 3));
  CHECK_THROWS(SobolevConjugate(make_power_phi(2.0), 1));
}

TEST_CASE("log grid") {
  const auto g = log_grid(1e-2, 1e2, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == doctest::Approx(1e-2));
  CHECK(g[2] == doctest::Approx(1.0));
  CHECK(g.back() == doctest::Approx(1e2));
}
