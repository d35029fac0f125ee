// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "intrepid/rng.hpp"
#include "intrepid/targets.hpp"

using namespace intrepid;

TEST_CASE("indicator brackets") {
  CHECK(indicator(4, {5.0, 0.0}));
  CHECK_FALSE(indicator(4, {0.0, 0.0}));
  CHECK(indicator(1, {1.3, 0.0}));
  CHECK_FALSE(indicator(1, {0.0, 0.0}));
  CHECK(indicator(6, {4.0 * std::cos(3.0 * pi / 8.0),
                      4.0 * std::sin(3.0 * pi / 8.0)}));
  CHECK_FALSE(indicator(6, {0.0, 0.0}));
  CHECK(indicator(3, {2.5, 0.0}));
  CHECK(indicator(2, {5.0, 0.0}));
}

TEST_CASE("density factors at reference points") {
  CHECK(density_f(1, {0.0, 0.0}) == Catch::Approx(1.0));
  CHECK(density_f(3, {1.0, 1.0}) == Catch::Approx(1.0));
  CHECK(density_f(2, {0.0, 0.0}) == Catch::Approx(std::exp(-2.0)));
}

TEST_CASE("case targets compose indicator, density row, and parent") {
  const auto case1 = make_case(1);
  CHECK(case1.log_target({5.0, 0.0}) == Catch::Approx(-12.5));
  CHECK(case1.log_target({0.0, 0.0}) == neg_inf);

  const auto case8 = make_case(8);
  CHECK(case8.log_target({3.0, 9.0}) == Catch::Approx(-0.2));

  // ln pi == ln(I * f_row) at random in-support points, and equals
  // ln T + ln p pointwise
  static const int ind_of_case[9] = {4, 1, 6, 4, 2, 6, 5, 3, 6};
  static const int dens_of_case[9] = {1, 1, 1, 2, 2, 2, 3, 3, 3};
  RandomStream rng(8);
  for (int n = 1; n <= 9; ++n) {
    const auto target = make_case(n);
    int checked = 0;
    while (checked < 200) {
      const Point x{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
      if (!indicator(ind_of_case[n - 1], x)) {
        CHECK(target.log_target(x) == neg_inf);
        continue;
      }
      ++checked;
      const double expected = log_density_f(dens_of_case[n - 1], x);
      CHECK(target.log_target(x) == Catch::Approx(expected).margin(1e-12));
      CHECK(target.log_target(x) ==
            Catch::Approx(target.log_transform(x) +
                          target.parent().log_density(x))
                .margin(1e-12));
    }
  }
}

TEST_CASE("indicator supports are open-set consistent") {
  RandomStream rng(9);
  for (int n = 1; n <= 9; ++n) {
    const auto target = make_case(n);
    int checked = 0;
    while (checked < 100) {
      const Point x{rng.uniform(-8.0, 8.0), rng.uniform(-8.0, 8.0)};
      if (target.log_target(x) == neg_inf) continue;
      ++checked;
      for (const double dx : {-1e-9, 1e-9})
        for (const double dy : {-1e-9, 1e-9})
          CHECK(target.log_target({x[0] + dx, x[1] + dy}) > neg_inf);
    }
  }
}

TEST_CASE("gauss-planes in d dimensions") {
  const auto t3 = make_gauss_planes(3);
  const double log_phi3 =
      -0.5 * 4.0 - 1.5 * std::log(2.0 * pi);  // at (2,0,0)
  CHECK(t3.log_target({2.0, 0.0, 0.0}) == Catch::Approx(log_phi3));
  CHECK(t3.log_target({0.0, 9.0, 9.0}) == neg_inf);

  // true mode masses from the standard normal CDF
  const double m1 = norm_cdf(-1.25), m2 = norm_cdf(-1.75);
  CHECK(m1 == Catch::Approx(0.10564977366685535).epsilon(1e-12));
  CHECK(m2 == Catch::Approx(0.040059156863817086).epsilon(1e-12));
  CHECK(m1 / (m1 + m2) == Catch::Approx(0.7250741137285032).epsilon(1e-10));
}

TEST_CASE("oscillator eigenfrequencies against the brute-force oracle") {
  const OscillatorSpec spec;

  // frozen from an independent characteristic-polynomial root scan
  const auto [f1, f2] = eigenfrequencies(spec, {1.0, 1.0});
  CHECK(f1 == Catch::Approx(4.206223775682).epsilon(1e-10));
  CHECK(f2 == Catch::Approx(10.952774091922).epsilon(1e-10));

  const auto [g1, g2] = eigenfrequencies(spec, {1.3, 0.8});
  CHECK(g1 == Catch::Approx(4.411580625613).epsilon(1e-10));
  CHECK(g2 == Catch::Approx(10.649738719956).epsilon(1e-10));

  RandomStream rng(12);
  for (int i = 0; i < 200; ++i) {
    const Point x{rng.uniform(0.05, 4.0), rng.uniform(0.05, 4.0)};
    const auto [a, b] = eigenfrequencies(spec, x);
    CHECK(a < b);
    const double c = rng.uniform(0.2, 5.0);
    const auto [ca, cb] = eigenfrequencies(spec, {c * x[0], c * x[1]});
    CHECK(ca == Catch::Approx(std::sqrt(c) * a).epsilon(1e-12));
    CHECK(cb == Catch::Approx(std::sqrt(c) * b).epsilon(1e-12));
  }

  CHECK_THROWS_AS(eigenfrequencies(spec, {-1.0, 1.0}), NonPhysical);
}

TEST_CASE("oscillator misfit vanishes where frequencies match exactly") {
  const OscillatorSpec spec;
  // stiffness pairs solving f_hat = f_measured: quadratic in k2 derived from
  // the invariants k1 k2 = m1 m2 l1 l2 and k1 m2 + k2 (m1+m2) = m1 m2 (l1+l2)
  const double l1 = sq(2.0 * pi * spec.f_measured_1);
  const double l2 = sq(2.0 * pi * spec.f_measured_2);
  const double s = spec.m1 * spec.m2 * (l1 + l2);
  const double p = spec.m1 * spec.m2 * l1 * l2;
  const double a = spec.m1 + spec.m2;
  const double disc = std::sqrt(s * s - 4.0 * a * spec.m2 * p);
  for (const double k2 : {(s + disc) / (2.0 * a), (s - disc) / (2.0 * a)}) {
    const double k1 = (s - k2 * a) / spec.m2;
    const Point x{k1 / spec.k0, k2 / spec.k0};
    REQUIRE(x[0] > 0.0);
    REQUIRE(x[1] > 0.0);
    CHECK(oscillator_misfit(spec, x) == Catch::Approx(0.0).margin(1e-18));
    const auto target = make_oscillator(spec);
    CHECK(target.log_transform(x) == Catch::Approx(0.0).margin(1e-16));
  }
  CHECK(spec.sigma_eps == Catch::Approx(1.0 / 16.0));
}

TEST_CASE("lognormal prior parameters reproduce mode and spread") {
  // frozen from an independent bisection solve of the two moment equations
  const auto [mu1, s1] = lognormal_from_mode_sd(1.3, 1.0);
  CHECK(mu1 == Catch::Approx(0.510236734833878).epsilon(1e-9));
  CHECK(s1 == Catch::Approx(0.497867924620965).epsilon(1e-9));
  const auto [mu2, s2] = lognormal_from_mode_sd(0.8, 1.0);
  CHECK(mu2 == Catch::Approx(0.169577686173127).epsilon(1e-9));
  CHECK(s2 == Catch::Approx(0.626674746170082).epsilon(1e-9));

  // numeric mode by golden-section search on the lognormal density
  auto logpdf = [mu1 = mu1, s1 = s1](double x) {
    const double z = (std::log(x) - mu1) / s1;
    return -0.5 * z * z - std::log(x * s1);
  };
  double lo = 0.5, hi = 2.5;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-9) {
    const double a = hi - gr * (hi - lo);
    const double b = lo + gr * (hi - lo);
    if (logpdf(a) < logpdf(b))
      lo = a;
    else
      hi = b;
  }
  CHECK(0.5 * (lo + hi) == Catch::Approx(1.3).margin(1e-6));

  // standard deviation via the lognormal variance identity
  const double var1 = std::expm1(s1 * s1) * std::exp(2.0 * mu1 + s1 * s1);
  CHECK(std::sqrt(var1) == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("oscillator target composition and support") {
  const auto target = make_oscillator();
  CHECK(target.log_target({-0.5, 1.0}) == neg_inf);
  CHECK(target.log_target({1.0, -1.0}) == neg_inf);
  const Point x{1.1, 0.9};
  CHECK(target.log_target(x) ==
        Catch::Approx(target.log_transform(x) +
                      target.parent().log_density(x)));
  CHECK(target.parent().rtf_class() == RtfClass::monotone_radial_conditional);
  CHECK(target.parent().anchor()[0] == Catch::Approx(1.3));
  CHECK(target.parent().anchor()[1] == Catch::Approx(0.8));
}

TEST_CASE("target lookup by name") {
  CHECK(target_by_name("gauss-ring").name() == "gauss-ring");
  CHECK(target_by_name("rosenbrock-circles").name() == "rosenbrock-circles");
  CHECK(target_by_name("oscillator").dimension() == 2);
  CHECK(target_by_name("gauss-planes-d10").dimension() == 10);
  CHECK(target_by_name("gauss-planes").dimension() == 2);
  CHECK_THROWS_AS(target_by_name("nonexistent"), ConfigError);
}

TEST_CASE("evaluation counter increments once per call") {
  const auto target = make_case(2);
  target.reset_evaluation_count();
  RandomStream rng(3);
  for (int i = 0; i < 57; ++i)
    (void)target.log_target({rng.normal(), rng.normal()});
  CHECK(target.evaluation_count() == 57);
  const auto forked = target.fork();
  CHECK(forked.evaluation_count() == 0);
  (void)forked.log_target({0.0, 0.0});
  CHECK(forked.evaluation_count() == 1);
  CHECK(target.evaluation_count() == 57);
}
