// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "intrepid/geometry.hpp"
#include "intrepid/rng.hpp"

using namespace intrepid;

TEST_CASE("hyperspherical coordinates of axis-aligned points") {
  const Point origin{0.0, 0.0};

  auto v = to_hyperspherical({1.0, 0.0}, origin);
  CHECK(v.r == Catch::Approx(1.0));
  CHECK(v.angles[0] == Catch::Approx(0.0).margin(1e-12));

  v = to_hyperspherical({0.0, 2.0}, origin);
  CHECK(v.r == Catch::Approx(2.0));
  CHECK(v.angles[0] == Catch::Approx(pi / 2));

  v = to_hyperspherical({0.0, 0.0, 1.0}, {0.0, 0.0, 0.0});
  CHECK(v.r == Catch::Approx(1.0));
  CHECK(v.angles[0] == Catch::Approx(pi / 2));
  CHECK(v.angles[1] == Catch::Approx(pi / 2));
}

TEST_CASE("cartesian reconstruction") {
  Point x = to_cartesian({1.0, {pi}}, {0.0, 0.0});
  CHECK(x[0] == Catch::Approx(-1.0));
  CHECK(x[1] == Catch::Approx(0.0).margin(1e-12));

  x = to_cartesian({0.0, {1.234}}, {3.0, 4.0});
  CHECK(x[0] == Catch::Approx(3.0));
  CHECK(x[1] == Catch::Approx(4.0));

  x = to_cartesian({2.0, {pi / 2, 0.0}}, {0.0, 0.0, 0.0});
  CHECK(x[0] == Catch::Approx(0.0).margin(1e-12));
  CHECK(x[1] == Catch::Approx(2.0));
  CHECK(x[2] == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("volume-element log factor") {
  // d=2: the sine exponent vanishes, leaving (d-1) ln r
  CHECK(log_volume_jacobian({2.0, {0.37}}) == Catch::Approx(std::log(2.0)));
  // d=3 at theta_1 = pi/2: ln 1 + ln sin(pi/2) = 0
  CHECK(log_volume_jacobian({1.0, {pi / 2, 1.0}}) ==
        Catch::Approx(0.0).margin(1e-15));
  // d=3, r=2, theta_1=pi/6: 2 ln 2 + ln(1/2) = ln 2
  CHECK(log_volume_jacobian({2.0, {pi / 6, 1.0}}) ==
        Catch::Approx(std::log(2.0)));
}

TEST_CASE("volume-element errors") {
  CHECK_THROWS_AS(log_volume_jacobian({0.0, {1.0}}), SingularJacobian);
  CHECK_THROWS_AS(log_volume_jacobian({1.0, {0.0, 1.0}}), SingularJacobian);
  CHECK_THROWS_AS(to_hyperspherical({1.0, 1.0}, {1.0, 1.0}), ZeroRadius);
  CHECK_THROWS_AS(to_hyperspherical({1.0, 1.0, 1.0}, {0.0, 0.0}),
                  DimensionMismatch);
}

TEST_CASE("round trip and range invariants") {
  RandomStream rng(42);
  for (std::size_t d : {2u, 3u, 10u, 50u}) {
    Point anchor(d);
    for (auto& a : anchor) a = rng.normal();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      Point x(d);
      for (auto& c : x) c = rng.normal(0.0, 3.0);
      const PolarVector v = to_hyperspherical(x, anchor);
      REQUIRE(v.r > 0.0);
      for (std::size_t j = 0; j + 2 < d; ++j) {
        REQUIRE(v.angles[j] >= 0.0);
        REQUIRE(v.angles[j] <= pi);
      }
      REQUIRE(v.angles[d - 2] >= 0.0);
      REQUIRE(v.angles[d - 2] < 2.0 * pi);
      const Point back = to_cartesian(v, anchor);
      for (std::size_t j = 0; j < d; ++j)
        worst = std::max(worst, std::fabs(back[j] - x[j]));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("jacobian consistency against Monte Carlo volume") {
  // Integrate exp(log_volume_jacobian) over a polar box by quadrature and
  // compare with a Monte Carlo estimate of the Lebesgue volume of its image.
  SECTION("d = 2") {
    const double r0 = 1.0, r1 = 2.0, t0 = 0.5, t1 = 1.5;
    const int nq = 400;
    double quad = 0.0;
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < nq; ++j) {
        const PolarVector v{r0 + (i + 0.5) * (r1 - r0) / nq,
                            {t0 + (j + 0.5) * (t1 - t0) / nq}};
        quad += std::exp(log_volume_jacobian(v));
      }
    quad *= (r1 - r0) * (t1 - t0) / double(nq) / double(nq);

    RandomStream rng(7);
    const std::size_t n = 20000000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const PolarVector v = to_hyperspherical(x, {0.0, 0.0});
      if (v.r >= r0 && v.r < r1 && v.angles[0] >= t0 && v.angles[0] < t1)
        ++hits;
    }
    const double mc = 16.0 * double(hits) / double(n);
    CHECK(std::fabs(quad - mc) / mc < 0.005);
  }
  SECTION("d = 3") {
    const double r0 = 1.0, r1 = 1.5;
    const double a0 = 0.7, a1 = 1.2, b0 = 0.3, b1 = 0.9;
    const int nq = 64;
    double quad = 0.0;
    for (int i = 0; i < nq; ++i)
      for (int j = 0; j < nq; ++j)
        for (int k = 0; k < nq; ++k) {
          const PolarVector v{r0 + (i + 0.5) * (r1 - r0) / nq,
                              {a0 + (j + 0.5) * (a1 - a0) / nq,
                               b0 + (k + 0.5) * (b1 - b0) / nq}};
          quad += std::exp(log_volume_jacobian(v));
        }
    quad *= (r1 - r0) * (a1 - a0) * (b1 - b0) / double(nq * nq * nq);

    RandomStream rng(11);
    const std::size_t n = 20000000;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Point x{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                    rng.uniform(-1.5, 1.5)};
      const PolarVector v = to_hyperspherical(x, {0.0, 0.0, 0.0});
      if (v.r >= r0 && v.r < r1 && v.angles[0] >= a0 && v.angles[0] < a1 &&
          v.angles[1] >= b0 && v.angles[1] < b1)
        ++hits;
    }
    const double mc = 27.0 * double(hits) / double(n);
    CHECK(std::fabs(quad - mc) / mc < 0.005);
  }
}
