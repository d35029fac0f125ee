// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "intrepid/rng.hpp"

using namespace intrepid;

TEST_CASE("normal quantile matches reference values") {
  CHECK(norm_quantile(0.5) == Catch::Approx(0.0).margin(1e-15));
  CHECK(norm_quantile(0.975) == Catch::Approx(1.959963984540054));
  CHECK(norm_quantile(0.0013498980316300933) == Catch::Approx(-3.0));
  CHECK(norm_quantile(1e-10) == Catch::Approx(-6.361340902404056));
  // cdf/quantile round trip
  for (double p : {1e-8, 1e-4, 0.1, 0.3, 0.5, 0.77, 0.999, 1.0 - 1e-9})
    CHECK(norm_cdf(norm_quantile(p)) == Catch::Approx(p).epsilon(1e-12));
}

TEST_CASE("streams are deterministic and splittable") {
  RandomStream a(123), b(123);
  for (int i = 0; i < 100; ++i) REQUIRE(a.raw() == b.raw());

  CHECK(derive_seed(1, {0, 1, 2}) == derive_seed(1, {0, 1, 2}));
  CHECK(derive_seed(1, {0, 1, 2}) != derive_seed(1, {0, 2, 1}));
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
}

TEST_CASE("uniform and normal draws have the expected moments") {
  RandomStream rng(99);
  const int n = 1000000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(su / n == Catch::Approx(0.5).margin(0.002));
  CHECK(sn / n == Catch::Approx(0.0).margin(0.004));
  CHECK(sn2 / n == Catch::Approx(1.0).margin(0.01));

  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform_open();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}
