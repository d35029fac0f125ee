// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "intrepid/diagnostics.hpp"
#include "intrepid/rng.hpp"

using namespace intrepid;

namespace {

BinnedDistribution two_cell(double m0, double m1, double oor = 0.0) {
  BinnedDistribution b;
  b.grid.edges_a = {0.0, 0.5, 1.0};
  b.grid.edges_b = {0.0, 1.0};
  b.masses = {m0, m1};
  b.out_of_range = oor;
  return b;
}

std::vector<Point> gaussian_cloud(std::size_t n, std::uint64_t seed) {
  RandomStream rng(seed);
  std::vector<Point> out(n);
  for (auto& x : out) x = {rng.normal(), rng.normal()};
  return out;
}

}  // namespace

TEST_CASE("tvd basics") {
  CHECK(tvd(two_cell(0.5, 0.5), two_cell(0.5, 0.5)) == 0.0);
  CHECK(tvd(two_cell(1.0, 0.0), two_cell(0.0, 1.0)) == 1.0);
  CHECK(tvd(two_cell(0.5, 0.5), two_cell(1.0, 0.0)) == Catch::Approx(0.5));
  CHECK(tvd(two_cell(0.6, 0.4), two_cell(0.6, 0.0, 0.4)) ==
        Catch::Approx(0.4));

  auto other = two_cell(0.5, 0.5);
  other.grid.edges_a = {0.0, 0.4, 1.0};
  CHECK_THROWS_AS(tvd(two_cell(0.5, 0.5), other), GridMismatch);
}

TEST_CASE("tvd is a metric on a fixed grid and shrinks with sample size") {
  const auto ref = gaussian_cloud(100000, 1);
  const auto grid = make_reference_grid(ref, 0, 1, 30);

  RandomStream rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = bin_samples(grid, gaussian_cloud(2000, rng.raw()));
    const auto b = bin_samples(grid, gaussian_cloud(2000, rng.raw()));
    const auto c = bin_samples(grid, gaussian_cloud(2000, rng.raw()));
    CHECK(tvd(a, b) == Catch::Approx(tvd(b, a)));
    CHECK(tvd(a, c) <= tvd(a, b) + tvd(b, c) + 1e-15);
  }

  const auto reference = bin_samples(grid, ref);
  double prev = 1.0;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    const double t =
        tvd(bin_samples(grid, gaussian_cloud(n, 77 + n)), reference);
    CHECK(t < prev);
    prev = t;
  }
}

TEST_CASE("moment errors") {
  const std::vector<std::vector<double>> ref_cov1{{4.0}};
  CHECK(mean_error(std::vector<Point>{{1.0}, {1.0}}, {0.0}, ref_cov1) ==
        Catch::Approx(0.5));
  CHECK(mean_error(std::vector<Point>{{3.0}, {5.0}}, {4.0}, ref_cov1) ==
        Catch::Approx(0.0).margin(1e-15));

  // 1-D samples with variance 2 against reference variance 1
  std::vector<Point> v;
  RandomStream rng(4);
  MomentAccumulator acc(1);
  for (int i = 0; i < 200000; ++i) {
    v.push_back({std::sqrt(2.0) * rng.normal()});
    acc.add(v.back());
  }
  CHECK(cov_error(v, {{1.0}}) == Catch::Approx(1.0).margin(0.02));

  const std::vector<std::vector<double>> eye2{{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<std::vector<double>> diag12{{1.0, 0.0}, {0.0, 2.0}};
  CHECK(cov_error_from_matrix(diag12, eye2) ==
        Catch::Approx(1.0 / std::sqrt(2.0)));
  CHECK(cov_error_from_matrix(eye2, eye2) == 0.0);

  CHECK_THROWS_AS(mean_error(std::vector<Point>{}, {0.0}, ref_cov1),
                  EmptySample);
}

TEST_CASE("moment errors are invariant to sample order") {
  auto samples = gaussian_cloud(5000, 11);
  const std::vector<std::vector<double>> ref{{1.0, 0.1}, {0.1, 1.0}};
  const double me1 = mean_error(samples, {0.0, 0.0}, ref);
  const double ce1 = cov_error(samples, ref);
  std::reverse(samples.begin(), samples.end());
  CHECK(mean_error(samples, {0.0, 0.0}, ref) ==
        Catch::Approx(me1).epsilon(1e-10));
  CHECK(cov_error(samples, ref) == Catch::Approx(ce1).epsilon(1e-10));
}

TEST_CASE("welford merge agrees with bulk accumulation") {
  const auto cloud = gaussian_cloud(4000, 21);
  MomentAccumulator all(2), left(2), right(2);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    all.add(cloud[i]);
    (i < 1500 ? left : right).add(cloud[i]);
  }
  left.merge(right);
  CHECK(left.count() == all.count());
  for (int i = 0; i < 2; ++i) {
    CHECK(left.mean()[i] == Catch::Approx(all.mean()[i]).margin(1e-12));
    for (int j = 0; j < 2; ++j)
      CHECK(left.covariance()[i][j] ==
            Catch::Approx(all.covariance()[i][j]).margin(1e-12));
  }
}

TEST_CASE("lag correlations") {
  std::vector<Point> iid = gaussian_cloud(10000, 31);
  const auto rho0 = lag_correlation(iid, 0);
  CHECK(rho0[0] == Catch::Approx(1.0));
  CHECK(rho0[1] == Catch::Approx(1.0));

  const auto rho1 = lag_correlation(iid, 1);
  CHECK(std::fabs(rho1[0]) < 3.0 / std::sqrt(10000.0));
  CHECK(std::fabs(rho1[1]) < 3.0 / std::sqrt(10000.0));

  std::vector<Point> constant(100, Point{1.0, 2.0});
  CHECK_THROWS_AS(lag_correlation(constant, 5), DegenerateVariance);
}

TEST_CASE("ensemble tvd") {
  const auto ref = gaussian_cloud(50000, 41);
  const auto grid = make_reference_grid(ref, 0, 1, 30);
  const auto reference = bin_samples(grid, ref);

  // chains whose first state is IID from the reference law
  std::vector<ChainRecord> chains(5000);
  RandomStream rng(42);
  for (auto& c : chains) c.states = {{rng.normal(), rng.normal()}};
  const double at0 = ensemble_tvd(chains, 0, reference);

  const double baseline =
      tvd(bin_samples(grid, gaussian_cloud(5000, 43)), reference);
  CHECK(at0 < 1.5 * baseline);

  // all chains collapsed onto one point
  for (auto& c : chains) c.states = {{0.01, 0.01}};
  const auto collapsed = bin_samples(grid, std::vector<Point>{{0.01, 0.01}});
  double cell_mass = 0.0;
  for (std::size_t i = 0; i < collapsed.masses.size(); ++i)
    if (collapsed.masses[i] > 0.0) cell_mass = reference.masses[i];
  CHECK(ensemble_tvd(chains, 0, reference) ==
        Catch::Approx(1.0 - cell_mass).margin(1e-12));
}

TEST_CASE("mode occupancy") {
  std::vector<std::function<bool(const Point&)>> regions{
      [](const Point& x) { return x[0] >= 1.25; },
      [](const Point& x) { return x[0] <= -1.75; }};
  std::vector<Point> all_right(50, Point{2.0, 0.0});
  const auto occ = mode_occupancy(all_right, regions);
  CHECK(occ[0] == 1.0);
  CHECK(occ[1] == 0.0);

  const auto empty = mode_occupancy({}, regions);
  CHECK(empty[0] == 0.0);
  CHECK(empty[1] == 0.0);
}

TEST_CASE("pairwise grids for higher dimensions") {
  CHECK(tvd_dimension_pairs(2).size() == 1);
  CHECK(tvd_dimension_pairs(5).size() == 10);
  CHECK(tvd_dimension_pairs(10).size() == 10);  // capped
}

TEST_CASE("report serialization") {
  DiagnosticsReport r;
  r.tvd = 0.25;
  r.mean_error = 0.1;
  r.acceptance_total = 0.6;
  r.target_evals = 1234;
  r.lag_correlations[10] = {0.5, 0.4};
  r.mode_occupancy = {0.7, 0.3};
  const auto j = report_to_json(r);
  CHECK(j["tvd"] == 0.25);
  CHECK(j["lag_correlations"]["10"][1] == 0.4);
  const auto rows = report_csv_rows(3, r);
  CHECK(rows[0] == "3,tvd,0.25");
}
