// SPDX-License-Identifier: Apache-2.0
//! \file oracle.hpp  Ground-truth machinery kept independent of the kernels:
//! rejection sampling from each benchmark target, reference moments,
//! reference-set persistence, and brute-force grid normalization.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "intrepid/diagnostics.hpp"
#include "intrepid/targets.hpp"

namespace intrepid {

struct NonterminatingWarning : Error {
  using Error::Error;
};
struct BoundaryMassWarning : Error {
  using Error::Error;
};

struct ReferenceSet {
  std::vector<Point> samples;
  std::uint64_t seed = 0;
  std::string target_name;
  std::uint64_t proposals = 0;  // rejection-sampler draws consumed
};

// ---------------------------------------------------------------------------
// Rejection sampling
// ---------------------------------------------------------------------------

/// A rejection scheme: proposals from `propose`, accepted with probability
/// exp(log_accept). Exactness requires proposal_density * exp(log_accept)
/// proportional to the target.
struct RejectionScheme {
  std::function<Point(RandomStream&)> propose;
  std::function<double(const Point&)> log_accept;  // must be <= 0
};

inline ReferenceSet run_rejection(const RejectionScheme& scheme,
                                  const std::string& name, std::size_t n,
                                  RandomStream& rng, std::uint64_t seed_tag) {
  ReferenceSet set;
  set.target_name = name;
  set.seed = seed_tag;
  set.samples.reserve(n);
  while (set.samples.size() < n) {
    ++set.proposals;
    Point x = scheme.propose(rng);
    const double la = scheme.log_accept(x);
    if (la > 1e-12)
      throw BoundViolation("acceptance ratio above the stated bound at a "
                           "proposed point");
    if (std::log(rng.uniform()) < la) set.samples.push_back(std::move(x));
    if (set.proposals >= 1000000 &&
        double(set.samples.size()) < 1e-5 * double(set.proposals))
      throw NonterminatingWarning("rejection acceptance rate below 1e-5");
  }
  return set;
}

/// Plain scheme: draw from the parent, accept with probability T(x)/bound.
inline ReferenceSet rejection_sample(const TargetModel& target, std::size_t n,
                                     double bound, RandomStream& rng,
                                     std::uint64_t seed_tag = 0) {
  if (!target.parent().has_sampler())
    throw Error("parent of " + target.name() + " has no direct sampler");
  const double log_bound = std::log(bound);
  RejectionScheme s;
  s.propose = [&target](RandomStream& r) { return target.parent().sample(r); };
  s.log_accept = [&target, log_bound](const Point& x) {
    return target.log_transform(x) - log_bound;
  };
  return run_rejection(s, target.name(), n, rng, seed_tag);
}

namespace detail {

/// Gaussian radius restricted to [r_lo, r_hi): exact inverse-CDF draw using
/// the exponential law of r^2 for the 2-D standard normal.
inline double truncated_gauss_radius(double r_lo, double r_hi,
                                     RandomStream& rng) {
  const double slo = std::exp(-0.5 * r_lo * r_lo);
  const double shi = std::isinf(r_hi) ? 0.0 : std::exp(-0.5 * r_hi * r_hi);
  const double u = slo + (shi - slo) * rng.uniform_open();
  return std::sqrt(-2.0 * std::log(u));
}

inline Point gumbel_pair(RandomStream& rng) {
  // standard Gumbel by inverse CDF, one per coordinate
  return Point{-std::log(-std::log(rng.uniform_open())),
               -std::log(-std::log(rng.uniform_open()))};
}

inline Point rosenbrock_pair(RandomStream& rng) {
  // x1 ~ N(1, 10), x2 | x1 ~ N(x1^2, 2): exact factorization of the
  // Rosenbrock density exp(-((1-x1)^2 + 5 (x2 - x1^2)^2)/20)
  const double x1 = 1.0 + std::sqrt(10.0) * rng.normal();
  const double x2 = x1 * x1 + std::sqrt(2.0) * rng.normal();
  return Point{x1, x2};
}

}  // namespace detail

/// Per-target rejection scheme. Indicator targets propose from an exact
/// sampler of their density factor and accept on the indicator (bound 1);
/// ring-type Gaussian cases tilt the radial law onto the supporting annulus
/// so the acceptance rate stays workable. The oscillator proposes from its
/// prior and accepts on the likelihood (bounded by 1 since the misfit is
/// nonnegative).
inline RejectionScheme oracle_scheme(const TargetModel& target) {
  const std::string& name = target.name();
  RejectionScheme s;

  auto indicator_accept = [](int which) {
    return [which](const Point& x) {
      return indicator(which, x) ? 0.0 : neg_inf;
    };
  };

  if (name == "gauss-ring") {
    s.propose = [](RandomStream& rng) {
      const double r = detail::truncated_gauss_radius(
          4.0, std::numeric_limits<double>::infinity(), rng);
      const double a = rng.uniform(0.0, 2.0 * pi);
      return Point{r * std::cos(a), r * std::sin(a)};
    };
    s.log_accept = indicator_accept(4);
    return s;
  }
  if (name == "gauss-planes") {
    s.propose = [parent = target.parent_ptr()](RandomStream& rng) {
      return parent->sample(rng);
    };
    s.log_accept = indicator_accept(1);
    return s;
  }
  if (name == "gauss-circles") {
    // all three circles live inside the annulus 2.4 <= r <= 5.6
    s.propose = [](RandomStream& rng) {
      const double r = detail::truncated_gauss_radius(2.4, 5.6, rng);
      const double a = rng.uniform(0.0, 2.0 * pi);
      return Point{r * std::cos(a), r * std::sin(a)};
    };
    s.log_accept = indicator_accept(6);
    return s;
  }
  if (name == "gumbel-ring" || name == "gumbel-planes" ||
      name == "gumbel-circles") {
    const int ind = name == "gumbel-ring" ? 4 : name == "gumbel-planes" ? 2 : 6;
    s.propose = [](RandomStream& rng) { return detail::gumbel_pair(rng); };
    s.log_accept = indicator_accept(ind);
    return s;
  }
  if (name == "rosenbrock-ring" || name == "rosenbrock-planes" ||
      name == "rosenbrock-circles") {
    const int ind = name == "rosenbrock-ring" ? 5
                    : name == "rosenbrock-planes" ? 3
                                                  : 6;
    s.propose = [](RandomStream& rng) { return detail::rosenbrock_pair(rng); };
    s.log_accept = indicator_accept(ind);
    return s;
  }
  if (name.rfind("gauss-planes-d", 0) == 0) {
    s.propose = [parent = target.parent_ptr()](RandomStream& rng) {
      return parent->sample(rng);
    };
    s.log_accept = [](const Point& x) {
      return std::min(1.25 - x[0], 1.75 + x[0]) <= 0.0 ? 0.0 : neg_inf;
    };
    return s;
  }
  if (name == "oscillator") {
    s.propose = [parent = target.parent_ptr()](RandomStream& rng) {
      return parent->sample(rng);
    };
    s.log_accept = [t = target.fork()](const Point& x) {
      return t.log_transform(x);
    };
    return s;
  }
  throw ConfigError("no oracle scheme registered for target " + name);
}

/// Reference set for a benchmark target using its registered scheme.
inline ReferenceSet make_reference(const TargetModel& target, std::size_t n,
                                   std::uint64_t seed) {
  RandomStream rng(derive_seed(seed, {0xe5e7}));
  return run_rejection(oracle_scheme(target), target.name(), n, rng, seed);
}

// ---------------------------------------------------------------------------
// Reference moments
// ---------------------------------------------------------------------------

struct ReferenceMoments {
  Point mean;
  std::vector<std::vector<double>> covariance;
};

inline ReferenceMoments reference_moments(const ReferenceSet& set) {
  if (set.samples.empty()) throw EmptySample("reference set is empty");
  MomentAccumulator acc(set.samples[0].size());
  for (const Point& x : set.samples) acc.add(x);
  return {acc.mean(), acc.covariance()};
}

// ---------------------------------------------------------------------------
// Grid normalization (midpoint rule) for density validation
// ---------------------------------------------------------------------------

struct Box {
  Point lo, hi;
};

struct GridIntegral {
  double value = 0.0;
  double boundary_ratio = 0.0;  // max boundary density / max density
};

/// Midpoint-rule integral of exp(logdensity) over a 2-D box.
inline GridIntegral grid_normalization_detailed(
    const std::function<double(const Point&)>& logdensity, const Box& box,
    std::size_t resolution) {
  const double dx = (box.hi[0] - box.lo[0]) / double(resolution);
  const double dy = (box.hi[1] - box.lo[1]) / double(resolution);
  double sum = 0.0, fmax = 0.0, boundary_max = 0.0;
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x = box.lo[0] + (double(i) + 0.5) * dx;
    for (std::size_t j = 0; j < resolution; ++j) {
      const double y = box.lo[1] + (double(j) + 0.5) * dy;
      const double f = std::exp(logdensity(Point{x, y}));
      sum += f;
      fmax = std::max(fmax, f);
      if (i == 0 || j == 0 || i + 1 == resolution || j + 1 == resolution)
        boundary_max = std::max(boundary_max, f);
    }
  }
  GridIntegral out;
  out.value = sum * dx * dy;
  out.boundary_ratio = fmax > 0.0 ? boundary_max / fmax : 0.0;
  return out;
}

/// Midpoint integral that insists the box captures the density: boundary
/// density must be below 1e-8 of the maximum.
inline double grid_normalization(
    const std::function<double(const Point&)>& logdensity, const Box& box,
    std::size_t resolution) {
  const GridIntegral g = grid_normalization_detailed(logdensity, box,
                                                     resolution);
  if (g.boundary_ratio > 1e-8)
    throw BoundaryMassWarning("density is not negligible at the box boundary");
  return g.value;
}

// ---------------------------------------------------------------------------
// Reference-set persistence: binary columnar samples + JSON sidecar
// ---------------------------------------------------------------------------

inline void save_reference(const ReferenceSet& set, const std::string& path) {
  const std::size_t n = set.samples.size();
  const std::size_t d = n ? set.samples[0].size() : 0;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  const char magic[8] = {'I', 'R', 'E', 'F', 'S', 'E', 'T', '1'};
  out.write(magic, 8);
  const std::uint64_t dims = d, count = n, seed = set.seed;
  out.write(reinterpret_cast<const char*>(&dims), 8);
  out.write(reinterpret_cast<const char*>(&count), 8);
  out.write(reinterpret_cast<const char*>(&seed), 8);
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < n; ++i) column[i] = set.samples[i][j];
    out.write(reinterpret_cast<const char*>(column.data()),
              std::streamsize(n * sizeof(double)));
  }
  if (!out) throw Error("short write to " + path);

  nlohmann::json side{{"target", set.target_name},
                      {"n", n},
                      {"dimension", d},
                      {"seed", set.seed},
                      {"proposals", set.proposals}};
  if (n) {
    const ReferenceMoments m = reference_moments(set);
    side["mean"] = m.mean;
    side["covariance"] = m.covariance;
  }
  std::ofstream sidecar(path + ".json");
  sidecar << side.dump(2) << "\n";
}

inline ReferenceSet load_reference(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::string(magic, 8) != "IREFSET1")
    throw Error(path + " is not a reference-set file");
  std::uint64_t d = 0, n = 0, seed = 0;
  in.read(reinterpret_cast<char*>(&d), 8);
  in.read(reinterpret_cast<char*>(&n), 8);
  in.read(reinterpret_cast<char*>(&seed), 8);
  ReferenceSet set;
  set.seed = seed;
  set.samples.assign(n, Point(d, 0.0));
  std::vector<double> column(n);
  for (std::size_t j = 0; j < d; ++j) {
    in.read(reinterpret_cast<char*>(column.data()),
            std::streamsize(n * sizeof(double)));
    for (std::size_t i = 0; i < n; ++i) set.samples[i][j] = column[i];
  }
  if (!in) throw Error("short read from " + path);
  std::ifstream sidecar(path + ".json");
  if (sidecar) {
    nlohmann::json side = nlohmann::json::parse(sidecar);
    set.target_name = side.value("target", "");
    set.proposals = side.value("proposals", std::uint64_t(0));
  }
  return set;
}

}  // namespace intrepid
