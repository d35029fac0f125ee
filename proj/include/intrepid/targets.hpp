// SPDX-License-Identifier: Apache-2.0
//! \file targets.hpp  Benchmark target battery: nine 2-D indicator/density
//! compositions, the d-dimensional Gauss-Planes family, and the Bayesian
//! 2-DOF oscillator posterior.

#pragma once

#include <cmath>
#include <memory>
#include <string>

#include "intrepid/target.hpp"

namespace intrepid {

// ---------------------------------------------------------------------------
// Indicator functions I1..I6 (Iverson brackets on R^2)
// ---------------------------------------------------------------------------

inline bool indicator(int which, const Point& x) {
  const double x1 = x[0], x2 = x[1];
  switch (which) {
    case 1:
      return std::min(1.25 - x1, 1.75 + x1) <= 0.0;
    case 2:
      return std::min(4.0 - 0.8 * x2 - x1, 2.0 + 0.8 * x2 + x1) <= 0.0;
    case 3:
      return std::min(2.5 - x1, 2.5 + x1) <= 0.0;
    case 4:
      return 4.0 - std::sqrt(x1 * x1 + x2 * x2) <= 0.0;
    case 5:
      return 16.0 - x1 * x1 - sq((x2 - 2.8) / 1.7) <= 0.0;
    case 6: {
      static const double th[3] = {3.0 * pi / 8.0, 5.0 * pi / 8.0,
                                   15.0 * pi / 8.0};
      static const double rad[3] = {0.8, 1.2, 1.6};
      for (int i = 0; i < 3; ++i) {
        const double dx = x1 - 4.0 * std::cos(th[i]);
        const double dy = x2 - 4.0 * std::sin(th[i]);
        if (dx * dx + dy * dy - rad[i] * rad[i] <= 0.0) return true;
      }
      return false;
    }
    default:
      throw ConfigError("indicator index must be 1..6");
  }
}

// ---------------------------------------------------------------------------
// Density factors f1 (Gaussian), f2 (Gumbel), f3 (Rosenbrock), unnormalized
// ---------------------------------------------------------------------------

inline double log_density_f(int which, const Point& x) {
  const double x1 = x[0], x2 = x[1];
  switch (which) {
    case 1:
      return -0.5 * (x1 * x1 + x2 * x2);
    case 2:
      return -(x1 + x2 + std::exp(-x1) + std::exp(-x2));
    case 3:
      return -(sq(1.0 - x1) + 5.0 * sq(x2 - x1 * x1)) / 20.0;
    default:
      throw ConfigError("density index must be 1..3");
  }
}

inline double density_f(int which, const Point& x) {
  return std::exp(log_density_f(which, x));
}

// ---------------------------------------------------------------------------
// The nine 2-D cases of the shape study. The parent is always the Gaussian
// f1 (radially symmetric, anchor at the origin); T carries the indicator and,
// for cases 4..9, the density ratio f_row/f1 evaluated in log space.
// ---------------------------------------------------------------------------

inline TargetModel make_case(int n) {
  struct Row {
    const char* name;
    int ind;
    int dens;
  };
  static const Row rows[9] = {
      {"gauss-ring", 4, 1},        {"gauss-planes", 1, 1},
      {"gauss-circles", 6, 1},     {"gumbel-ring", 4, 2},
      {"gumbel-planes", 2, 2},     {"gumbel-circles", 6, 2},
      {"rosenbrock-ring", 5, 3},   {"rosenbrock-planes", 3, 3},
      {"rosenbrock-circles", 6, 3}};
  if (n < 1 || n > 9) throw ConfigError("case index must be 1..9");
  const Row row = rows[n - 1];

  auto parent = std::make_shared<ParentModel>(ParentModel::radially_symmetric(
      [](const Point& x) { return log_density_f(1, x); }, Point{0.0, 0.0}));
  parent->set_sampler(
      [](RandomStream& rng) { return Point{rng.normal(), rng.normal()}; });

  TargetModel::LogTransformFn transform;
  if (row.dens == 1) {
    const int ind = row.ind;
    transform = [ind](const Point& x) {
      return indicator(ind, x) ? 0.0 : neg_inf;
    };
  } else {
    const int ind = row.ind, dens = row.dens;
    transform = [ind, dens](const Point& x) {
      if (!indicator(ind, x)) return neg_inf;
      return log_density_f(dens, x) - log_density_f(1, x);
    };
  }
  return TargetModel(row.name, parent, std::move(transform));
}

/// d-dimensional Gauss-Planes: pi(x) = I1(x1) * phi_d(x), with a standard
/// Gaussian parent anchored at the origin (identity RTF).
inline TargetModel make_gauss_planes(std::size_t d) {
  if (d < 2) throw ConfigError("dimension must be >= 2");
  const double log_norm = -0.5 * double(d) * std::log(2.0 * pi);
  auto parent = std::make_shared<ParentModel>(ParentModel::radially_symmetric(
      [log_norm](const Point& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return log_norm - 0.5 * s;
      },
      Point(d, 0.0)));
  parent->set_sampler([d](RandomStream& rng) {
    Point x(d);
    for (auto& v : x) v = rng.normal();
    return x;
  });
  std::string name = d == 2 ? "gauss-planes" : "gauss-planes-d" +
                                                   std::to_string(d);
  return TargetModel(name, parent, [](const Point& x) {
    return std::min(1.25 - x[0], 1.75 + x[0]) <= 0.0 ? 0.0 : neg_inf;
  });
}

// ---------------------------------------------------------------------------
// Bayesian 2-DOF shear-building oscillator
// ---------------------------------------------------------------------------

struct OscillatorSpec {
  double m1 = 16.531e3;        // kg
  double m2 = 16.131e3;        // kg
  double k0 = 29.7e6;          // N/m
  double f_measured_1 = 3.13;  // Hz
  double f_measured_2 = 9.83;  // Hz
  double sigma_eps = 1.0 / 16.0;
  double prior_mode_1 = 1.3;
  double prior_mode_2 = 0.8;
  double prior_sd = 1.0;
};

/// Lognormal (mu, sigma) with a given mode and standard deviation, solved
/// from mode = exp(mu - sigma^2) and the lognormal variance identity.
inline std::pair<double, double> lognormal_from_mode_sd(double mode,
                                                        double sd) {
  // t = sigma^2 solves  mode^2 (e^t - 1) e^{3t} = sd^2; increasing in t
  auto g = [&](double t) {
    return mode * mode * std::expm1(t) * std::exp(3.0 * t) - sd * sd;
  };
  double lo = 0.0, hi = 1.0;
  while (g(hi) < 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo < 1e-10 * std::max(hi, 1.0)) break;
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  const double t = 0.5 * (lo + hi);
  return {std::log(mode) + t, std::sqrt(t)};
}

/// Eigenfrequencies (Hz, ascending) of the 2-DOF shear chain with
/// K = [[k1+k2, -k2], [-k2, k2]], M = diag(m1, m2), k_i = k0 x_i.
/// Closed-form roots of the quadratic in omega^2.
inline std::pair<double, double> eigenfrequencies(const OscillatorSpec& spec,
                                                  const Point& x) {
  if (!(x[0] > 0.0 && x[1] > 0.0))
    throw NonPhysical("stiffness parameters must be positive");
  const double k1 = spec.k0 * x[0];
  const double k2 = spec.k0 * x[1];
  const double a = spec.m1 * spec.m2;
  const double b = (k1 + k2) * spec.m2 + k2 * spec.m1;
  const double c = k1 * k2;
  const double disc = std::sqrt(b * b - 4.0 * a * c);
  const double lam_hi = (b + disc) / (2.0 * a);
  const double lam_lo = c / (a * lam_hi);  // product of roots = c/a
  const double two_pi = 2.0 * pi;
  return {std::sqrt(lam_lo) / two_pi, std::sqrt(lam_hi) / two_pi};
}

/// Modal measure-of-fit J(x) built from squared-frequency ratios.
inline double oscillator_misfit(const OscillatorSpec& spec, const Point& x) {
  const auto [f1, f2] = eigenfrequencies(spec, x);
  return sq(sq(f1 / spec.f_measured_1) - 1.0) +
         sq(sq(f2 / spec.f_measured_2) - 1.0);
}

inline TargetModel make_oscillator(const OscillatorSpec& spec = {}) {
  const auto [mu1, s1] =
      lognormal_from_mode_sd(spec.prior_mode_1, spec.prior_sd);
  const auto [mu2, s2] =
      lognormal_from_mode_sd(spec.prior_mode_2, spec.prior_sd);

  auto log_prior = [mu1, s1, mu2, s2](const Point& x) {
    if (!(x[0] > 0.0 && x[1] > 0.0)) return neg_inf;
    const double z1 = (std::log(x[0]) - mu1) / s1;
    const double z2 = (std::log(x[1]) - mu2) / s2;
    return log_norm_pdf(z1) - std::log(s1 * x[0]) + log_norm_pdf(z2) -
           std::log(s2 * x[1]);
  };

  auto parent = std::make_shared<ParentModel>(ParentModel::unimodal(
      log_prior, Point{spec.prior_mode_1, spec.prior_mode_2}));
  parent->set_sampler([mu1, s1, mu2, s2](RandomStream& rng) {
    return Point{std::exp(mu1 + s1 * rng.normal()),
                 std::exp(mu2 + s2 * rng.normal())};
  });

  // Gaussian likelihood in the modal misfit: ln L = -J / (2 sigma_eps^2).
  return TargetModel("oscillator", parent, [spec](const Point& x) {
    if (!(x[0] > 0.0 && x[1] > 0.0)) return neg_inf;
    return -oscillator_misfit(spec, x) / (2.0 * sq(spec.sigma_eps));
  });
}

/// Target lookup by the names used in campaign configs: the nine case names,
/// "oscillator", and "gauss-planes-d<N>".
inline TargetModel target_by_name(const std::string& name) {
  static const char* case_names[9] = {
      "gauss-ring",      "gauss-planes",      "gauss-circles",
      "gumbel-ring",     "gumbel-planes",     "gumbel-circles",
      "rosenbrock-ring", "rosenbrock-planes", "rosenbrock-circles"};
  for (int i = 0; i < 9; ++i)
    if (name == case_names[i]) return make_case(i + 1);
  if (name == "oscillator") return make_oscillator();
  const std::string prefix = "gauss-planes-d";
  if (name.rfind(prefix, 0) == 0) {
    const int d = std::stoi(name.substr(prefix.size()));
    if (d < 2) throw ConfigError("dimension must be >= 2 in " + name);
    return make_gauss_planes(std::size_t(d));
  }
  throw ConfigError("unknown target name: " + name);
}

}  // namespace intrepid
