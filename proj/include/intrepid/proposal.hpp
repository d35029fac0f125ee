// SPDX-License-Identifier: Apache-2.0
//! \file proposal.hpp  Angular, radial, and component-wise proposal families.

#pragma once

#include <cmath>
#include <vector>

#include "intrepid/common.hpp"
#include "intrepid/rng.hpp"

namespace intrepid {

// ---------------------------------------------------------------------------
// Angular proposals  q_j(phi | theta_j), supported on [-theta, L - theta]
// so that theta + phi stays in the valid range of length L (pi for the
// first d-2 angular indices, 2pi for the last one).
// ---------------------------------------------------------------------------

enum class AngularKind { uniform, truncated_normal };

class AngularProposal {
 public:
  static AngularProposal uniform_range(double range_length) {
    return AngularProposal(AngularKind::uniform, 1.0, range_length, 0.0);
  }

  /// Truncated normal on [-theta, range - theta]. A nonzero mean breaks the
  /// reversal symmetry; it exists for symmetry-audit purposes.
  static AngularProposal truncated_normal(double sigma, double range_length,
                                          double mean = 0.0) {
    if (!(sigma > 0.0)) throw ConfigError("angular sigma must be positive");
    return AngularProposal(AngularKind::truncated_normal, sigma, range_length,
                           mean);
  }

  AngularKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double range_length() const { return range_; }

  /// Draws phi ~ q(phi | theta_current). theta_current + phi always lies in
  /// [0, range_length] by construction of the truncated support.
  double sample(double theta_current, RandomStream& rng) const {
    const double lo = -theta_current;
    const double hi = range_ - theta_current;
    if (kind_ == AngularKind::uniform) return rng.uniform(lo, hi);
    const double fa = norm_cdf((lo - mean_) / sigma_);
    const double fb = norm_cdf((hi - mean_) / sigma_);
    const double u = rng.uniform_open();
    return mean_ + sigma_ * norm_quantile(fa + u * (fb - fa));
  }

  double log_density(double phi, double theta_current) const {
    const double lo = -theta_current;
    const double hi = range_ - theta_current;
    if (phi < lo || phi > hi) return neg_inf;
    if (kind_ == AngularKind::uniform) return -std::log(range_);
    const double fa = norm_cdf((lo - mean_) / sigma_);
    const double fb = norm_cdf((hi - mean_) / sigma_);
    return log_norm_pdf((phi - mean_) / sigma_) - std::log(sigma_) -
           std::log(fb - fa);
  }

  double density(double phi, double theta_current) const {
    return std::exp(log_density(phi, theta_current));
  }

 private:
  AngularProposal(AngularKind k, double sigma, double range, double mean)
      : kind_(k), sigma_(sigma), range_(range), mean_(mean) {
    if (!(range > 0.0)) throw ConfigError("angular range must be positive");
  }

  AngularKind kind_;
  double sigma_;
  double range_;
  double mean_;
};

/// Checks the reversal symmetry q(-phi | theta_c) = q(phi | theta_s) with
/// theta_c = theta_s + phi on randomly sampled pairs.
inline bool verify_angular_symmetry(const AngularProposal& p,
                                    std::size_t n_pairs = 1000,
                                    double tol = 1e-10,
                                    std::uint64_t seed = 0x5ca1ab1e) {
  RandomStream rng(seed);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    const double theta_s = rng.uniform(0.0, p.range_length());
    const double phi = p.sample(theta_s, rng);
    const double theta_c = theta_s + phi;
    if (std::fabs(p.density(-phi, theta_c) - p.density(phi, theta_s)) > tol)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Radial proposals  q_r(gamma) on [1/gamma0, gamma0]
// ---------------------------------------------------------------------------

enum class RadialKind { uniform_symmetric, power_law };

class RadialProposal {
 public:
  static RadialProposal uniform_symmetric(double gamma0) {
    return RadialProposal(RadialKind::uniform_symmetric, gamma0, 0.0);
  }

  /// Density proportional to gamma^(k/2) on [1/gamma0, gamma0]; satisfies
  /// q(gamma) = gamma^k q(1/gamma). k = -2 is excluded (normalization
  /// degenerates).
  static RadialProposal power_law(double gamma0, double k) {
    if (k == -2.0) throw ConfigError("power-law exponent k = -2 unsupported");
    return RadialProposal(RadialKind::power_law, gamma0, k);
  }

  RadialKind kind() const { return kind_; }
  double gamma0() const { return gamma0_; }

  /// Exponent k in the symmetry relation q(gamma) = gamma^k q(1/gamma).
  double symmetry_exponent() const {
    return kind_ == RadialKind::uniform_symmetric ? 0.0 : k_;
  }

  double support_lo() const { return 1.0 / gamma0_; }
  double support_hi() const { return gamma0_; }

  double sample(RandomStream& rng) const {
    if (kind_ == RadialKind::uniform_symmetric)
      return rng.uniform(support_lo(), support_hi());
    // inverse CDF of c * gamma^(k/2): F(g) = c (g^m - g0^-m) / m, m=(k+2)/2
    const double m = 0.5 * (k_ + 2.0);
    const double c = normalization();
    const double u = rng.uniform();
    return std::pow(u * m / c + std::pow(gamma0_, -m), 1.0 / m);
  }

  double log_density(double gamma) const {
    if (gamma < support_lo() || gamma > support_hi()) return neg_inf;
    if (kind_ == RadialKind::uniform_symmetric)
      return -std::log(gamma0_ - 1.0 / gamma0_);
    return std::log(normalization()) + 0.5 * k_ * std::log(gamma);
  }

  double density(double gamma) const { return std::exp(log_density(gamma)); }

 private:
  RadialProposal(RadialKind kind, double gamma0, double k)
      : kind_(kind), gamma0_(gamma0), k_(k) {
    if (!(gamma0 > 1.0)) throw ConfigError("gamma0 must exceed 1");
  }

  double normalization() const {
    const double m = 0.5 * (k_ + 2.0);
    return (k_ + 2.0) * std::pow(gamma0_, m) /
           (2.0 * (std::pow(gamma0_, k_ + 2.0) - 1.0));
  }

  RadialKind kind_;
  double gamma0_;
  double k_;
};

/// Estimates the exponent k in q(gamma) = gamma^k q(1/gamma) from sampled
/// points; returns the worst-case |k_hat - stated| over the draws.
inline double radial_symmetry_discrepancy(const RadialProposal& p,
                                          std::size_t n = 1000,
                                          std::uint64_t seed = 0xd1a1) {
  RandomStream rng(seed);
  const double k = p.symmetry_exponent();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double g = rng.uniform(p.support_lo(), p.support_hi());
    if (std::fabs(std::log(g)) < 1e-3) continue;  // k is unidentified at 1
    const double k_hat =
        (p.log_density(g) - p.log_density(1.0 / g)) / std::log(g);
    worst = std::max(worst, std::fabs(k_hat - k));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Component-wise Gaussian proposals for the local kernel
// ---------------------------------------------------------------------------

class ComponentProposal {
 public:
  explicit ComponentProposal(std::vector<double> sigmas)
      : sigmas_(std::move(sigmas)) {
    for (double s : sigmas_)
      if (!(s > 0.0)) throw ConfigError("component scales must be positive");
  }

  static ComponentProposal isotropic(std::size_t d, double sigma) {
    return ComponentProposal(std::vector<double>(d, sigma));
  }

  std::size_t dimension() const { return sigmas_.size(); }
  double sigma(std::size_t i) const { return sigmas_[i]; }

  double sample(std::size_t i, double x_i, RandomStream& rng) const {
    return rng.normal(x_i, sigmas_[i]);
  }

  double log_density(std::size_t i, double y, double x_i) const {
    return log_norm_pdf((y - x_i) / sigmas_[i]) - std::log(sigmas_[i]);
  }

 private:
  std::vector<double> sigmas_;
};

}  // namespace intrepid
