// SPDX-License-Identifier: Apache-2.0
//! \file parent.hpp  Parent-distribution model and the Radial Transformation
//! Function (RTF).
//!
//! The RTF R_{1,2}(r) maps a radius along direction theta_1 to the radius
//! along theta_2 on the same parent-density contour. Four concrete classes
//! are supported:
//!   identity                     radially symmetric parents, R(r) = r
//!   uniform_scaling              uniform parents, R(r) = r lambda_2/lambda_1
//!   monotone_radial_conditional  unimodal parents with convex contours,
//!                                R(r) = Psi_2^{-1}(Psi_1(r))
//!   piecewise_matched            author-supplied matched partitions, with
//!                                monotone intervals inverted numerically and
//!                                uniform intervals mapped linearly
//! plus `none`, in which case kernels fall back to r_c = gamma * r_s.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "intrepid/common.hpp"
#include "intrepid/geometry.hpp"
#include "intrepid/rng.hpp"

namespace intrepid {

enum class RtfClass {
  identity,
  uniform_scaling,
  monotone_radial_conditional,
  piecewise_matched,
  none
};

struct RtfEvaluation {
  double r_out = 0.0;
  double log_derivative = 0.0;  // ln dR/dr at the evaluation point
};

/// Sorted critical radii 0 = rho_0 < rho_1 < ... < rho_m along one direction.
/// Between consecutive radii the radial conditional is monotone or constant;
/// the final interval [rho_m, inf) is monotone.
struct RadialPartition {
  std::vector<double> rho;
};

/// Unit Cartesian vector for a direction given in angular coordinates.
inline Point direction_vector(const Angles& theta) {
  PolarVector v{1.0, theta};
  return to_cartesian(v, Point(theta.size() + 1, 0.0));
}

class ParentModel {
 public:
  using LogDensityFn = std::function<double(const Point&)>;
  using ExtentFn = std::function<double(const Angles&)>;
  using PartitionFn = std::function<RadialPartition(const Angles&)>;
  using SampleFn = std::function<Point(RandomStream&)>;

  static ParentModel radially_symmetric(LogDensityFn f, Point anchor) {
    return ParentModel(std::move(f), std::move(anchor), RtfClass::identity);
  }

  static ParentModel uniform(LogDensityFn f, Point anchor, ExtentFn extent) {
    ParentModel m(std::move(f), std::move(anchor), RtfClass::uniform_scaling);
    m.extent_ = std::move(extent);
    return m;
  }

  static ParentModel unimodal(LogDensityFn f, Point anchor) {
    return ParentModel(std::move(f), std::move(anchor),
                       RtfClass::monotone_radial_conditional);
  }

  /// Piecewise-matched parent. The partition tables must satisfy the matched
  /// conditions (equal counts, equal conditional values at matched critical
  /// radii); this is checked against the reference direction on the supplied
  /// probe directions and the construction refuses on mismatch.
  static ParentModel piecewise_matched(LogDensityFn f, Point anchor,
                                       PartitionFn partition,
                                       const std::vector<Angles>& probes) {
    ParentModel m(std::move(f), std::move(anchor),
                  RtfClass::piecewise_matched);
    m.partition_ = std::move(partition);
    for (const Angles& th : probes)
      m.check_matched(m.reference_direction_, th);
    return m;
  }

  static ParentModel without_rtf(LogDensityFn f, Point anchor) {
    return ParentModel(std::move(f), std::move(anchor), RtfClass::none);
  }

  double log_density(const Point& x) const { return log_density_(x); }
  const Point& anchor() const { return anchor_; }
  std::size_t dimension() const { return anchor_.size(); }
  RtfClass rtf_class() const { return rtf_class_; }

  const Angles& reference_direction() const { return reference_direction_; }
  void set_reference_direction(Angles theta) {
    reference_direction_ = std::move(theta);
  }

  void set_sampler(SampleFn s) { sampler_ = std::move(s); }
  bool has_sampler() const { return bool(sampler_); }
  Point sample(RandomStream& rng) const {
    if (!sampler_) throw Error("parent has no direct sampler");
    return sampler_(rng);
  }

  /// Unnormalized radial conditional Psi_theta(r) = p(anchor + (r, theta)).
  double radial_conditional(const Angles& theta, double r) const {
    return std::exp(log_radial_conditional(theta, r));
  }

  double log_radial_conditional(const Angles& theta, double r) const {
    if (r == 0.0) return log_density_(anchor_);
    PolarVector v{r, theta};
    return log_density_(to_cartesian(v, anchor_));
  }

  /// Supremum radius with positive density along theta (uniform parents).
  double radial_extent(const Angles& theta) const {
    if (rtf_class_ != RtfClass::uniform_scaling)
      throw RtfUnavailable("radial extent requires a uniform-scaling parent");
    return extent_(theta);
  }

  /// Applies the RTF from direction theta_from to theta_to at radius r.
  RtfEvaluation rtf_apply(const Angles& theta_from, const Angles& theta_to,
                          double r) const {
    switch (rtf_class_) {
      case RtfClass::identity:
        return {r, 0.0};
      case RtfClass::uniform_scaling: {
        const double lf = extent_(theta_from);
        const double lt = extent_(theta_to);
        return {r * (lt / lf), std::log(lt / lf)};
      }
      case RtfClass::monotone_radial_conditional:
        return rtf_monotone(theta_from, theta_to, r);
      case RtfClass::piecewise_matched:
        return rtf_piecewise(theta_from, theta_to, r);
      case RtfClass::none:
        throw RtfUnavailable("parent has no radial transformation function");
    }
    throw Error("unreachable");
  }

 private:
  ParentModel(LogDensityFn f, Point anchor, RtfClass cls)
      : log_density_(std::move(f)),
        anchor_(std::move(anchor)),
        rtf_class_(cls) {
    if (anchor_.empty()) throw DimensionMismatch("dimension must be >= 1");
    // default reference direction: +e1 axis
    reference_direction_.assign(anchor_.size() - 1, 0.0);
  }

  // --- monotone radial conditional --------------------------------------

  /// Solves log Psi_theta(r_out) = target on [lo, hi] for a conditional that
  /// is monotone on the bracket. Bisects to floating-point convergence.
  double bisect_log_psi(const Angles& theta, double target, double lo,
                        double hi, bool decreasing) const {
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) return mid;
      const double v = log_radial_conditional(theta, mid);
      const bool go_right = decreasing ? (v > target) : (v < target);
      if (go_right)
        lo = mid;
      else
        hi = mid;
    }
    const double mid = 0.5 * (lo + hi);
    if (hi - lo > 1e-12 * std::max(std::fabs(mid), 1.0))
      throw InversionFailure("radial conditional inversion did not converge");
    return mid;
  }

  /// d(log Psi)/dr by central finite difference, h = 1e-6 max(r, 1).
  double log_psi_slope(const Angles& theta, double r) const {
    const double h = 1e-6 * std::max(r, 1.0);
    const double lo = std::max(r - h, 0.0);
    const double hi = r + h;
    const double flo = log_radial_conditional(theta, lo);
    const double fhi = log_radial_conditional(theta, hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi))
      throw InversionFailure("radial conditional not finite near " +
                             std::to_string(r));
    return (fhi - flo) / (hi - lo);
  }

  RtfEvaluation rtf_monotone(const Angles& theta_from, const Angles& theta_to,
                             double r) const {
    const double target = log_radial_conditional(theta_from, r);
    if (!std::isfinite(target))
      throw InversionFailure("conditional vanishes at the source radius");
    if (r == 0.0) return {0.0, slope_ratio(theta_from, theta_to, 0.0, 0.0)};

    // bracket by doubling: Psi is decreasing from the anchor value
    const double at_anchor = log_radial_conditional(theta_to, 0.0);
    if (target > at_anchor)
      throw InversionFailure("target level exceeds the anchor density");
    double hi = r;
    int it = 0;
    while (log_radial_conditional(theta_to, hi) > target) {
      hi *= 2.0;
      if (++it > 200)
        throw InversionFailure("failed to bracket the target level");
    }
    const double r_out = bisect_log_psi(theta_to, target, 0.0, hi, true);
    return {r_out, slope_ratio(theta_from, theta_to, r, r_out)};
  }

  /// ln R' via the differentiated inverse: on the contour, Psi_f(r) equals
  /// Psi_t(R(r)), so R'(r) = (ln Psi_f)'(r) / (ln Psi_t)'(R(r)).
  double slope_ratio(const Angles& theta_from, const Angles& theta_to,
                     double r, double r_out) const {
    const double sf = log_psi_slope(theta_from, r);
    const double st = log_psi_slope(theta_to, r_out);
    if (sf == 0.0 || st == 0.0 || sf * st < 0.0)
      throw InversionFailure("radial conditional is flat at the contour");
    return std::log(std::fabs(sf)) - std::log(std::fabs(st));
  }

  // --- piecewise matched partitions --------------------------------------

  void check_matched(const Angles& a, const Angles& b) const {
    const RadialPartition pa = partition_(a);
    const RadialPartition pb = partition_(b);
    if (pa.rho.size() != pb.rho.size())
      throw ConfigError("partition tables have mismatched sizes");
    for (std::size_t i = 0; i < pa.rho.size(); ++i) {
      const double va = radial_conditional(a, pa.rho[i]);
      const double vb = radial_conditional(b, pb.rho[i]);
      const double scale = std::max({std::fabs(va), std::fabs(vb), 1e-300});
      if (std::fabs(va - vb) > 1e-9 * std::max(scale, 1.0))
        throw ConfigError("partition critical values do not match");
    }
  }

  RtfEvaluation rtf_piecewise(const Angles& theta_from, const Angles& theta_to,
                              double r) const {
    const RadialPartition pf = partition_(theta_from);
    const RadialPartition pt = partition_(theta_to);
    if (pf.rho.size() != pt.rho.size())
      throw ConfigError("partition tables have mismatched sizes");
    const std::size_t m = pf.rho.size();

    std::size_t i = 0;
    while (i + 1 < m && r >= pf.rho[i + 1]) ++i;

    const bool bounded = (i + 1 < m);
    if (bounded) {
      const double va = log_radial_conditional(theta_from, pf.rho[i]);
      const double vb = log_radial_conditional(theta_from, pf.rho[i + 1]);
      if (std::fabs(va - vb) <= 1e-9) {
        // interval of uniformity: linear stretch between matched endpoints
        const double ratio =
            (pt.rho[i + 1] - pt.rho[i]) / (pf.rho[i + 1] - pf.rho[i]);
        return {pt.rho[i] + (r - pf.rho[i]) * ratio, std::log(ratio)};
      }
      const double target = log_radial_conditional(theta_from, r);
      const bool decreasing = va > vb;
      const double r_out =
          bisect_log_psi(theta_to, target, pt.rho[i], pt.rho[i + 1],
                         decreasing);
      return {r_out, slope_ratio(theta_from, theta_to, r, r_out)};
    }

    // unbounded tail: monotone decay, bracket by doubling from the last knot
    const double target = log_radial_conditional(theta_from, r);
    if (!std::isfinite(target))
      throw InversionFailure("conditional vanishes at the source radius");
    double lo = pt.rho[m - 1];
    double hi = std::max(2.0 * std::max(lo, 1.0), r);
    int it = 0;
    while (log_radial_conditional(theta_to, hi) > target) {
      hi *= 2.0;
      if (++it > 200)
        throw InversionFailure("failed to bracket the target level");
    }
    const double r_out = bisect_log_psi(theta_to, target, lo, hi, true);
    return {r_out, slope_ratio(theta_from, theta_to, r, r_out)};
  }

  LogDensityFn log_density_;
  Point anchor_;
  RtfClass rtf_class_;
  ExtentFn extent_;
  PartitionFn partition_;
  Angles reference_direction_;
  SampleFn sampler_;
};

/// Radial extent of an axis-aligned box seen from an interior anchor:
/// distance to the boundary along the ray `theta`.
inline ParentModel::ExtentFn make_box_extent(Point lo, Point hi, Point anchor) {
  for (std::size_t i = 0; i < anchor.size(); ++i)
    if (!(lo[i] < anchor[i] && anchor[i] < hi[i]))
      throw ConfigError("anchor must lie strictly inside the box");
  return [lo = std::move(lo), hi = std::move(hi),
          anchor = std::move(anchor)](const Angles& theta) {
    const Point u = direction_vector(theta);
    double t = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (u[i] > 0.0)
        t = std::min(t, (hi[i] - anchor[i]) / u[i]);
      else if (u[i] < 0.0)
        t = std::min(t, (lo[i] - anchor[i]) / u[i]);
    }
    return t;
  };
}

}  // namespace intrepid
