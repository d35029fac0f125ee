// SPDX-License-Identifier: Apache-2.0
//! \file geometry.hpp  Anchor-centered hyperspherical coordinates.
//!
//! The mapping matches the convention
//!   r     = ||x - a||_2
//!   th_j  = atan2(sqrt(sum_{i>j} (x_i - a_i)^2), x_j - a_j),  j = 1..d-2
//!   th_{d-1} = atan2(x_d - a_d, x_{d-1} - a_{d-1})  folded into [0, 2pi)
//! with th_1..th_{d-2} in [0, pi] and th_{d-1} in [0, 2pi).

#pragma once

#include <cmath>
#include <optional>

#include "intrepid/common.hpp"

namespace intrepid {

/// Hyperspherical image of a point about an anchor.
struct PolarVector {
  double r = 0.0;
  Angles angles;  // d-1 entries

  std::size_t dimension() const { return angles.size() + 1; }
};

inline PolarVector to_hyperspherical(const Point& x, const Point& anchor) {
  require_same_dimension(x, anchor);
  const std::size_t d = x.size();
  if (d < 2) throw DimensionMismatch("dimension must be >= 2");

  std::vector<double> v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = x[i] - anchor[i];

  // suffix[j] = sum_{i >= j} v_i^2
  std::vector<double> suffix(d + 1, 0.0);
  for (std::size_t i = d; i-- > 0;) suffix[i] = suffix[i + 1] + v[i] * v[i];

  PolarVector out;
  out.r = std::sqrt(suffix[0]);
  if (out.r == 0.0) throw ZeroRadius("point coincides with the anchor");

  out.angles.resize(d - 1);
  for (std::size_t j = 0; j + 2 < d; ++j)
    out.angles[j] = std::atan2(std::sqrt(suffix[j + 1]), v[j]);
  double last = std::atan2(v[d - 1], v[d - 2]);
  if (last < 0.0) last += 2.0 * pi;
  if (last >= 2.0 * pi) last = 0.0;  // fold rounding at the seam
  out.angles[d - 2] = last;
  return out;
}

inline Point to_cartesian(const PolarVector& v, const Point& anchor) {
  const std::size_t d = v.dimension();
  if (anchor.size() != d)
    throw DimensionMismatch("anchor dimension does not match polar vector");

  Point x(anchor);
  double running = v.r;  // r * sin(th_1) * ... * sin(th_{j-1})
  for (std::size_t j = 0; j < d - 1; ++j) {
    x[j] += running * std::cos(v.angles[j]);
    running *= std::sin(v.angles[j]);
  }
  x[d - 1] += running;
  return x;
}

/// Log of the hyperspherical volume-element factor,
///   (d-1) ln r + sum_j (d-j-1) ln sin(th_j),
/// or nullopt when the factor is singular (r = 0 or a weighted sine is 0).
inline std::optional<double> try_log_volume_jacobian(const PolarVector& v) {
  const std::size_t d = v.dimension();
  if (v.r <= 0.0) return std::nullopt;
  double acc = double(d - 1) * std::log(v.r);
  for (std::size_t j = 0; j + 2 < d; ++j) {
    const double s = std::sin(v.angles[j]);
    if (s <= 0.0) return std::nullopt;
    acc += double(d - j - 2) * std::log(s);
  }
  return acc;
}

inline double log_volume_jacobian(const PolarVector& v) {
  auto j = try_log_volume_jacobian(v);
  if (!j) throw SingularJacobian("volume element is singular here");
  return *j;
}

}  // namespace intrepid
