// SPDX-License-Identifier: Apache-2.0
//! \file common.hpp  Shared types, errors, and scalar math helpers.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace intrepid {

/// A state-space point in Cartesian coordinates.
using Point = std::vector<double>;

/// Angular part of a hyperspherical coordinate vector (d-1 entries).
using Angles = std::vector<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Error hierarchy. Callers on hot paths pre-check instead of catching.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct ZeroRadius : Error {
  using Error::Error;
};
struct SingularJacobian : Error {
  using Error::Error;
};
struct RtfUnavailable : Error {
  using Error::Error;
};
struct InversionFailure : Error {
  using Error::Error;
};
struct InvalidStart : Error {
  using Error::Error;
};
struct EmptySample : Error {
  using Error::Error;
};
struct GridMismatch : Error {
  using Error::Error;
};
struct DegenerateVariance : Error {
  using Error::Error;
};
struct BoundViolation : Error {
  using Error::Error;
};
struct NonPhysical : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

inline double sq(double x) { return x * x; }

inline double norm2(const Point& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

inline double norm2_diff(const Point& x, const Point& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += sq(x[i] - y[i]);
  return std::sqrt(s);
}

/// Standard normal density.
inline double norm_pdf(double z) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

inline double log_norm_pdf(double z) {
  static const double log_sqrt_2pi = 0.9189385332046727418;
  return -0.5 * z * z - log_sqrt_2pi;
}

/// Standard normal CDF via the complementary error function.
inline double norm_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.7071067811865475244);
}

/// Standard normal quantile (Wichura's AS 241 rational approximation,
/// accurate to full double precision on (0, 1)).
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return neg_inf;
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) *
                    r +
                4.5921953931549871457e4) *
                   r +
               1.3731693765509461125e4) *
                  r +
              1.9715909503065514427e3) *
                 r +
             1.3314166789178437745e2) *
                r +
            3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) *
                    r +
                2.1213794301586595867e4) *
                   r +
               5.3941960214247511077e3) *
                  r +
              6.8718700749205790830e2) *
                 r +
             4.2313330701600911252e1) *
                r +
            1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
  }
  return (q < 0.0) ? -v : v;
}

inline void require_same_dimension(const Point& a, const Point& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("points have dimensions " +
                            std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
}

}  // namespace intrepid
