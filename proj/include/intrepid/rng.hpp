// SPDX-License-Identifier: Apache-2.0
//! \file rng.hpp  Seedable random streams with cross-platform determinism.
//!
//! All variates are produced from raw mt19937_64 output through fully
//! specified transforms (bit shifts and the AS 241 normal quantile), so a
//! given seed yields the same stream on every standard library.

#pragma once

#include <cstdint>
#include <random>

#include "intrepid/common.hpp"

namespace intrepid {

/// SplitMix64 finalizer, used for seed mixing and derivation.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives a child seed from a parent seed and an ordered tuple of indices.
/// Pure function of its inputs; distinct tuples give independent streams.
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t p : parts) h = splitmix64(h ^ splitmix64(p + 0x51ed2701));
  return h;
}

/// A single-owner random stream. Never shared between chains.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); safe to feed into quantiles.
  double uniform_open() {
    return (double(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal draw by inverse CDF.
  double normal() { return norm_quantile(uniform_open()); }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  /// Child stream for an independent purpose (tagged by index).
  RandomStream split(std::uint64_t tag) {
    return RandomStream(derive_seed(engine_(), {tag}));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace intrepid
