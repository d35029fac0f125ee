// SPDX-License-Identifier: Apache-2.0
//! \file diagnostics.hpp  Convergence and mixing metrics: binned total
//! variation distance, normalized moment errors, acceptance rates, lag-k
//! correlations, ensemble TVD, and mode occupancy.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "intrepid/common.hpp"
#include "intrepid/kernel.hpp"

namespace intrepid {

// ---------------------------------------------------------------------------
// Binned empirical distributions over a 2-D marginal
// ---------------------------------------------------------------------------

struct HistogramGrid {
  std::vector<double> edges_a, edges_b;  // strictly increasing bin edges
  std::size_t dim_a = 0, dim_b = 1;      // sample dimensions being binned

  std::size_t bins_a() const { return edges_a.size() - 1; }
  std::size_t bins_b() const { return edges_b.size() - 1; }

  bool operator==(const HistogramGrid& o) const {
    return dim_a == o.dim_a && dim_b == o.dim_b && edges_a == o.edges_a &&
           edges_b == o.edges_b;
  }
};

struct BinnedDistribution {
  HistogramGrid grid;
  std::vector<double> masses;  // bins_a * bins_b, row-major, normalized
  double out_of_range = 0.0;   // mass falling outside the grid
};

/// Uniform grid spanning the reference sample range expanded `pad` per side.
inline HistogramGrid make_reference_grid(const std::vector<Point>& reference,
                                         std::size_t dim_a, std::size_t dim_b,
                                         std::size_t bins = 100,
                                         double pad = 0.05) {
  if (reference.empty()) throw EmptySample("cannot grid an empty reference");
  double alo = reference[0][dim_a], ahi = alo;
  double blo = reference[0][dim_b], bhi = blo;
  for (const Point& x : reference) {
    alo = std::min(alo, x[dim_a]);
    ahi = std::max(ahi, x[dim_a]);
    blo = std::min(blo, x[dim_b]);
    bhi = std::max(bhi, x[dim_b]);
  }
  const double aw = (ahi - alo) * pad, bw = (bhi - blo) * pad;
  alo -= aw;
  ahi += aw;
  blo -= bw;
  bhi += bw;
  HistogramGrid g;
  g.dim_a = dim_a;
  g.dim_b = dim_b;
  g.edges_a.resize(bins + 1);
  g.edges_b.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) {
    const double t = double(i) / double(bins);
    g.edges_a[i] = alo + t * (ahi - alo);
    g.edges_b[i] = blo + t * (bhi - blo);
  }
  return g;
}

inline BinnedDistribution bin_samples(const HistogramGrid& grid,
                                      const std::vector<Point>& samples) {
  if (samples.empty()) throw EmptySample("cannot bin an empty sample set");
  BinnedDistribution out;
  out.grid = grid;
  out.masses.assign(grid.bins_a() * grid.bins_b(), 0.0);
  const double w = 1.0 / double(samples.size());
  const double alo = grid.edges_a.front(), ahi = grid.edges_a.back();
  const double blo = grid.edges_b.front(), bhi = grid.edges_b.back();
  const double astep = (ahi - alo) / double(grid.bins_a());
  const double bstep = (bhi - blo) / double(grid.bins_b());
  for (const Point& x : samples) {
    const double a = x[grid.dim_a], b = x[grid.dim_b];
    if (a < alo || a >= ahi || b < blo || b >= bhi) {
      out.out_of_range += w;
      continue;
    }
    const std::size_t ia =
        std::min<std::size_t>(std::size_t((a - alo) / astep),
                              grid.bins_a() - 1);
    const std::size_t ib =
        std::min<std::size_t>(std::size_t((b - blo) / bstep),
                              grid.bins_b() - 1);
    out.masses[ia * grid.bins_b() + ib] += w;
  }
  return out;
}

/// Total variation distance over identical grids, including the out-of-range
/// cell: 0.5 sum |a_i - b_i|.
inline double tvd(const BinnedDistribution& a, const BinnedDistribution& b) {
  if (!(a.grid == b.grid) || a.masses.size() != b.masses.size())
    throw GridMismatch("binned distributions use different grids");
  double s = std::fabs(a.out_of_range - b.out_of_range);
  for (std::size_t i = 0; i < a.masses.size(); ++i)
    s += std::fabs(a.masses[i] - b.masses[i]);
  return 0.5 * s;
}

/// Dimension pairs used for TVD in d > 2: lexicographic, capped at ten.
inline std::vector<std::pair<std::size_t, std::size_t>> tvd_dimension_pairs(
    std::size_t d) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < d && pairs.size() < 10; ++a)
    for (std::size_t b = a + 1; b < d && pairs.size() < 10; ++b)
      pairs.emplace_back(a, b);
  return pairs;
}

// ---------------------------------------------------------------------------
// Streaming moments (Welford), usable at d = 50 without storing samples
// ---------------------------------------------------------------------------

class MomentAccumulator {
 public:
  explicit MomentAccumulator(std::size_t d)
      : mean_(d, 0.0), m2_(d * d, 0.0) {}

  void add(const Point& x) {
    ++n_;
    const std::size_t d = mean_.size();
    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) delta[i] = x[i] - mean_[i];
    for (std::size_t i = 0; i < d; ++i) mean_[i] += delta[i] / double(n_);
    for (std::size_t i = 0; i < d; ++i) {
      const double d2i = x[i] - mean_[i];
      for (std::size_t j = 0; j < d; ++j)
        m2_[i * d + j] += d2i * delta[j];
    }
  }

  void merge(const MomentAccumulator& o) {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const std::size_t d = mean_.size();
    const double na = double(n_), nb = double(o.n_), nc = na + nb;
    std::vector<double> delta(d);
    for (std::size_t i = 0; i < d; ++i) delta[i] = o.mean_[i] - mean_[i];
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m2_[i * d + j] +=
            o.m2_[i * d + j] + delta[i] * delta[j] * na * nb / nc;
    for (std::size_t i = 0; i < d; ++i) mean_[i] += delta[i] * nb / nc;
    n_ += o.n_;
  }

  std::size_t count() const { return n_; }

  Point mean() const {
    if (n_ == 0) throw EmptySample("no samples accumulated");
    return mean_;
  }

  /// Sample covariance (n-1 denominator); a single point yields all zeros.
  std::vector<std::vector<double>> covariance() const {
    if (n_ == 0) throw EmptySample("no samples accumulated");
    const std::size_t d = mean_.size();
    std::vector<std::vector<double>> c(d, std::vector<double>(d, 0.0));
    if (n_ < 2) return c;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        c[i][j] = m2_[i * d + j] / double(n_ - 1);
    return c;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;  // sum of centered outer products
};

inline double covariance_trace(const std::vector<std::vector<double>>& c) {
  double t = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) t += c[i][i];
  return t;
}

/// || sample_mean - reference_mean ||_2 / sqrt(trace(reference_cov))
inline double mean_error(const Point& sample_mean, const Point& reference_mean,
                         const std::vector<std::vector<double>>& reference_cov) {
  return norm2_diff(sample_mean, reference_mean) /
         std::sqrt(covariance_trace(reference_cov));
}

inline double mean_error(const std::vector<Point>& samples,
                         const Point& reference_mean,
                         const std::vector<std::vector<double>>& reference_cov) {
  if (samples.empty()) throw EmptySample("mean_error of an empty sample set");
  MomentAccumulator acc(samples[0].size());
  for (const Point& x : samples) acc.add(x);
  return mean_error(acc.mean(), reference_mean, reference_cov);
}

/// || sample_cov - reference_cov ||_F / sqrt(trace(reference_cov))
inline double cov_error_from_matrix(
    const std::vector<std::vector<double>>& sample_cov,
    const std::vector<std::vector<double>>& reference_cov) {
  double s = 0.0;
  for (std::size_t i = 0; i < sample_cov.size(); ++i)
    for (std::size_t j = 0; j < sample_cov.size(); ++j)
      s += sq(sample_cov[i][j] - reference_cov[i][j]);
  return std::sqrt(s) / std::sqrt(covariance_trace(reference_cov));
}

inline double cov_error(const std::vector<Point>& samples,
                        const std::vector<std::vector<double>>& reference_cov) {
  if (samples.size() < 2)
    throw EmptySample("cov_error needs at least two samples");
  MomentAccumulator acc(samples[0].size());
  for (const Point& x : samples) acc.add(x);
  return cov_error_from_matrix(acc.covariance(), reference_cov);
}

// ---------------------------------------------------------------------------
// Chain correlation and ensemble statistics
// ---------------------------------------------------------------------------

/// Per-dimension Pearson correlation between states t and t+k.
inline std::vector<double> lag_correlation(const std::vector<Point>& states,
                                           std::size_t k) {
  if (states.size() <= k)
    throw ConfigError("chain shorter than the requested lag");
  const std::size_t n = states.size() - k;
  const std::size_t d = states[0].size();
  std::vector<double> out(d);
  for (std::size_t dim = 0; dim < d; ++dim) {
    double ma = 0.0, mb = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      ma += states[t][dim];
      mb += states[t + k][dim];
    }
    ma /= double(n);
    mb /= double(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double da = states[t][dim] - ma;
      const double db = states[t + k][dim] - mb;
      saa += da * da;
      sbb += db * db;
      sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0)
      throw DegenerateVariance("constant dimension " + std::to_string(dim));
    out[dim] = sab / std::sqrt(saa * sbb);
  }
  return out;
}

/// Bins the l-th state across chains and reports TVD against the reference.
inline double ensemble_tvd(const std::vector<ChainRecord>& chains,
                           std::size_t l, const BinnedDistribution& reference) {
  std::vector<Point> ensemble;
  ensemble.reserve(chains.size());
  for (const ChainRecord& c : chains) {
    if (c.states.size() <= l)
      throw ConfigError("chain shorter than the requested state index");
    ensemble.push_back(c.states[l]);
  }
  return tvd(bin_samples(reference.grid, ensemble), reference);
}

/// Fraction of samples inside each (disjoint) region.
inline std::vector<double> mode_occupancy(
    const std::vector<Point>& samples,
    const std::vector<std::function<bool(const Point&)>>& regions) {
  std::vector<double> counts(regions.size(), 0.0);
  if (samples.empty()) return counts;
  for (const Point& x : samples)
    for (std::size_t r = 0; r < regions.size(); ++r)
      if (regions[r](x)) {
        counts[r] += 1.0;
        break;
      }
  for (double& c : counts) c /= double(samples.size());
  return counts;
}

// ---------------------------------------------------------------------------
// Per-chain report
// ---------------------------------------------------------------------------

struct DiagnosticsReport {
  double tvd = 0.0;
  double mean_error = 0.0;
  double cov_error = 0.0;
  double acceptance_total = 0.0;
  double acceptance_intrepid = 0.0;
  double acceptance_local = 0.0;
  std::uint64_t target_evals = 0;
  std::map<std::size_t, std::vector<double>> lag_correlations;  // k -> per dim
  std::vector<double> mode_occupancy;
};

inline nlohmann::json report_to_json(const DiagnosticsReport& r) {
  nlohmann::json j{{"tvd", r.tvd},
                   {"mean_error", r.mean_error},
                   {"cov_error", r.cov_error},
                   {"acceptance_total", r.acceptance_total},
                   {"acceptance_intrepid", r.acceptance_intrepid},
                   {"acceptance_local", r.acceptance_local},
                   {"target_evals", r.target_evals}};
  if (!r.lag_correlations.empty()) {
    nlohmann::json lags = nlohmann::json::object();
    for (const auto& [k, v] : r.lag_correlations) lags[std::to_string(k)] = v;
    j["lag_correlations"] = lags;
  }
  if (!r.mode_occupancy.empty()) j["mode_occupancy"] = r.mode_occupancy;
  return j;
}

inline std::string format_metric(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Long-format CSV rows (chain_id,metric,value), one row per metric.
inline std::vector<std::string> report_csv_rows(std::size_t chain_id,
                                                const DiagnosticsReport& r) {
  const std::string id = std::to_string(chain_id) + ",";
  std::vector<std::string> rows{
      id + "tvd," + format_metric(r.tvd),
      id + "mean_error," + format_metric(r.mean_error),
      id + "cov_error," + format_metric(r.cov_error),
      id + "acceptance_total," + format_metric(r.acceptance_total),
      id + "acceptance_intrepid," + format_metric(r.acceptance_intrepid),
      id + "acceptance_local," + format_metric(r.acceptance_local),
      id + "target_evals," + std::to_string(r.target_evals)};
  return rows;
}

}  // namespace intrepid
