// SPDX-License-Identifier: Apache-2.0
//! \file kernel.hpp  Transition kernels: component-wise MH (local), the
//! explorative hyperspherical kernel, and their beta-mixture; chain driver.

#pragma once

#include <cassert>
#include <cmath>
#include <optional>
#include <vector>

#include "intrepid/geometry.hpp"
#include "intrepid/parent.hpp"
#include "intrepid/proposal.hpp"
#include "intrepid/target.hpp"

namespace intrepid {

enum class KernelKind { local, intrepid };

struct KernelConfig {
  double beta = 0.1;
  std::vector<AngularProposal> angular;  // one per angular index
  RadialProposal radial = RadialProposal::uniform_symmetric(2.0);
  ComponentProposal component = ComponentProposal({1.0, 1.0});
  Point anchor;
  std::optional<Angles> reference_direction;  // overrides the parent's choice
  bool angular_symmetric = false;  // reversal symmetry verified for all q_j
};

/// Builds a config with the recommended defaults: uniform angular proposals
/// (or truncated normals with sigma = pi/2, last index pi), radial
/// Uniform(1/2, 2), unit component scales.
inline KernelConfig make_kernel_config(
    std::size_t d, Point anchor, double beta = 0.1,
    AngularKind angular_kind = AngularKind::uniform,
    RadialProposal radial = RadialProposal::uniform_symmetric(2.0),
    double component_sigma = 1.0) {
  KernelConfig cfg;
  cfg.beta = beta;
  cfg.radial = radial;
  cfg.component = ComponentProposal::isotropic(d, component_sigma);
  cfg.anchor = std::move(anchor);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const bool last = (j + 2 == d);
    const double range = last ? 2.0 * pi : pi;
    cfg.angular.push_back(angular_kind == AngularKind::uniform
                              ? AngularProposal::uniform_range(range)
                              : AngularProposal::truncated_normal(
                                    last ? pi : 0.5 * pi, range));
  }
  cfg.angular_symmetric = true;
  for (const auto& q : cfg.angular)
    cfg.angular_symmetric = cfg.angular_symmetric && verify_angular_symmetry(q);
  return cfg;
}

inline const Angles& resolve_reference_direction(const KernelConfig& cfg,
                                                 const ParentModel& parent) {
  return cfg.reference_direction ? *cfg.reference_direction
                                 : parent.reference_direction();
}

struct TransitionOutcome {
  Point next_state;
  bool accepted = false;
  KernelKind kernel_used = KernelKind::local;
  double log_rho = neg_inf;  // ln rho_I, or the summed component log-ratios
  Point candidate;
  int proposed_components = 0;  // local kernel bookkeeping
  int accepted_components = 0;
  double gamma = 0.0;          // explorative kernel draw, for diagnostics
  std::vector<double> phis;
};

/// Chain state with the cached log-target value, so pi(x_s) is evaluated
/// exactly once per state.
struct ChainState {
  Point x;
  double log_pi = neg_inf;
};

namespace detail {

/// Sum of (d-j-2) ln sin(theta_j) over the weighted angular indices, or
/// nullopt when a weighted sine vanishes.
inline std::optional<double> log_sin_factor(const Angles& angles,
                                            std::size_t d) {
  double acc = 0.0;
  for (std::size_t j = 0; j + 2 < d; ++j) {
    const double s = std::sin(angles[j]);
    if (s <= 0.0) return std::nullopt;
    acc += double(d - j - 2) * std::log(s);
  }
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Explorative proposal density (the full form over candidate Cartesian space)
// ---------------------------------------------------------------------------

/// ln q_I(x_c | x_s) for a transition parameterized by (gamma, phi_1..),
/// branching on the parent's RTF class. Returns -inf outside the proposal's
/// support and +inf on the (measure-zero) singular set of the coordinates.
inline double intrepid_log_proposal(const KernelConfig& cfg,
                                    const ParentModel& parent,
                                    const PolarVector& v_s,
                                    const PolarVector& v_c, double gamma,
                                    const std::vector<double>& phis) {
  const std::size_t d = v_s.dimension();
  double acc = cfg.radial.log_density(gamma);
  for (std::size_t j = 0; j + 1 < d; ++j)
    acc += cfg.angular[j].log_density(phis[j], v_s.angles[j]);
  if (acc == neg_inf) return neg_inf;

  const auto sin_c = detail::log_sin_factor(v_c.angles, d);
  if (!sin_c) return std::numeric_limits<double>::infinity();
  acc -= *sin_c;

  switch (parent.rtf_class()) {
    case RtfClass::identity:
      return acc - double(d - 1) * std::log(v_c.r) - std::log(v_s.r);
    case RtfClass::uniform_scaling: {
      const double ls = parent.radial_extent(v_s.angles);
      const double lc = parent.radial_extent(v_c.angles);
      // R'_{0,c} R_{s,0}(r_s) = (lambda_c/lambda_0)(r_s lambda_0/lambda_s)
      return acc - double(d - 1) * std::log(v_c.r) -
             std::log(v_s.r * lc / ls);
    }
    case RtfClass::monotone_radial_conditional:
    case RtfClass::piecewise_matched: {
      const Angles& ref = resolve_reference_direction(cfg, parent);
      const double u = parent.rtf_apply(v_s.angles, ref, v_s.r).r_out;
      const double w = parent.rtf_apply(v_c.angles, ref, v_c.r).r_out;
      const double log_deriv =
          parent.rtf_apply(ref, v_c.angles, w).log_derivative;
      return acc - double(d - 1) * std::log(v_c.r) - log_deriv - std::log(u);
    }
    case RtfClass::none:
      return acc - double(d - 1) * std::log(gamma) -
             double(d) * std::log(v_s.r);
  }
  throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Acceptance ratio
// ---------------------------------------------------------------------------

namespace detail {

/// The state-independent part of ln rho_I: ln Gamma plus the angular-density
/// and sine ratios. Excludes ln pi(x_c) - ln pi(x_s). Returns -inf for a
/// transition that must be rejected (vanishing factor or singular geometry).
inline double intrepid_log_rho_parts(const KernelConfig& cfg,
                                     const ParentModel& parent,
                                     const PolarVector& v_s,
                                     const PolarVector& v_c, double gamma,
                                     const std::vector<double>& phis) {
  const std::size_t d = v_s.dimension();

  const auto sin_s = log_sin_factor(v_s.angles, d);
  const auto sin_c = log_sin_factor(v_c.angles, d);
  if (!sin_s || !sin_c) return neg_inf;
  double acc = *sin_c - *sin_s;

  if (!cfg.angular_symmetric) {
    for (std::size_t j = 0; j + 1 < d; ++j) {
      const double fwd = cfg.angular[j].log_density(phis[j], v_s.angles[j]);
      const double rev = cfg.angular[j].log_density(-phis[j], v_c.angles[j]);
      if (rev == neg_inf) return neg_inf;
      acc += rev - fwd;
    }
  }

  const double log_qr_ratio =
      cfg.radial.log_density(1.0 / gamma) - cfg.radial.log_density(gamma);
  const double log_gamma = std::log(gamma);

  switch (parent.rtf_class()) {
    case RtfClass::identity:
    case RtfClass::none:
      return acc + double(d - 2) * log_gamma + log_qr_ratio;
    case RtfClass::uniform_scaling: {
      const double ls = parent.radial_extent(v_s.angles);
      const double lc = parent.radial_extent(v_c.angles);
      return acc + double(d - 2) * log_gamma + log_qr_ratio +
             double(d) * (std::log(lc) - std::log(ls));
    }
    case RtfClass::monotone_radial_conditional:
    case RtfClass::piecewise_matched: {
      const Angles& ref = resolve_reference_direction(cfg, parent);
      const double u = parent.rtf_apply(v_s.angles, ref, v_s.r).r_out;
      const double w = parent.rtf_apply(v_c.angles, ref, v_c.r).r_out;
      const double dc = parent.rtf_apply(ref, v_c.angles, w).log_derivative;
      const double ds = parent.rtf_apply(ref, v_s.angles, u).log_derivative;
      return acc - log_gamma + log_qr_ratio +
             double(d - 1) * (std::log(v_c.r) - std::log(v_s.r)) + dc - ds;
    }
  }
  throw Error("unreachable");
}

}  // namespace detail

/// ln rho_I(x_s -> x_c) for the transition parameterized by (gamma, phis).
/// Evaluates the target at both endpoints; chain stepping uses the cached
/// variant instead.
inline double intrepid_log_rho(const KernelConfig& cfg,
                               const ParentModel& parent,
                               const TargetModel& target, const Point& x_s,
                               const Point& x_c, double gamma,
                               const std::vector<double>& phis) {
  const PolarVector v_s = to_hyperspherical(x_s, cfg.anchor);
  const PolarVector v_c = to_hyperspherical(x_c, cfg.anchor);
  const double log_pi_c = target.log_target(x_c);
  if (log_pi_c == neg_inf) return neg_inf;
  const double log_pi_s = target.log_target(x_s);
  double parts;
  try {
    parts = detail::intrepid_log_rho_parts(cfg, parent, v_s, v_c, gamma, phis);
  } catch (const InversionFailure&) {
    return neg_inf;
  }
  return parts + log_pi_c - log_pi_s;
}

// ---------------------------------------------------------------------------
// Kernel steps
// ---------------------------------------------------------------------------

/// One explorative step from the cached state; advances `state` on accept.
/// Evaluates the target exactly once (at the candidate). All internal
/// singularities (anchor hit, singular sines, RTF inversion failure) are
/// recorded as rejections.
inline TransitionOutcome intrepid_step(const KernelConfig& cfg,
                                       const ParentModel& parent,
                                       const TargetModel& target,
                                       ChainState& state, RandomStream& rng) {
  assert(state.log_pi > neg_inf);
  const std::size_t d = state.x.size();
  TransitionOutcome out;
  out.kernel_used = KernelKind::intrepid;
  out.next_state = state.x;

  PolarVector v_s;
  try {
    v_s = to_hyperspherical(state.x, cfg.anchor);
  } catch (const ZeroRadius&) {
    return out;  // state sits on the anchor: measure-zero, reject
  }
  if (!detail::log_sin_factor(v_s.angles, d)) return out;

  std::vector<double>& phis = out.phis;
  phis.resize(d - 1);
  PolarVector v_c;
  v_c.angles.resize(d - 1);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    phis[j] = cfg.angular[j].sample(v_s.angles[j], rng);
    double th = v_s.angles[j] + phis[j];
    if (j + 2 == d && th >= 2.0 * pi) th -= 2.0 * pi;  // fold the seam
    v_c.angles[j] = th;
  }
  const double gamma = cfg.radial.sample(rng);
  out.gamma = gamma;

  switch (parent.rtf_class()) {
    case RtfClass::identity:
      v_c.r = gamma * v_s.r;
      break;
    case RtfClass::uniform_scaling: {
      const double ls = parent.radial_extent(v_s.angles);
      const double lc = parent.radial_extent(v_c.angles);
      v_c.r = gamma * v_s.r * (lc / ls);
      break;
    }
    case RtfClass::monotone_radial_conditional:
    case RtfClass::piecewise_matched: {
      const Angles& ref = resolve_reference_direction(cfg, parent);
      try {
        const double u = parent.rtf_apply(v_s.angles, ref, v_s.r).r_out;
        v_c.r = parent.rtf_apply(ref, v_c.angles, gamma * u).r_out;
      } catch (const InversionFailure&) {
        return out;
      }
      break;
    }
    case RtfClass::none:
      v_c.r = gamma * v_s.r;
      break;
  }
  if (!(v_c.r > 0.0) || !std::isfinite(v_c.r)) return out;

  out.candidate = to_cartesian(v_c, cfg.anchor);
  const double log_pi_c = target.log_target(out.candidate);

  double log_rho = neg_inf;
  if (log_pi_c > neg_inf) {
    try {
      const double parts =
          detail::intrepid_log_rho_parts(cfg, parent, v_s, v_c, gamma, phis);
      log_rho = parts + log_pi_c - state.log_pi;
    } catch (const InversionFailure&) {
      log_rho = neg_inf;
    }
  }
  out.log_rho = log_rho;

  const double u = rng.uniform();
  if (std::log(u) < log_rho) {
    out.accepted = true;
    out.next_state = out.candidate;
    state.x = out.candidate;
    state.log_pi = log_pi_c;
  }
  return out;
}

/// One component-wise MH sweep: each coordinate is proposed and accepted or
/// rejected on the full target with the other coordinates held at their
/// current (partially updated) values. One target evaluation per component.
inline TransitionOutcome cmh_step(const KernelConfig& cfg,
                                  const TargetModel& target, ChainState& state,
                                  RandomStream& rng) {
  assert(state.log_pi > neg_inf);
  const std::size_t d = state.x.size();
  TransitionOutcome out;
  out.kernel_used = KernelKind::local;
  out.candidate = state.x;
  out.proposed_components = int(d);
  out.log_rho = 0.0;

  for (std::size_t i = 0; i < d; ++i) {
    const double proposed = cfg.component.sample(i, state.x[i], rng);
    out.candidate[i] = proposed;
    const double old_value = state.x[i];
    state.x[i] = proposed;
    const double log_pi_prop = target.log_target(state.x);
    const double log_ratio = log_pi_prop - state.log_pi;
    out.log_rho += std::min(log_ratio, 0.0);
    const double u = rng.uniform();
    if (std::log(u) < log_ratio) {
      state.log_pi = log_pi_prop;
      ++out.accepted_components;
    } else {
      state.x[i] = old_value;
    }
  }
  out.accepted = out.accepted_components > 0;
  out.next_state = state.x;
  return out;
}

/// Mixture kernel: explorative step with probability beta, local otherwise.
inline TransitionOutcome mixture_step(const KernelConfig& cfg,
                                      const ParentModel& parent,
                                      const TargetModel& target,
                                      ChainState& state, RandomStream& rng) {
  const double u = rng.uniform();
  if (u < cfg.beta) return intrepid_step(cfg, parent, target, state, rng);
  return cmh_step(cfg, target, state, rng);
}

// Convenience overloads matching the stateless signatures; they evaluate the
// target once at x_s to seed the cache.
inline TransitionOutcome intrepid_step(const KernelConfig& cfg,
                                       const ParentModel& parent,
                                       const TargetModel& target,
                                       const Point& x_s, RandomStream& rng) {
  ChainState s{x_s, target.log_target(x_s)};
  return intrepid_step(cfg, parent, target, s, rng);
}

inline TransitionOutcome cmh_step(const KernelConfig& cfg,
                                  const TargetModel& target, const Point& x_s,
                                  RandomStream& rng) {
  ChainState s{x_s, target.log_target(x_s)};
  return cmh_step(cfg, target, s, rng);
}

inline TransitionOutcome mixture_step(const KernelConfig& cfg,
                                      const ParentModel& parent,
                                      const TargetModel& target,
                                      const Point& x_s, RandomStream& rng) {
  ChainState s{x_s, target.log_target(x_s)};
  return mixture_step(cfg, parent, target, s, rng);
}

// ---------------------------------------------------------------------------
// Chain driver
// ---------------------------------------------------------------------------

struct ChainRecord {
  std::vector<Point> states;  // post-burn-in trajectory, exactly `length`
  std::uint64_t intrepid_proposals = 0;
  std::uint64_t intrepid_accepts = 0;
  std::uint64_t local_steps = 0;
  std::uint64_t local_component_proposals = 0;
  std::uint64_t local_component_accepts = 0;
  std::uint64_t target_evals = 0;

  double acceptance_intrepid() const {
    return intrepid_proposals ? double(intrepid_accepts) / intrepid_proposals
                              : 0.0;
  }
  double acceptance_local() const {
    return local_component_proposals
               ? double(local_component_accepts) / local_component_proposals
               : 0.0;
  }
  double acceptance_overall() const {
    const std::uint64_t prop = intrepid_proposals + local_component_proposals;
    return prop ? double(intrepid_accepts + local_component_accepts) / prop
                : 0.0;
  }
};

inline ChainRecord run_chain(const KernelConfig& cfg, const ParentModel& parent,
                             const TargetModel& target, const Point& x_0,
                             std::size_t length, std::size_t burn_in,
                             RandomStream& rng) {
  if (length == 0) throw ConfigError("chain length must be positive");
  const long long evals_before = target.evaluation_count();
  ChainState state{x_0, target.log_target(x_0)};
  if (state.log_pi == neg_inf)
    throw InvalidStart("starting point has zero target density");

  ChainRecord rec;
  rec.states.reserve(length);
  for (std::size_t t = 0; t < burn_in + length; ++t) {
    const TransitionOutcome out = mixture_step(cfg, parent, target, state, rng);
    if (out.kernel_used == KernelKind::intrepid) {
      ++rec.intrepid_proposals;
      rec.intrepid_accepts += out.accepted ? 1 : 0;
    } else {
      ++rec.local_steps;
      rec.local_component_proposals += out.proposed_components;
      rec.local_component_accepts += out.accepted_components;
    }
    if (t >= burn_in) rec.states.push_back(state.x);
  }
  rec.target_evals =
      std::uint64_t(target.evaluation_count() - evals_before);
  return rec;
}

}  // namespace intrepid
