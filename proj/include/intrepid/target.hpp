// SPDX-License-Identifier: Apache-2.0
//! \file target.hpp  Unnormalized target pi(x) = T(x) p(x) with an
//! evaluation counter.

#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "intrepid/parent.hpp"

namespace intrepid {

/// Target model: log pi = log T + log p. The transformation factor T is
/// treated as expensive, so every log-target call is counted; kernels cache
/// the current state's value and never evaluate it twice.
class TargetModel {
 public:
  using LogTransformFn = std::function<double(const Point&)>;

  TargetModel(std::string name, std::shared_ptr<const ParentModel> parent,
              LogTransformFn log_transform)
      : name_(std::move(name)),
        parent_(std::move(parent)),
        log_transform_(std::move(log_transform)),
        evals_(std::make_shared<std::atomic<long long>>(0)) {}

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return parent_->dimension(); }
  const ParentModel& parent() const { return *parent_; }
  std::shared_ptr<const ParentModel> parent_ptr() const { return parent_; }

  /// ln pi(x); increments the evaluation counter exactly once.
  double log_target(const Point& x) const {
    evals_->fetch_add(1, std::memory_order_relaxed);
    const double t = log_transform_(x);
    if (t == neg_inf) return neg_inf;
    return t + parent_->log_density(x);
  }

  /// ln T(x) without counting (diagnostic access).
  double log_transform(const Point& x) const { return log_transform_(x); }

  long long evaluation_count() const {
    return evals_->load(std::memory_order_relaxed);
  }
  void reset_evaluation_count() const { evals_->store(0); }

  /// Copy with an independent counter, for single-owner use per chain.
  TargetModel fork() const {
    return TargetModel(name_, parent_, log_transform_);
  }

 private:
  std::string name_;
  std::shared_ptr<const ParentModel> parent_;
  LogTransformFn log_transform_;
  std::shared_ptr<std::atomic<long long>> evals_;
};

}  // namespace intrepid
