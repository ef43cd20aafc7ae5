#pragma once

#include <span>
#include <vector>

#include "cfl/classifiers.hpp"
#include "cfl/common.hpp"

namespace cfl {

// Decision parameters. Weights are positive and normalized so the last
// (rarest) class carries weight 1. Rejection thresholds satisfy
// 0 <= T_i < 1 and sum(T) < m - 1.
class ParamVector {
 public:
  enum class Kind { Weights, RejectionThresholds };

  // Throws std::invalid_argument on a non-positive or non-finite weight.
  static ParamVector weights(std::vector<double> alpha);
  // Throws std::invalid_argument on an infeasible threshold vector.
  static ParamVector rejection_thresholds(std::vector<double> tr);

  Kind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  ParamVector(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}
  Kind kind_;
  std::vector<double> values_;
};

// y = argmax_i alpha_i * phi_i, ties resolved toward the larger index.
std::vector<Label> decide_weighted(const ProbTable& probs, const ParamVector& alpha);

// Class argmax_i phi_i / (1 - T_i) when that ratio is >= 1, otherwise the
// reject label m.
std::vector<Label> decide_abstaining(const ProbTable& probs, const ParamVector& tr);

// tau_i = tau_m / alpha_i with tau_m = min_j alpha_j, so every tau_i is in (0, 1].
std::vector<double> weights_to_thresholds(const ParamVector& alpha);
// alpha_i = tau_m / tau_i; requires every tau_i > 0.
ParamVector thresholds_to_weights(std::span<const double> tau);

}  // namespace cfl
