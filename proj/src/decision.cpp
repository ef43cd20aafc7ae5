#include "cfl/decision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cfl {

ParamVector ParamVector::weights(std::vector<double> alpha) {
  if (alpha.size() < 2) throw std::invalid_argument("weights: need at least two classes");
  for (const double a : alpha) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("weights: every alpha must be positive");
  }
  const double anchor = alpha.back();
  for (auto& a : alpha) a /= anchor;
  alpha.back() = 1.0;
  return {Kind::Weights, std::move(alpha)};
}

ParamVector ParamVector::rejection_thresholds(std::vector<double> tr) {
  const std::size_t m = tr.size();
  if (m < 2) throw std::invalid_argument("rejection thresholds: need at least two classes");
  for (const double t : tr) {
    if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("rejection thresholds: each T_r must lie in [0, 1)");
  }
  const double sum = std::accumulate(tr.begin(), tr.end(), 0.0);
  if (!(sum < static_cast<double>(m - 1))) {
    throw std::invalid_argument("rejection thresholds: sum must be below m - 1");
  }
  return {Kind::RejectionThresholds, std::move(tr)};
}

std::vector<Label> decide_weighted(const ProbTable& probs, const ParamVector& alpha) {
  if (alpha.kind() != ParamVector::Kind::Weights) throw std::invalid_argument("decide_weighted: expected weights");
  const std::size_t m = probs.classes();
  if (alpha.size() != m) throw std::invalid_argument("decide_weighted: weight count differs from class count");
  std::vector<Label> out(probs.size());
  for (std::size_t l = 0; l < probs.size(); ++l) {
    const auto row = probs.row(l);
    std::size_t best = 0;
    double best_v = alpha[0] * row[0];
    for (std::size_t i = 1; i < m; ++i) {
      const double v = alpha[i] * row[i];
      if (v >= best_v) {
        best_v = v;
        best = i;
      }
    }
    out[l] = static_cast<Label>(best);
  }
  return out;
}

std::vector<Label> decide_abstaining(const ProbTable& probs, const ParamVector& tr) {
  if (tr.kind() != ParamVector::Kind::RejectionThresholds) {
    throw std::invalid_argument("decide_abstaining: expected rejection thresholds");
  }
  const std::size_t m = probs.classes();
  if (tr.size() != m) throw std::invalid_argument("decide_abstaining: threshold count differs from class count");
  std::vector<double> tau(m);
  for (std::size_t i = 0; i < m; ++i) tau[i] = 1.0 - tr[i];
  std::vector<Label> out(probs.size());
  for (std::size_t l = 0; l < probs.size(); ++l) {
    const auto row = probs.row(l);
    std::size_t best = 0;
    double best_v = row[0] / tau[0];
    for (std::size_t i = 1; i < m; ++i) {
      const double v = row[i] / tau[i];
      if (v >= best_v) {
        best_v = v;
        best = i;
      }
    }
    // Compare phi against tau directly so the boundary phi == 1 - T is exact.
    out[l] = row[best] >= tau[best] ? static_cast<Label>(best) : reject_label(m);
  }
  return out;
}

std::vector<double> weights_to_thresholds(const ParamVector& alpha) {
  if (alpha.kind() != ParamVector::Kind::Weights) throw std::invalid_argument("weights_to_thresholds: expected weights");
  const auto& a = alpha.values();
  const double tau_m = *std::min_element(a.begin(), a.end());
  std::vector<double> tau(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) tau[i] = tau_m / a[i];
  return tau;
}

ParamVector thresholds_to_weights(std::span<const double> tau) {
  if (tau.size() < 2) throw std::invalid_argument("thresholds_to_weights: need at least two classes");
  for (const double t : tau) {
    if (!(t > 0.0)) throw std::invalid_argument("thresholds_to_weights: thresholds must be positive");
  }
  std::vector<double> alpha(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) alpha[i] = tau.back() / tau[i];
  return ParamVector::weights(std::move(alpha));
}

}  // namespace cfl
