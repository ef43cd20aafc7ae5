#include "cfl/baselines.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cfl/decision.hpp"
#include "cfl/diagnostics.hpp"
#include "cfl/rng.hpp"

namespace cfl {

Dataset smote_oversample(const Dataset& train, std::span<const Label> minority, std::size_t amount,
                         std::size_t k_neighbors, std::uint64_t seed) {
  train.validate();
  if (amount < 1) throw std::invalid_argument("smote_oversample: amount must be at least 1");
  if (k_neighbors < 1) throw std::invalid_argument("smote_oversample: k must be at least 1");
  Dataset out = train;
  Rng rng(seed);
  std::vector<double> point(train.dimension());
  for (const Label c : minority) {
    if (c < 0 || static_cast<std::size_t>(c) >= train.classes) {
      throw std::invalid_argument("smote_oversample: class label out of range");
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < train.size(); ++i) {
      if (train.labels[i] == c) members.push_back(i);
    }
    if (members.empty()) continue;
    if (members.size() == 1) {
      warn("smote_oversample: class " + std::to_string(c) + " has a single instance; duplicating it");
      for (std::size_t a = 0; a < amount; ++a) {
        out.features.append_row(train.features.row(members[0]));
        out.labels.push_back(c);
      }
      continue;
    }
    const std::size_t k = std::min(k_neighbors, members.size() - 1);
    std::vector<std::pair<double, std::size_t>> dist;
    for (const std::size_t i : members) {
      dist.clear();
      for (const std::size_t j : members) {
        if (j != i) dist.emplace_back(squared_distance(train.features.row(i), train.features.row(j)), j);
      }
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
      const auto base = train.features.row(i);
      for (std::size_t a = 0; a < amount; ++a) {
        const auto nb = train.features.row(dist[rng.below(k)].second);
        const double gap = rng.uniform();
        for (std::size_t d = 0; d < point.size(); ++d) point[d] = base[d] + gap * (nb[d] - base[d]);
        out.features.append_row(point);
        out.labels.push_back(c);
      }
    }
  }
  return out;
}

std::vector<Label> cost_sensitive_decide(const ProbTable& probs, std::span<const std::size_t> class_counts) {
  const std::size_t m = probs.classes();
  if (class_counts.size() != m) throw std::invalid_argument("cost_sensitive_decide: class count mismatch");
  for (const auto c : class_counts) {
    if (c == 0) throw std::invalid_argument("cost_sensitive_decide: every class needs a positive count");
  }
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i) w[i] = 1.0 / static_cast<double>(class_counts[i]);
  return decide_weighted(probs, ParamVector::weights(std::move(w)));
}

std::vector<Label> chow_reject_decide(const ProbTable& probs, double t) {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("chow_reject_decide: t must lie in [0, 1)");
  return decide_abstaining(probs, ParamVector::rejection_thresholds(std::vector<double>(probs.classes(), t)));
}

double gmean_objective(const ConfusionMatrix& cm) { return gmean(cm); }

}  // namespace cfl
