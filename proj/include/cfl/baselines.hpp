#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfl/classifiers.hpp"
#include "cfl/dataset.hpp"
#include "cfl/metrics.hpp"

namespace cfl {

struct SmoteConfig {
  std::vector<std::size_t> amounts{1, 2, 3, 4, 5};
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 0;
};

// Appends `amount` synthetic points per instance of every listed class. Each
// point interpolates between the instance and one of its k nearest same-class
// neighbours. A single-instance class is duplicated with a warning. The input
// rows are kept in place.
Dataset smote_oversample(const Dataset& train, std::span<const Label> minority, std::size_t amount,
                         std::size_t k_neighbors, std::uint64_t seed);

// Minimum conditional risk with lambda_ij = n / C_i (i != j) and lambda_ii = 0,
// i.e. argmax_j phi_j / C_j. Ties go to the larger index.
std::vector<Label> cost_sensitive_decide(const ProbTable& probs, std::span<const std::size_t> class_counts);

// Abstaining rule with every rejection threshold equal to t.
std::vector<Label> chow_reject_decide(const ProbTable& probs, double t = 0.3);

// Geometric mean of c_ii / C_i; rejections count as failures.
double gmean_objective(const ConfusionMatrix& cm);

}  // namespace cfl
