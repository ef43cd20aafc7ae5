#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cfl/common.hpp"
#include "cfl/dataset.hpp"

namespace cfl {

// n x m posterior estimates. Every row lies in [0, 1] and sums to 1 within 1e-9.
class ProbTable {
 public:
  ProbTable() = default;
  // Validates the row invariant; throws std::invalid_argument otherwise.
  explicit ProbTable(Matrix probs);
  static ProbTable from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return probs_.rows(); }
  std::size_t classes() const { return probs_.cols(); }
  std::span<const double> row(std::size_t l) const { return probs_.row(l); }
  double operator()(std::size_t l, std::size_t i) const { return probs_(l, i); }
  const Matrix& matrix() const { return probs_; }

  ProbTable select_rows(std::span<const std::size_t> indices) const;

 private:
  Matrix probs_;
};

struct KnnModel {
  std::size_t k = 0;
  std::size_t classes = 0;
  Matrix features;
  std::vector<Label> labels;
};

// Stores the training data. Throws when k is zero or exceeds the training size.
KnnModel knn_fit(const Dataset& train, std::size_t k);

// phi_i = (k_i + 1) / (k + m), k_i = votes for class i among the k nearest
// training points by Euclidean distance. Equal distances keep the lower
// training index.
ProbTable knn_predict_proba(const KnnModel& model, const Matrix& query);

struct ParzenBayesModel {
  double bandwidth = 0.0;
  std::size_t classes = 0;
  std::vector<double> priors;
  Matrix features;
  std::vector<Label> labels;
};

inline constexpr double kMinBandwidth = 1e-6;

// Global bandwidth: the mean over training points of the distance to the r-th
// nearest other point, floored at kMinBandwidth. r drops to n - 1 with a
// warning on small training sets.
ParzenBayesModel parzen_fit(const Dataset& train, std::size_t r = 10);
// Same model with a caller-chosen bandwidth.
ParzenBayesModel parzen_fit_bandwidth(const Dataset& train, double bandwidth);

// Posterior proportional to prior times the mean isotropic Gaussian kernel
// over each class. Falls back to the priors when no density is finite.
ProbTable parzen_predict_proba(const ParzenBayesModel& model, const Matrix& query);

}  // namespace cfl
