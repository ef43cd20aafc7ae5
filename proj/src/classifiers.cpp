#include "cfl/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cfl/diagnostics.hpp"

namespace cfl {

ProbTable::ProbTable(Matrix probs) : probs_(std::move(probs)) {
  for (std::size_t l = 0; l < probs_.rows(); ++l) {
    double sum = 0.0;
    for (const double p : probs_.row(l)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("ProbTable: row " + std::to_string(l) + " has an entry outside [0, 1]");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("ProbTable: row " + std::to_string(l) + " does not sum to 1");
    }
  }
}

ProbTable ProbTable::from_rows(const std::vector<std::vector<double>>& rows) {
  return ProbTable(Matrix::from_rows(rows));
}

ProbTable ProbTable::select_rows(std::span<const std::size_t> indices) const {
  ProbTable out;
  out.probs_ = probs_.select_rows(indices);
  return out;
}

namespace {

void check_train(const Dataset& train) {
  train.validate();
  if (train.size() == 0) throw std::invalid_argument("classifier: empty training set");
  if (train.classes < 2) throw std::invalid_argument("classifier: need at least two classes");
}

void check_query(const Matrix& query, std::size_t dim) {
  if (query.rows() > 0 && query.cols() != dim) {
    throw std::invalid_argument("classifier: query dimension " + std::to_string(query.cols()) +
                                " differs from training dimension " + std::to_string(dim));
  }
}

}  // namespace

KnnModel knn_fit(const Dataset& train, std::size_t k) {
  check_train(train);
  if (k == 0) throw std::invalid_argument("knn_fit: k must be at least 1");
  if (k > train.size()) {
    throw std::invalid_argument("knn_fit: k = " + std::to_string(k) + " exceeds the training size " +
                                std::to_string(train.size()));
  }
  return {k, train.classes, train.features, train.labels};
}

ProbTable knn_predict_proba(const KnnModel& model, const Matrix& query) {
  check_query(query, model.features.cols());
  const std::size_t n = model.features.rows();
  const std::size_t m = model.classes;
  const double denom = static_cast<double>(model.k + m);
  Matrix out(query.rows(), m);
  std::vector<std::pair<double, std::size_t>> dist(n);
  std::vector<std::size_t> votes(m);
  for (std::size_t q = 0; q < query.rows(); ++q) {
    for (std::size_t i = 0; i < n; ++i) dist[i] = {squared_distance(query.row(q), model.features.row(i)), i};
    // Pair ordering breaks distance ties by training index.
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(model.k), dist.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (std::size_t j = 0; j < model.k; ++j) ++votes[static_cast<std::size_t>(model.labels[dist[j].second])];
    for (std::size_t i = 0; i < m; ++i) out(q, i) = static_cast<double>(votes[i] + 1) / denom;
  }
  return ProbTable(std::move(out));
}

namespace {

ParzenBayesModel parzen_base(const Dataset& train) {
  check_train(train);
  ParzenBayesModel model;
  model.classes = train.classes;
  model.features = train.features;
  model.labels = train.labels;
  const auto counts = train.class_counts();
  model.priors.resize(train.classes);
  for (std::size_t i = 0; i < train.classes; ++i) {
    model.priors[i] = static_cast<double>(counts[i]) / static_cast<double>(train.size());
  }
  return model;
}

}  // namespace

ParzenBayesModel parzen_fit(const Dataset& train, std::size_t r) {
  auto model = parzen_base(train);
  const std::size_t n = train.size();
  if (n < 2) throw std::invalid_argument("parzen_fit: need at least two training points");
  if (r == 0) throw std::invalid_argument("parzen_fit: r must be at least 1");
  if (r > n - 1) {
    warn("parzen_fit: training set of " + std::to_string(n) + " points is too small for r = " +
         std::to_string(r) + "; using r = " + std::to_string(n - 1));
    r = n - 1;
  }
  std::vector<double> d(n - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t o = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) d[o++] = squared_distance(train.features.row(i), train.features.row(j));
    }
    std::nth_element(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(r - 1), d.end());
    total += std::sqrt(d[r - 1]);
  }
  model.bandwidth = std::max(total / static_cast<double>(n), kMinBandwidth);
  return model;
}

ParzenBayesModel parzen_fit_bandwidth(const Dataset& train, double bandwidth) {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("parzen_fit_bandwidth: bandwidth must be positive");
  auto model = parzen_base(train);
  model.bandwidth = bandwidth;
  return model;
}

ProbTable parzen_predict_proba(const ParzenBayesModel& model, const Matrix& query) {
  check_query(query, model.features.cols());
  const std::size_t m = model.classes;
  const std::size_t n = model.features.rows();
  const double inv = 1.0 / (2.0 * model.bandwidth * model.bandwidth);
  std::vector<std::size_t> counts(m, 0);
  for (const auto l : model.labels) ++counts[static_cast<std::size_t>(l)];

  Matrix out(query.rows(), m);
  std::vector<double> exponents(n);
  std::vector<double> peak(m);
  std::vector<double> acc(m);
  std::vector<double> logpost(m);
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  for (std::size_t q = 0; q < query.rows(); ++q) {
    std::fill(peak.begin(), peak.end(), kNegInf);
    for (std::size_t j = 0; j < n; ++j) {
      exponents[j] = -squared_distance(query.row(q), model.features.row(j)) * inv;
      auto& p = peak[static_cast<std::size_t>(model.labels[j])];
      p = std::max(p, exponents[j]);
    }
    std::fill(acc.begin(), acc.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = static_cast<std::size_t>(model.labels[j]);
      acc[c] += std::exp(exponents[j] - peak[c]);
    }
    // log(prior * mean kernel) up to a constant shared by all classes.
    double top = kNegInf;
    for (std::size_t i = 0; i < m; ++i) {
      logpost[i] = counts[i] > 0 ? std::log(model.priors[i]) + peak[i] + std::log(acc[i]) -
                                       std::log(static_cast<double>(counts[i]))
                                 : kNegInf;
      if (std::isfinite(logpost[i])) top = std::max(top, logpost[i]);
    }
    if (!std::isfinite(top)) {
      for (std::size_t i = 0; i < m; ++i) out(q, i) = model.priors[i];
      continue;
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double v = std::isfinite(logpost[i]) ? std::exp(logpost[i] - top) : 0.0;
      out(q, i) = v;
      sum += v;
    }
    for (std::size_t i = 0; i < m; ++i) out(q, i) /= sum;
  }
  return ProbTable(std::move(out));
}

}  // namespace cfl
