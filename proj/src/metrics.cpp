#include "cfl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cfl {

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::vector<Count> counts)
    : classes_(classes), counts_(std::move(counts)) {
  total_ = std::accumulate(counts_.begin(), counts_.end(), Count{0});
}

ConfusionMatrix ConfusionMatrix::from_counts(const std::vector<std::vector<Count>>& rows) {
  const std::size_t m = rows.size();
  if (m < 2) throw std::invalid_argument("ConfusionMatrix: need at least two classes");
  std::vector<Count> flat;
  flat.reserve(m * (m + 1));
  for (const auto& r : rows) {
    if (r.size() != m + 1) {
      throw std::invalid_argument("ConfusionMatrix: each row needs m+1 = " + std::to_string(m + 1) +
                                  " entries");
    }
    for (const auto c : r) {
      if (c < 0) throw std::invalid_argument("ConfusionMatrix: negative count");
      flat.push_back(c);
    }
  }
  return ConfusionMatrix(m, std::move(flat));
}

ConfusionMatrix ConfusionMatrix::from_csv(const std::string& text) {
  std::vector<std::vector<Count>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<Count> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      const long long v = std::stoll(cell, &used);
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  return from_counts(rows);
}

ConfusionMatrix::Count ConfusionMatrix::row_total(std::size_t target) const {
  Count s = 0;
  for (std::size_t j = 0; j <= classes_; ++j) s += count(target, j);
  return s;
}

ConfusionMatrix::Count ConfusionMatrix::column_total(std::size_t decision) const {
  Count s = 0;
  for (std::size_t i = 0; i < classes_; ++i) s += count(i, decision);
  return s;
}

ConfusionMatrix ConfusionMatrix::scaled(Count factor) const {
  if (factor <= 0) throw std::invalid_argument("ConfusionMatrix::scaled: factor must be positive");
  auto c = counts_;
  for (auto& v : c) v *= factor;
  return ConfusionMatrix(classes_, std::move(c));
}

std::string ConfusionMatrix::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < classes_; ++i) {
    for (std::size_t j = 0; j <= classes_; ++j) {
      if (j) out << ',';
      out << count(i, j);
    }
    out << '\n';
  }
  return out.str();
}

ConfusionMatrix build_confusion(std::span<const Label> targets, std::span<const Label> decisions,
                                std::size_t classes) {
  if (targets.size() != decisions.size()) {
    throw std::invalid_argument("build_confusion: targets and decisions differ in length");
  }
  if (targets.empty()) throw std::invalid_argument("build_confusion: empty input");
  if (classes < 2) throw std::invalid_argument("build_confusion: need at least two classes");
  std::vector<std::vector<ConfusionMatrix::Count>> rows(classes,
                                                        std::vector<ConfusionMatrix::Count>(classes + 1, 0));
  const auto m = static_cast<Label>(classes);
  for (std::size_t l = 0; l < targets.size(); ++l) {
    const Label t = targets[l];
    const Label y = decisions[l];
    if (t < 0 || t >= m) throw std::invalid_argument("build_confusion: target label out of range");
    if (y < 0 || y > m) throw std::invalid_argument("build_confusion: decision label out of range");
    ++rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(y)];
  }
  return ConfusionMatrix::from_counts(rows);
}

namespace {

void require_two_classes(const ConfusionMatrix& cm) {
  std::size_t populated = 0;
  for (std::size_t i = 0; i < cm.classes(); ++i) {
    if (cm.row_total(i) > 0) ++populated;
  }
  if (populated < 2) {
    throw UndefinedMetricError("NI undefined: target entropy is zero (fewer than two populated classes)");
  }
}

}  // namespace

double mutual_information_bits(const ConfusionMatrix& cm) {
  const double n = static_cast<double>(cm.total());
  if (n <= 0) throw UndefinedMetricError("mutual information of an empty confusion matrix");
  const std::size_t m = cm.classes();
  double acc = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double col = static_cast<double>(cm.column_total(j));
    if (col == 0.0) continue;
    for (std::size_t i = 0; i < m; ++i) {
      const double c = static_cast<double>(cm.count(i, j));
      if (c == 0.0) continue;
      const double row = static_cast<double>(cm.row_total(i));
      acc += c * std::log2(n * c / (row * col));
    }
  }
  return acc / n;
}

double target_entropy_bits(const ConfusionMatrix& cm) {
  const double n = static_cast<double>(cm.total());
  if (n <= 0) throw UndefinedMetricError("entropy of an empty confusion matrix");
  double h = 0.0;
  for (std::size_t i = 0; i < cm.classes(); ++i) {
    const double c = static_cast<double>(cm.row_total(i));
    if (c > 0) h -= (c / n) * std::log2(c / n);
  }
  return h;
}

double normalized_mutual_information(const ConfusionMatrix& cm) {
  require_two_classes(cm);
  const double ni = mutual_information_bits(cm) / target_entropy_bits(cm);
  // Rounding can push the log-sum marginally outside [0, 1].
  return std::clamp(ni, 0.0, 1.0);
}

double gmean(const ConfusionMatrix& cm) {
  const std::size_t m = cm.classes();
  double log_sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = cm.row_total(i);
    if (row == 0) throw UndefinedMetricError("G-mean undefined: class " + std::to_string(i) + " is empty");
    const auto diag = cm.count(i, i);
    if (diag == 0) return 0.0;
    log_sum += std::log(static_cast<double>(diag) / static_cast<double>(row));
  }
  return std::exp(log_sum / static_cast<double>(m));
}

std::optional<double> fmeasure(const ConfusionMatrix& cm) {
  if (cm.classes() != 2) return std::nullopt;
  const double tp = static_cast<double>(cm.count(1, 1));
  const double fp = static_cast<double>(cm.count(0, 1));
  const double positives = static_cast<double>(cm.row_total(1));
  const double precision = (tp + fp) > 0 ? tp / (tp + fp) : 0.0;
  const double recall = positives > 0 ? tp / positives : 0.0;
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MetricReport report(const ConfusionMatrix& cm, bool abstaining) {
  const std::size_t m = cm.classes();
  if (!abstaining && cm.rejected() != 0) {
    throw std::invalid_argument("report: non-abstaining evaluation has rejected instances");
  }
  MetricReport r;
  r.abstaining = abstaining;
  r.ni = normalized_mutual_information(cm);
  const double n = static_cast<double>(cm.total());
  double correct = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double row = static_cast<double>(cm.row_total(i));
    const double diag = static_cast<double>(cm.count(i, i));
    const double rej = static_cast<double>(cm.count(i, m));
    correct += diag;
    if (row > 0) {
      r.class_accuracy.push_back(diag / row);
      r.class_reject.push_back(rej / row);
      r.class_error.push_back((row - diag - rej) / row);
    } else {
      r.class_accuracy.push_back(0.0);
      r.class_reject.push_back(0.0);
      r.class_error.push_back(0.0);
    }
  }
  const double rejected = static_cast<double>(cm.rejected());
  r.reject = rejected / n;
  r.error = (n - correct - rejected) / n;
  r.accuracy = (n - rejected) > 0 ? correct / (n - rejected) : 0.0;
  r.gmean = gmean(cm);
  r.fmeasure = fmeasure(cm);
  return r;
}

}  // namespace cfl
