#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfl/common.hpp"

namespace cfl {

// Augmented m x (m+1) confusion matrix. Rows are target classes, the first m
// columns are predicted classes and column m counts rejections.
class ConfusionMatrix {
 public:
  using Count = std::int64_t;

  // rows.size() == m >= 2, every row has m+1 non-negative entries.
  static ConfusionMatrix from_counts(const std::vector<std::vector<Count>>& rows);
  static ConfusionMatrix from_csv(const std::string& text);

  std::size_t classes() const { return classes_; }
  Count count(std::size_t target, std::size_t decision) const {
    return counts_[target * (classes_ + 1) + decision];
  }
  Count row_total(std::size_t target) const;
  // Sum of column j over all target classes; j == classes() is the reject column.
  Count column_total(std::size_t decision) const;
  Count rejected() const { return column_total(classes_); }
  Count total() const { return total_; }

  ConfusionMatrix scaled(Count factor) const;

  // One line per target class, m+1 comma-separated counts.
  std::string to_csv() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  ConfusionMatrix(std::size_t classes, std::vector<Count> counts);

  std::size_t classes_ = 0;
  std::vector<Count> counts_;
  Count total_ = 0;
};

// Tabulates targets in [0, m) against decisions in [0, m], where m marks a reject.
ConfusionMatrix build_confusion(std::span<const Label> targets, std::span<const Label> decisions,
                                std::size_t classes);

// Normalized mutual information I(T,Y)/H(T) estimated from counts. The
// reject column contributes to the target marginals and n but not to the
// sum over decisions. Throws UndefinedMetricError when fewer than two target
// classes are populated.
double normalized_mutual_information(const ConfusionMatrix& cm);

// Empirical mutual information in bits over the first m decision columns.
double mutual_information_bits(const ConfusionMatrix& cm);
// Empirical target entropy in bits.
double target_entropy_bits(const ConfusionMatrix& cm);

// Geometric mean of within-class accuracies c_ii / C_i.
double gmean(const ConfusionMatrix& cm);

// Binary F1 with class index 1 as the positive class. Precision counts only
// accepted predictions; recall divides by every positive instance.
std::optional<double> fmeasure(const ConfusionMatrix& cm);

struct MetricReport {
  bool abstaining = false;
  double ni = 0.0;
  // Correct decisions over accepted instances; equals plain accuracy when
  // nothing is rejected.
  double accuracy = 0.0;
  double error = 0.0;   // errors / n
  double reject = 0.0;  // rejects / n
  std::vector<double> class_error;
  std::vector<double> class_reject;
  // c_ii / C_i; the correct-recognition rate under abstaining.
  std::vector<double> class_accuracy;
  double gmean = 0.0;
  std::optional<double> fmeasure;
};

MetricReport report(const ConfusionMatrix& cm, bool abstaining);

}  // namespace cfl
