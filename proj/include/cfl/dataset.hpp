#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cfl/common.hpp"

namespace cfl {

// Feature matrix with 0-based class labels. Class 0 is the largest class and
// indices ascend with rarity, so in binary tasks class 0 is the negative
// (majority) class and class 1 the positive (minority) class.
struct Dataset {
  Matrix features;
  std::vector<Label> labels;
  std::size_t classes = 0;
  std::vector<std::string> class_names;

  std::size_t size() const { return labels.size(); }
  std::size_t dimension() const { return features.cols(); }
  std::vector<std::size_t> class_counts() const;
  Dataset subset(std::span<const std::size_t> indices) const;
  // Throws unless labels are in range and features/labels agree in length.
  void validate() const;
};

// Per-dimension min-max transform. Constant columns map to zero.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const Matrix& features);
  Matrix apply(const Matrix& features) const;

 private:
  std::vector<double> min_;
  std::vector<double> range_;
};

struct CsvSpec {
  // Column holding the class label: a header name or a 0-based index.
  // Empty means the last column.
  std::string label_column;
  // When set, this label value becomes the positive class and every other
  // value is merged into the negative class (one-vs-rest binarization).
  std::optional<std::string> positive_class;
  bool has_header = true;
};

// Parses CSV text, reindexes classes by descending frequency (ties broken by
// first appearance) and min-max rescales every feature to [0, 1].
Dataset parse_csv(const std::string& text, const CsvSpec& spec = {});
Dataset ingest_csv(const std::string& path, const CsvSpec& spec = {});

// Fold id in [0, folds) per instance. Each class is shuffled and dealt
// round-robin, so every fold holds floor or ceil of C_i / folds instances of
// class i. Throws when a class has fewer than `folds` members.
std::vector<std::size_t> stratified_folds(std::span<const Label> labels, std::size_t classes,
                                          std::size_t folds, std::uint64_t seed);

}  // namespace cfl
