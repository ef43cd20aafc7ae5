#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfl {

// Class labels are 0-based. In an m-class problem the value m denotes a
// rejected instance.
using Label = int;

inline Label reject_label(std::size_t classes) { return static_cast<Label>(classes); }

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const double> values);
  Matrix select_rows(std::span<const std::size_t> indices) const;

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Raised when a metric is mathematically undefined for its input, e.g. NI of
// a single-class target vector.
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace cfl
