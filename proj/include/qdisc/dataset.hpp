#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qdisc {

using Label = int;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  void append_row(std::span<const double> r);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct LabeledDataset {
  Matrix features;
  std::vector<Label> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t dims() const noexcept { return features.cols(); }

  // Throws DomainError if row count and label count disagree or a feature is
  // not finite.
  void validate() const;

  // Sorted distinct labels.
  std::vector<Label> classes() const;

  // Rows with the given indices, in that order.
  LabeledDataset subset(std::span<const std::size_t> rows) const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

}  // namespace qdisc
