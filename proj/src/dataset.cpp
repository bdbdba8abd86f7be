#include "qdisc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdisc/errors.hpp"

namespace qdisc {

void Matrix::append_row(std::span<const double> r) {
  if (rows_ == 0 && cols_ == 0) cols_ = r.size();
  if (r.size() != cols_) {
    throw DomainError("row width " + std::to_string(r.size()) + " does not match matrix width " +
                      std::to_string(cols_));
  }
  values_.insert(values_.end(), r.begin(), r.end());
  ++rows_;
}

void LabeledDataset::validate() const {
  if (features.rows() != labels.size()) {
    throw DomainError("dataset has " + std::to_string(features.rows()) + " rows but " +
                      std::to_string(labels.size()) + " labels");
  }
  for (double v : features.values()) {
    if (!std::isfinite(v)) throw DomainError("dataset contains a non-finite feature value");
  }
}

std::vector<Label> LabeledDataset::classes() const {
  std::vector<Label> out(labels);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> rows) const {
  LabeledDataset out;
  out.features = Matrix(rows.size(), dims());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = features.row(rows[i]);
    std::copy(src.begin(), src.end(), out.features.row(i).begin());
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

}  // namespace qdisc
