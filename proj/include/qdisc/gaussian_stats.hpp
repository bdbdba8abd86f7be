#pragma once

#include <string>
#include <vector>

#include "qdisc/dataset.hpp"

namespace qdisc {

// Standard normal CDF, evaluated through the complementary error function so
// that both tails keep full relative precision.
double std_normal_cdf(double x);
double std_normal_pdf(double x);

// Two symmetric Gaussian classes N(+mu, sigma^2) and N(-mu, sigma^2).
class ClassPairModel {
 public:
  // Requires 0 < mu < 1 and sigma > 0.
  ClassPairModel(double mu, double sigma);

  // The post-standardization form with sigma = sqrt(1 - mu^2).
  static ClassPairModel standardized(double mu);

  double mu() const noexcept { return mu_; }
  double sigma() const noexcept { return sigma_; }
  double variance() const noexcept { return sigma_ * sigma_; }

 private:
  double mu_;
  double sigma_;
};

// Equal-variance classes N(mu1, sigma2) and N(mu2, sigma2) before pooling.
struct RawClassParams {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double sigma2 = 1.0;
};

struct StandardizedParams {
  ClassPairModel model;
  // True when mu1 < mu2 and the class roles were exchanged to keep mu > 0.
  bool classes_swapped = false;
};

// Maps raw class parameters to the model seen after Z-scoring the balanced
// mixture: mu = (d/2)/sqrt(sigma2 + d^2/4), sigma^2 = sigma2/(sigma2 + d^2/4)
// with d = mu1 - mu2. Throws DegenerateError when mu1 == mu2.
StandardizedParams standardize_params(const RawClassParams& raw);

struct StandardizedDataset {
  LabeledDataset data;
  // Columns with (population) variance below 1e-15; emitted as zeros.
  std::vector<std::size_t> constant_columns;
};

// Per-column Z-score over all rows pooled, population (divide-by-N) variance.
StandardizedDataset standardize_dataset(const LabeledDataset& data);

}  // namespace qdisc
