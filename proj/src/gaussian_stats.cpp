#include "qdisc/gaussian_stats.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"

namespace qdisc {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": argument is not finite");
}

}  // namespace

double std_normal_cdf(double x) {
  require_finite(x, "std_normal_cdf");
  // erfc keeps relative accuracy in the lower tail where 1 + erf(.) would
  // cancel.
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double std_normal_pdf(double x) {
  require_finite(x, "std_normal_pdf");
  constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

ClassPairModel::ClassPairModel(double mu, double sigma) : mu_(mu), sigma_(sigma) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("class model requires 0 < mu < 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DegenerateError("class model requires sigma > 0");
}

ClassPairModel ClassPairModel::standardized(double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError("class model requires 0 < mu < 1");
  return ClassPairModel(mu, std::sqrt((1.0 - mu) * (1.0 + mu)));
}

StandardizedParams standardize_params(const RawClassParams& raw) {
  if (!(raw.sigma2 > 0.0)) throw DomainError("standardize_params: sigma2 must be positive");
  if (raw.mu1 == raw.mu2) throw DegenerateError("standardize_params: class means coincide");
  const bool swapped = raw.mu1 < raw.mu2;
  const double half_gap = 0.5 * std::abs(raw.mu1 - raw.mu2);
  const double mixture_var = raw.sigma2 + half_gap * half_gap;
  const double mu = half_gap / std::sqrt(mixture_var);
  // sigma from the variance ratio directly rather than sqrt(1 - mu^2), which
  // would lose everything once mu is within an ulp of 1.
  const double sigma = std::sqrt(raw.sigma2 / mixture_var);
  return {ClassPairModel(mu, sigma), swapped};
}

StandardizedDataset standardize_dataset(const LabeledDataset& data) {
  data.validate();
  const std::size_t n = data.size();
  const std::size_t d = data.dims();
  if (n == 0) throw DomainError("standardize_dataset: empty dataset");

  StandardizedDataset out{data, {}};
  std::vector<char> constant(d, 0);
  parallel_for(d, [&](std::size_t c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += data.features(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = data.features(r, c) - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(n);
    if (var < 1e-15) {
      constant[c] = 1;
      for (std::size_t r = 0; r < n; ++r) out.data.features(r, c) = 0.0;
      return;
    }
    const double inv_sd = 1.0 / std::sqrt(var);
    for (std::size_t r = 0; r < n; ++r) out.data.features(r, c) = (data.features(r, c) - mean) * inv_sd;
  });
  for (std::size_t c = 0; c < d; ++c) {
    if (constant[c]) out.constant_columns.push_back(c);
  }
  return out;
}

}  // namespace qdisc
