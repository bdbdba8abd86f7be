#include "qdisc/discrim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"

namespace qdisc {

namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kProbCeil = 1.0 - 1e-16;

double clamp_prob(double p) { return std::clamp(p, kProbFloor, kProbCeil); }

struct SampleMoments {
  double mean = 0.0;
  double centred_ss = 0.0;  // sum of squared deviations from the mean
  std::size_t n = 0;
};

template <typename Value>
SampleMoments moments_of(std::size_t n, Value&& value) {
  SampleMoments m;
  m.n = n;
  m.mean = blocked_sum(n, value) / static_cast<double>(n);
  m.centred_ss = blocked_sum(n, [&](std::size_t i) {
    const double d = value(i) - m.mean;
    return d * d;
  });
  return m;
}

}  // namespace

CodeProbabilities binary_probabilities(const ClassPairModel& model, double tau) {
  const double mu = model.mu();
  const double sigma = model.sigma();
  return {std_normal_cdf((tau - mu) / sigma), std_normal_cdf((tau + mu) / sigma)};
}

CodeProbabilities ternary_probabilities(const ClassPairModel& model, double tau) {
  const double mu = model.mu();
  const double sigma = model.sigma();
  return {std_normal_cdf((-tau - mu) / sigma), std_normal_cdf((-tau + mu) / sigma)};
}

DistanceMoments original_moments(const ClassPairModel& model) {
  const double var = model.variance();
  const double mu2 = model.mu() * model.mu();
  return {2.0 * var + 4.0 * mu2, 4.0 * var};
}

DistanceMoments binary_moments(const ClassPairModel& model, double tau) {
  // Complements come from the mirrored argument rather than 1 - p, which
  // keeps full precision when a class sits deep on one side of tau.
  const double mu = model.mu();
  const double sigma = model.sigma();
  const double a = std_normal_cdf((tau - mu) / sigma);
  const double a_c = std_normal_cdf((mu - tau) / sigma);
  const double b = std_normal_cdf((tau + mu) / sigma);
  const double b_c = std_normal_cdf(-(tau + mu) / sigma);
  if ((a < kProbFloor && b < kProbFloor) || (a_c < kProbFloor && b_c < kProbFloor)) {
    throw SaturationError("binary threshold saturates: every sample maps to the same code");
  }
  const double pa = std::max(a, kProbFloor), qa = std::max(a_c, kProbFloor);
  const double pb = std::max(b, kProbFloor), qb = std::max(b_c, kProbFloor);
  return {pa * qb + pb * qa, 2.0 * (pa * qa + pb * qb)};
}

DistanceMoments ternary_moments(const ClassPairModel& model, double tau) {
  if (!(tau >= 0.0)) throw DomainError("ternary threshold must be >= 0");
  const double mu = model.mu();
  const double sigma = model.sigma();
  // Class +mu: P(-1) = a, P(+1) = b, P(0) = zero; class -mu mirrors it.
  const double a = std::max(std_normal_cdf((-tau - mu) / sigma), 0.0);
  const double b = std_normal_cdf((mu - tau) / sigma);
  const double b_c = std_normal_cdf((tau - mu) / sigma);
  if (a + b < kProbFloor) {
    throw SaturationError("ternary threshold saturates: every sample maps to zero");
  }
  const double zero = std::max(b_c - a, 0.0);
  const double m = b - a;
  const double var = a * (1.0 + m) * (1.0 + m) + zero * m * m + b * (b_c + a) * (b_c + a);
  return {2.0 * var + 4.0 * m * m, 4.0 * var};
}

DistanceMoments quantized_moments(const ClassPairModel& model, const QuantScheme& scheme) {
  return scheme.kind() == QuantKind::Binary ? binary_moments(model, scheme.tau())
                                            : ternary_moments(model, scheme.tau());
}

double d_original(const ClassPairModel& model) {
  const double var = model.variance();
  return (var + 2.0 * model.mu() * model.mu()) / (2.0 * var);
}

double d_binary(const ClassPairModel& model, double tau) { return binary_moments(model, tau).ratio(); }

double d_ternary(const ClassPairModel& model, double tau) { return ternary_moments(model, tau).ratio(); }

double binary_discrimination(double alpha, double beta) {
  const double a = clamp_prob(alpha);
  const double b = clamp_prob(beta);
  return (a - 2.0 * a * b + b) / ((2.0 * a - 2.0 * a * a) + (2.0 * b - 2.0 * b * b));
}

double ternary_discrimination(double alpha, double beta) {
  const double a = clamp_prob(alpha);
  const double b = clamp_prob(beta);
  return (a + a * a - 2.0 * a * b + b + b * b) / (2.0 * (a - a * a + 2.0 * a * b + b - b * b));
}

double binary_condition(const ClassPairModel& model, double tau) {
  const auto [a, b] = binary_probabilities(model, tau);
  const double mu = model.mu();
  const double mu2 = mu * mu;
  return b - a + (mu2 * (1.0 - 2.0 * b) - mu * std::sqrt(mu2 + 4.0 * b * (1.0 - b))) / (1.0 + mu2);
}

double ternary_condition(const ClassPairModel& model, double tau) {
  if (!(tau >= 0.0)) throw DomainError("ternary threshold must be >= 0");
  const auto [a, b] = ternary_probabilities(model, tau);
  const double mu2 = model.mu() * model.mu();
  return b - a + (mu2 - std::sqrt(mu2 * mu2 + 8.0 * mu2 * b)) / 2.0;
}

double enhancement_condition(const ClassPairModel& model, const QuantScheme& scheme) {
  return scheme.kind() == QuantKind::Binary ? binary_condition(model, scheme.tau())
                                            : ternary_condition(model, scheme.tau());
}

DiscriminationReport evaluate(const ClassPairModel& model, const QuantScheme& scheme) {
  const auto probs = scheme.kind() == QuantKind::Binary ? binary_probabilities(model, scheme.tau())
                                                        : ternary_probabilities(model, scheme.tau());
  const double condition = enhancement_condition(model, scheme);
  return DiscriminationReport{model,
                              scheme,
                              probs.alpha,
                              probs.beta,
                              d_original(model),
                              quantized_moments(model, scheme).ratio(),
                              condition,
                              condition > 0.0};
}

double empirical_discrimination(std::span<const double> x, std::span<const double> y,
                                const std::optional<QuantScheme>& scheme) {
  if (x.size() < 2 || y.size() < 2) {
    throw DomainError("empirical_discrimination: need at least 2 samples per class");
  }
  auto value_of = [&](std::span<const double> s) {
    return [s, &scheme](std::size_t i) {
      return scheme ? static_cast<double>(quantize_scalar(s[i], *scheme)) : s[i];
    };
  };
  const SampleMoments mx = moments_of(x.size(), value_of(x));
  const SampleMoments my = moments_of(y.size(), value_of(y));

  const auto nx = static_cast<double>(mx.n);
  const auto ny = static_cast<double>(my.n);
  // mean over all (i, j) of (x_i - y_j)^2
  const double gap = mx.mean - my.mean;
  const double inter = mx.centred_ss / nx + my.centred_ss / ny + gap * gap;
  // mean over all i != j of (x_i - x_j)^2 is twice the unbiased variance
  const double intra = 2.0 * mx.centred_ss / (nx - 1.0) + 2.0 * my.centred_ss / (ny - 1.0);
  if (intra == 0.0) return std::numeric_limits<double>::infinity();
  return inter / intra;
}

}  // namespace qdisc
