#pragma once

#include <optional>
#include <span>

#include "qdisc/gaussian_stats.hpp"
#include "qdisc/quant_core.hpp"

namespace qdisc {

// Code probabilities of the quantized classes.
//   binary:  alpha = P(X_b = 0) = Phi((tau - mu)/sigma),  beta = P(Y_b = 0) = Phi((tau + mu)/sigma)
//   ternary: alpha = Phi((-tau - mu)/sigma) = P(X_t = -1) = P(Y_t = +1),
//            beta  = Phi((-tau + mu)/sigma) = P(X_t = +1) = P(Y_t = -1)
struct CodeProbabilities {
  double alpha;
  double beta;
};

CodeProbabilities binary_probabilities(const ClassPairModel& model, double tau);
CodeProbabilities ternary_probabilities(const ClassPairModel& model, double tau);

// Expected inter-class squared distance and the sum of the two expected
// intra-class squared distances. Discrimination is inter / intra.
struct DistanceMoments {
  double inter = 0.0;
  double intra = 0.0;

  double ratio() const { return inter / intra; }
  DistanceMoments& operator+=(const DistanceMoments& o) {
    inter += o.inter;
    intra += o.intra;
    return *this;
  }
};

DistanceMoments original_moments(const ClassPairModel& model);
// Throws SaturationError when every sample of both classes lands in one code.
DistanceMoments binary_moments(const ClassPairModel& model, double tau);
DistanceMoments ternary_moments(const ClassPairModel& model, double tau);
DistanceMoments quantized_moments(const ClassPairModel& model, const QuantScheme& scheme);

// (sigma^2 + 2 mu^2) / (2 sigma^2)
double d_original(const ClassPairModel& model);
double d_binary(const ClassPairModel& model, double tau);
double d_ternary(const ClassPairModel& model, double tau);

// Closed forms in terms of the code probabilities; alpha and beta are
// clamped to [1e-300, 1 - 1e-16] first.
double binary_discrimination(double alpha, double beta);
double ternary_discrimination(double alpha, double beta);

// Left-hand sides of the enhancement certificates. Positive exactly when
// quantization at tau raises discrimination above d_original.
//   binary:  beta - alpha + (mu^2 (1 - 2 beta) - mu sqrt(mu^2 + 4 beta (1 - beta))) / (1 + mu^2)
//   ternary: beta - alpha + (mu^2 - sqrt(mu^4 + 8 mu^2 beta)) / 2
double binary_condition(const ClassPairModel& model, double tau);
double ternary_condition(const ClassPairModel& model, double tau);
double enhancement_condition(const ClassPairModel& model, const QuantScheme& scheme);

struct DiscriminationReport {
  ClassPairModel model;
  QuantScheme scheme;
  double alpha;
  double beta;
  double d_original;
  double d_quantized;
  double condition_value;
  bool condition_holds;  // condition_value > 0
};

DiscriminationReport evaluate(const ClassPairModel& model, const QuantScheme& scheme);

// Plug-in estimate of E[(X1-Y1)^2] / (E[(X1-X2)^2] + E[(Y1-Y2)^2]) from
// samples of the two classes, quantizing first when a scheme is given. Each
// expectation is the U-statistic over all distinct pairs, computed in O(N)
// from centred moments. Returns +infinity when the intra-class term is zero.
double empirical_discrimination(std::span<const double> x, std::span<const double> y,
                                const std::optional<QuantScheme>& scheme = std::nullopt);

}  // namespace qdisc
