#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qdisc/gaussian_stats.hpp"
#include "qdisc/quant_core.hpp"

namespace qdisc {

// Objectives are the negated enhancement conditions, g(tau) = -condition(tau),
// so any tau with g(tau) < 0 raises discrimination.
double binary_objective(const ClassPairModel& model, double tau);
double binary_gradient(const ClassPairModel& model, double tau);
double ternary_objective(const ClassPairModel& model, double tau);
double ternary_gradient(const ClassPairModel& model, double tau);

double objective(const ClassPairModel& model, QuantKind kind, double tau);
double gradient(const ClassPairModel& model, QuantKind kind, double tau);

struct SolverConfig {
  double armijo_c = 1e-3;
  double grad_tol = 1e-12;
  int max_iters = 10000;
  double tau0 = 0.0;
  double step_init = 1.0;
  double step_shrink = 0.5;
  // Backtracking halvings tried before the line search is declared failed.
  int max_shrinks = 60;

  void validate() const;
};

// One accepted gradient step.
struct SolverStep {
  double tau_before;
  double tau_after;
  double objective_before;
  double objective_after;
  double gradient;
  double step;
};

struct SolverResult {
  double tau_star = 0.0;
  double objective_value = 0.0;
  int iterations = 0;
  bool converged = false;
  bool condition_satisfied = false;  // objective_value < 0
  double start = 0.0;
  std::vector<SolverStep> trace;
};

// Gradient descent with Armijo backtracking from a single start. Ternary
// iterates are projected onto tau >= 0; a ternary iterate pinned at 0 with a
// positive gradient counts as stationary.
SolverResult descend(const ClassPairModel& model, QuantKind kind, const SolverConfig& cfg, double tau0);

// Runs `descend` from cfg.tau0 and from cfg.tau0 + sigma/2 (the second start
// escapes the symmetric stationary point when it is a maximum) and returns
// the run with the lower objective.
SolverResult solve_threshold(const ClassPairModel& model, QuantKind kind, const SolverConfig& cfg = {});

struct MqeResult {
  double tau = 0.0;
  double error = 0.0;
  std::optional<std::string> warning;
};

// Threshold minimizing quantization_error(samples, ., scaled). The error is
// constant between consecutive sample values (binary) or sample magnitudes
// (ternary), so evaluating one threshold per interval is exact. The returned
// tau is the midpoint of the first optimal interval.
MqeResult solve_mqe_threshold(std::span<const double> samples, QuantKind kind, bool scaled);

}  // namespace qdisc
