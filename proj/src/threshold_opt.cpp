#include "qdisc/threshold_opt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "qdisc/discrim.hpp"
#include "qdisc/errors.hpp"

namespace qdisc {

double binary_objective(const ClassPairModel& model, double tau) { return -binary_condition(model, tau); }

double binary_gradient(const ClassPairModel& model, double tau) {
  const double mu = model.mu();
  const double sigma = model.sigma();
  const double mu2 = mu * mu;
  const double b = std_normal_cdf((tau + mu) / sigma);
  const double da = std_normal_pdf((tau - mu) / sigma) / sigma;
  const double db = std_normal_pdf((tau + mu) / sigma) / sigma;
  const double root = std::sqrt(mu2 + 4.0 * b * (1.0 - b));
  return -(1.0 - mu2) / (1.0 + mu2) * db + da + mu * (2.0 * db - 4.0 * b * db) / ((1.0 + mu2) * root);
}

double ternary_objective(const ClassPairModel& model, double tau) { return -ternary_condition(model, tau); }

double ternary_gradient(const ClassPairModel& model, double tau) {
  const double mu = model.mu();
  const double sigma = model.sigma();
  const double b = std_normal_cdf((-tau + mu) / sigma);
  // d/dtau Phi((-tau -/+ mu)/sigma) = -phi(.)/sigma
  const double da = -std_normal_pdf((-tau - mu) / sigma) / sigma;
  const double db = -std_normal_pdf((-tau + mu) / sigma) / sigma;
  return -db + da + 2.0 * mu * db / std::sqrt(mu * mu + 8.0 * b);
}

double objective(const ClassPairModel& model, QuantKind kind, double tau) {
  return kind == QuantKind::Binary ? binary_objective(model, tau) : ternary_objective(model, tau);
}

double gradient(const ClassPairModel& model, QuantKind kind, double tau) {
  return kind == QuantKind::Binary ? binary_gradient(model, tau) : ternary_gradient(model, tau);
}

void SolverConfig::validate() const {
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw DomainError("armijo_c must lie in (0,1)");
  if (!(grad_tol > 0.0)) throw DomainError("grad_tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be positive");
  if (!std::isfinite(tau0)) throw DomainError("tau0 must be finite");
  if (!(step_init > 0.0)) throw DomainError("step_init must be positive");
  if (!(step_shrink > 0.0 && step_shrink < 1.0)) throw DomainError("step_shrink must lie in (0,1)");
  if (max_shrinks < 1) throw DomainError("max_shrinks must be positive");
}

SolverResult descend(const ClassPairModel& model, QuantKind kind, const SolverConfig& cfg, double tau0) {
  cfg.validate();
  const bool projected = kind == QuantKind::Ternary;
  auto project = [projected](double t) { return projected ? std::max(0.0, t) : t; };

  SolverResult result;
  result.start = tau0;
  double tau = project(tau0);
  double g = objective(model, kind, tau);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const double slope = gradient(model, kind, tau);
    const bool pinned = projected && tau == 0.0 && slope > 0.0;
    if (pinned || std::abs(slope) < cfg.grad_tol) {
      result.converged = true;
      break;
    }

    // Armijo test on the projected point; without an active projection the
    // right-hand side is g - c * step * slope^2.
    double step = cfg.step_init;
    bool accepted = false;
    double next_tau = tau;
    double next_g = g;
    for (int shrink = 0; shrink <= cfg.max_shrinks; ++shrink, step *= cfg.step_shrink) {
      next_tau = project(tau - step * slope);
      next_g = objective(model, kind, next_tau);
      if (next_g <= g - cfg.armijo_c * slope * (tau - next_tau)) {
        accepted = true;
        break;
      }
    }
    if (!accepted || next_tau == tau) break;  // line search failed or stalled

    result.trace.push_back({tau, next_tau, g, next_g, slope, step});
    tau = next_tau;
    g = next_g;
    ++result.iterations;
  }

  result.tau_star = tau;
  result.objective_value = g;
  result.condition_satisfied = g < 0.0;
  return result;
}

SolverResult solve_threshold(const ClassPairModel& model, QuantKind kind, const SolverConfig& cfg) {
  SolverResult first = descend(model, kind, cfg, cfg.tau0);
  SolverResult second = descend(model, kind, cfg, cfg.tau0 + 0.5 * model.sigma());
  return second.objective_value < first.objective_value ? second : first;
}

MqeResult solve_mqe_threshold(std::span<const double> samples, QuantKind kind, bool scaled) {
  if (samples.empty()) throw DomainError("solve_mqe_threshold: no samples");
  for (double v : samples) {
    if (!std::isfinite(v)) throw DomainError("solve_mqe_threshold: non-finite sample");
  }
  const auto n = static_cast<double>(samples.size());
  const bool ternary = kind == QuantKind::Ternary;

  // Breakpoints sorted ascending: values (binary) or magnitudes (ternary).
  std::vector<double> keys(samples.begin(), samples.end());
  if (ternary) {
    for (double& k : keys) k = std::abs(k);
  }
  std::sort(keys.begin(), keys.end());

  MqeResult out;
  if (std::adjacent_find(samples.begin(), samples.end(), std::not_equal_to<>()) == samples.end()) {
    out.tau = 0.0;
    out.error = quantization_error(samples, QuantScheme::make(kind, 0.0), scaled);
    out.warning = "all samples are equal; returning tau = 0";
    return out;
  }

  // Suffix sums over keys[j..]: the elements whose code is nonzero once tau
  // sits just below keys[j]. For binary the code is 1 and contributes
  // v and v^2; for ternary the code is sign(v), so v*q = |v| = key.
  const std::size_t m = keys.size();
  std::vector<double> suffix_sum(m + 1, 0.0);
  std::vector<double> suffix_sq(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) {
    suffix_sum[j] = suffix_sum[j + 1] + keys[j];
    suffix_sq[j] = suffix_sq[j + 1] + keys[j] * keys[j];
  }
  const double total_sq = suffix_sq[0];

  // Candidate j: the top (m - j) keys quantize to nonzero.
  auto error_for = [&](std::size_t j) {
    const double active = static_cast<double>(m - j);
    const double s1 = suffix_sum[j];
    double scale = 1.0;
    if (scaled) scale = active > 0.0 ? std::max(0.0, s1 / active) : 0.0;
    // sum (v - s q)^2 = sum v^2 - 2 s sum(v q) + s^2 sum q^2
    return (total_sq - 2.0 * scale * s1 + scale * scale * active) / n;
  };

  auto tau_for = [&](std::size_t j) {
    if (j == m) return keys[m - 1];  // boundary ties fall in the zero code
    if (j == 0) return ternary ? 0.0 : keys[0] - 1.0;
    return 0.5 * (keys[j - 1] + keys[j]);
  };

  // Candidate j needs tau in [keys[j-1], keys[j]); empty when the two keys
  // are equal. A ternary tau cannot go below 0, so j = 0 exists only when
  // no sample is exactly zero.
  bool have = false;
  for (std::size_t j = 0; j <= m; ++j) {
    if (j > 0 && j < m && keys[j] == keys[j - 1]) continue;
    if (ternary && j == 0 && keys[0] == 0.0) continue;
    const double err = error_for(j);
    if (!have || err < out.error) {
      out.error = err;
      out.tau = tau_for(j);
      have = true;
    }
  }
  return out;
}

}  // namespace qdisc
