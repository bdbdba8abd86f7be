#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "qdisc/discrim.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/quant_core.hpp"
#include "qdisc/rng.hpp"
#include "qdisc/threshold_opt.hpp"

using namespace qdisc;

namespace {

const ClassPairModel kModel = ClassPairModel::standardized(0.8);

struct GridMin {
  double tau;
  double value;
};

GridMin grid_minimum(const ClassPairModel& m, QuantKind kind, double lo, double hi, double step) {
  GridMin best{lo, std::numeric_limits<double>::infinity()};
  for (long i = 0; lo + i * step <= hi + 1e-12; ++i) {
    const double tau = lo + i * step;
    const double g = objective(m, kind, tau);
    if (g < best.value) best = {tau, g};
  }
  return best;
}

double brute_force_mqe(const std::vector<double>& v, QuantKind kind, bool scaled, double lo, double hi, double step) {
  double best = std::numeric_limits<double>::infinity();
  for (double tau = lo; tau <= hi; tau += step) {
    best = std::min(best, quantization_error(v, QuantScheme::make(kind, tau), scaled));
  }
  return best;
}

}  // namespace

TEST_CASE("objectives are negated conditions") {
  CHECK(binary_objective(kModel, 0.0) == doctest::Approx(-0.0177).epsilon(0.03));
  CHECK(ternary_objective(kModel, 0.0) == doctest::Approx(-0.0126).epsilon(0.04));
  CHECK(ternary_objective(kModel, 0.6) == doctest::Approx(0.0129).epsilon(0.04));
  for (double tau : {-0.4, 0.0, 0.25}) CHECK(binary_objective(kModel, tau) == -binary_condition(kModel, tau));
}

TEST_CASE("gradients match central differences") {
  auto gb = [](double t) { return binary_objective(kModel, t); };
  auto gt = [](double t) { return ternary_objective(kModel, t); };
  CHECK(std::abs(binary_gradient(kModel, 0.5) - oracle::central_difference(gb, 0.5)) < 1e-6);
  CHECK(std::abs(ternary_gradient(kModel, 0.5) - oracle::central_difference(gt, 0.5)) < 1e-6);

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto m = ClassPairModel::standardized(0.05 + 0.9 * rng.uniform());
    const double tau = 2.0 * rng.uniform() - 1.0;
    auto fb = [&](double t) { return binary_objective(m, t); };
    CHECK(std::abs(binary_gradient(m, tau) - oracle::central_difference(fb, tau)) < 1e-6);
    const double tt = std::abs(tau) + 1e-3;
    auto ft = [&](double t) { return ternary_objective(m, t); };
    CHECK(std::abs(ternary_gradient(m, tt) - oracle::central_difference(ft, tt)) < 1e-6);
  }
}

TEST_CASE("radical identity used by the ternary gradient") {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double mu = rng.uniform() + 1e-6, beta = rng.uniform();
    CHECK(std::sqrt(std::pow(mu, 4) + 8 * mu * mu * beta) == doctest::Approx(mu * std::sqrt(mu * mu + 8 * beta)).epsilon(1e-13));
  }
}

TEST_CASE("binary objective is not even in tau") {
  // Only the sign of the condition is symmetric; the minimizer sits slightly
  // right of zero and the slope at zero is small but nonzero.
  const double slope = binary_gradient(kModel, 0.0);
  CHECK(slope < 0.0);
  CHECK(std::abs(slope) < 0.01);
  CHECK(solve_threshold(kModel, QuantKind::Binary).tau_star > 0.0);
}

TEST_CASE("solver config validation") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.armijo_c = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.step_shrink = 0.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("binary solve from 0.5") {
  SolverConfig cfg;
  cfg.tau0 = 0.5;
  const auto r = solve_threshold(kModel, QuantKind::Binary, cfg);
  CHECK(r.objective_value < 0.0);
  CHECK(r.condition_satisfied);
  CHECK(r.tau_star >= -0.2);
  CHECK(r.tau_star <= 0.2);
  const auto grid = grid_minimum(kModel, QuantKind::Binary, -1.0, 1.0, 0.001);
  CHECK(r.objective_value <= grid.value + 1e-6);
}

TEST_CASE("ternary solve from 1.0 stays feasible") {
  SolverConfig cfg;
  cfg.tau0 = 1.0;
  const auto r = solve_threshold(kModel, QuantKind::Ternary, cfg);
  CHECK(r.tau_star >= 0.0);
  CHECK(r.tau_star <= 0.5);
  CHECK(r.objective_value < 0.0);
  const auto grid = grid_minimum(kModel, QuantKind::Ternary, 0.0, 1.0, 0.001);
  CHECK(r.objective_value <= grid.value + 1e-6);
  for (const auto& s : r.trace) CHECK(s.tau_after >= 0.0);
}

TEST_CASE("no enhancing threshold for weak separation") {
  const auto weak = ClassPairModel::standardized(0.3);
  for (double tau0 : {-1.0, 0.0, 0.7}) {
    SolverConfig cfg;
    cfg.tau0 = tau0;
    CHECK_FALSE(solve_threshold(weak, QuantKind::Binary, cfg).condition_satisfied);
  }
  CHECK(grid_minimum(weak, QuantKind::Binary, -3.0, 3.0, 0.001).value > 0.0);
}

TEST_CASE("accepted steps satisfy the sufficient-decrease test") {
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    const auto m = ClassPairModel::standardized(0.5 + 0.45 * rng.uniform());
    for (auto kind : {QuantKind::Binary, QuantKind::Ternary}) {
      SolverConfig cfg;
      cfg.tau0 = 2.0 * rng.uniform() - (kind == QuantKind::Binary ? 1.0 : 0.0);
      const auto r = descend(m, kind, cfg, cfg.tau0);
      double previous = std::numeric_limits<double>::infinity();
      for (const auto& s : r.trace) {
        CHECK(s.objective_after <= s.objective_before - cfg.armijo_c * s.gradient * (s.tau_before - s.tau_after));
        CHECK(s.objective_before <= previous);
        previous = s.objective_after;
      }
      CHECK(r.iterations == static_cast<int>(r.trace.size()));
      if (r.converged && !(kind == QuantKind::Ternary && r.tau_star == 0.0)) {
        CHECK(std::abs(gradient(m, kind, r.tau_star)) < cfg.grad_tol);
      }
    }
  }
}

TEST_CASE("iteration cap reports non-convergence") {
  SolverConfig cfg;
  cfg.max_iters = 1;
  cfg.tau0 = 0.9;
  const auto r = descend(kModel, QuantKind::Binary, cfg, cfg.tau0);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations <= 1);
}

TEST_CASE("mqe examples") {
  SUBCASE("perfect ternary reconstruction") {
    const auto r = solve_mqe_threshold(std::vector<double>{-1.0, 1.0}, QuantKind::Ternary, false);
    CHECK(r.tau < 1.0);
    CHECK(r.error == doctest::Approx(0.0));
  }
  SUBCASE("constant positive samples, binary scaled") {
    const std::vector<double> v{0.1, 0.1};
    const auto r = solve_mqe_threshold(v, QuantKind::Binary, true);
    CHECK(r.tau < 0.1);
    CHECK(r.error == doctest::Approx(0.0));
    CHECK(r.warning.has_value());
  }
  SUBCASE("standard normal, ternary scaled, against a dense grid") {
    Rng rng(13);
    std::vector<double> v(100000);
    for (double& x : v) x = rng.normal();
    const auto r = solve_mqe_threshold(v, QuantKind::Ternary, true);
    double best_tau = 0.0, best = std::numeric_limits<double>::infinity();
    for (double tau = 0.0; tau <= 2.0; tau += 0.001) {
      const double e = quantization_error(v, QuantScheme::ternary(tau), true);
      if (e < best) {
        best = e;
        best_tau = tau;
      }
    }
    CHECK(std::abs(r.tau / best_tau - 1.0) < 0.02);
    CHECK(r.error <= best + 1e-12);
  }
}

TEST_CASE("mqe is the exact minimum over thresholds") {
  // Samples on a 0.05 lattice, so a 0.0125 grid visits every interval
  // between breakpoints and the grid minimum is exact.
  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(2 + rng.below(299));
    for (double& x : v) x = std::clamp(std::round(rng.normal(0.3, 1.0) * 20.0) / 20.0, -3.5, 3.5);
    for (auto kind : {QuantKind::Binary, QuantKind::Ternary}) {
      for (bool scaled : {false, true}) {
        const auto r = solve_mqe_threshold(v, kind, scaled);
        const double lo = kind == QuantKind::Binary ? -4.0 : 0.0;
        const double oracle = brute_force_mqe(v, kind, scaled, lo, 4.0, 0.0125);
        CHECK(std::abs(r.error - oracle) < 1e-9);
        CHECK(r.error == doctest::Approx(quantization_error(v, QuantScheme::make(kind, r.tau), scaled)));
      }
    }
  }
}
