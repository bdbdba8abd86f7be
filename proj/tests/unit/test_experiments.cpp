#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qdisc/csv.hpp"
#include "qdisc/discrim.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/experiments.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/synth_data.hpp"

using namespace qdisc;

namespace {

Region condition_region(double mu, QuantKind kind, double lo) {
  const auto grid = make_grid(lo, 1.0, 0.01);
  const auto table = theory_sweep(mu, grid, kind);
  std::vector<double> values;
  for (const auto& row : table.rows) values.push_back(row[table.column("condition_value")]);
  return positive_region(grid, values);
}

double column_mean(const CsvTable& t, const std::string& name) {
  double s = 0.0;
  for (const auto& row : t.rows) s += row[t.column(name)];
  return s / static_cast<double>(t.rows.size());
}

}  // namespace

TEST_CASE("grids") {
  const auto g = make_grid(-1.0, 1.0, 0.01);
  CHECK(g.size() == 201);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[100] == 0.0);
  CHECK(g[120] == 0.2);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_grid(1.0, 0.0, 0.1), DomainError);
}

TEST_CASE("positive regions") {
  const std::vector<double> grid{0, 1, 2, 3, 4};
  const auto r = positive_region(grid, std::vector<double>{-1, 1, 2, -1, -1});
  CHECK_FALSE(r.empty);
  CHECK(r.lo == 1);
  CHECK(r.hi == 2);
  CHECK(r.contiguous);
  CHECK_FALSE(positive_region(grid, std::vector<double>{1, -1, 1, -1, -1}).contiguous);
  CHECK(positive_region(grid, std::vector<double>{0, 0, 0, 0, 0}).empty);
}

TEST_CASE("theory sweep regions") {
  const auto b = condition_region(0.8, QuantKind::Binary, -1.0);
  CHECK(std::abs(b.lo + 0.2) <= 0.01 + 1e-12);
  CHECK(std::abs(b.hi - 0.2) <= 0.01 + 1e-12);
  const auto t = condition_region(0.8, QuantKind::Ternary, 0.0);
  CHECK(t.lo == 0.0);
  CHECK(std::abs(t.hi - 0.5) <= 0.01 + 1e-12);
  CHECK(condition_region(0.5, QuantKind::Binary, -1.0).empty);
  CHECK(condition_region(0.5, QuantKind::Ternary, 0.0).empty);
  CHECK_THROWS_AS(theory_sweep(1.2, make_grid(0, 1, 0.1), QuantKind::Binary), DomainError);
}

TEST_CASE("theory sweep reports saturation as NaN") {
  const auto t = theory_sweep(0.8, std::vector<double>{0.0, 50.0}, QuantKind::Binary);
  CHECK(std::isnan(t.rows[1][t.column("d_quantized")]));
  CHECK_FALSE(std::isnan(t.rows[0][t.column("d_quantized")]));
}

TEST_CASE("monte carlo validation converges") {
  McConfig cfg;
  cfg.taus = {0.0};
  cfg.samples = 1000000;
  const auto t = mc_validate(cfg);
  const auto model = ClassPairModel::standardized(0.8);
  CHECK(std::abs(t.rows[0][1] / d_original(model) - 1.0) < 0.01);
  CHECK(std::abs(t.rows[0][2] / d_binary(model, 0.0) - 1.0) < 0.01);
  cfg.samples = 10;
  CHECK_THROWS_AS(mc_validate(cfg), DomainError);
}

TEST_CASE("synth classify is deterministic and thread-invariant") {
  SynthClassifyConfig cfg;
  cfg.spec.dims = 2;
  cfg.spec.samples_per_class = 60;
  cfg.spec.seed = 4;
  cfg.taus = make_grid(0.0, 0.6, 0.2);
  cfg.kind = QuantKind::Ternary;
  cfg.repeats = 3;
  std::string one, many;
  {
    ThreadScope s(1);
    one = synth_classify(cfg).to_string();
  }
  {
    ThreadScope s(8);
    many = synth_classify(cfg).to_string();
  }
  CHECK(one == many);
  CHECK(one == synth_classify(cfg).to_string());
  CHECK(one.rfind("tau,acc_original,acc_ternary,acc_stddev,d_original,d_quantized,condition_value,quant_error,repeats\n", 0) == 0);
}

TEST_CASE("fit_class_pair_model on a standardized pair") {
  SynthSpec s;
  s.samples_per_class = 50000;
  s.seed = 8;
  const auto std_data = standardize_dataset(generate(s)).data;
  const auto m = fit_class_pair_model(std_data);
  CHECK(m.mu() == doctest::Approx(0.8).epsilon(0.01));
}

TEST_CASE("empirical solve on synthetic data") {
  SynthSpec s;
  s.lambda = 1.0;
  s.seed = 3;
  EmpiricalSolveConfig cfg;
  cfg.seed = 3;
  const auto r = solve_empirical(generate(s), cfg);
  CHECK(r.solver.condition_satisfied);
  CHECK(r.acc_original > 0.8);
  CHECK(r.mqe.error >= 0.0);
  const auto lines = to_string(empirical_report(QuantKind::Binary, false, r));
  CHECK(lines.rfind("field,value\nmode,empirical\n", 0) == 0);
  CHECK(lines.find("acc_ours,") != std::string::npos);
}

TEST_CASE("real classify contract") {
  SynthSpec s;
  s.dims = 4;
  s.samples_per_class = 40;
  s.seed = 2;
  auto d = generate(s);
  // Add a third class and a constant column.
  LabeledDataset wide;
  for (std::size_t r = 0; r < d.size(); ++r) {
    std::vector<double> row(d.features.row(r).begin(), d.features.row(r).end());
    row.push_back(1.0);
    wide.features.append_row(row);
    wide.labels.push_back(d.labels[r]);
  }
  for (int i = 0; i < 6; ++i) {
    wide.features.append_row(std::vector<double>{0.1 * i, 0.0, 0.0, 0.0, 1.0});
    wide.labels.push_back(2);
  }
  RealDataConfig cfg;
  cfg.gamma_grid = {0.0, 0.5, 1e6};
  cfg.kind = QuantKind::Ternary;
  const auto out = real_classify(wide, cfg);
  CHECK(out.eta > 0.0);
  CHECK(out.pairs == std::vector<std::pair<Label, Label>>{{0, 1}});  // class 2 has fewer than 2k rows
  CHECK(out.warnings.size() >= 3);  // constant column, two skipped pairs
  CHECK(out.table.rows.size() == 3);
  // gamma huge: every code is zero, knn falls back to the earliest rows.
  CHECK(out.table.rows[2][out.table.column("acc_ternary")] == doctest::Approx(0.5));
  CHECK(out.table.rows[1][out.table.column("tau")] == doctest::Approx(0.5 * out.eta));

  cfg.gamma_grid = {0.5, 0.1};
  CHECK_THROWS_AS(real_classify(wide, cfg), DomainError);
  cfg.gamma_grid = {-0.5};
  CHECK_THROWS_AS(real_classify(wide, cfg), DomainError);
}

TEST_CASE("real classify finds a useful gamma on separated data") {
  SynthSpec s;
  s.dims = 1;
  s.samples_per_class = 500;
  s.seed = 5;
  RealDataConfig cfg;
  cfg.gamma_grid = {0.0, 0.1, 0.2, 0.3, 0.5, 0.8, 1.0, 1.2};
  cfg.kind = QuantKind::Binary;
  const auto t = real_classify(generate(s), cfg).table;
  double best = 0.0;
  for (const auto& row : t.rows) best = std::max(best, row[t.column("acc_binary")]);
  CHECK(best >= column_mean(t, "acc_original"));
}
