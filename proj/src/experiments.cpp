#include "qdisc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "qdisc/discrim.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Substream layout under a user seed: units (repeats, pairs) use their own
// index; the other consumers sit at fixed offsets far above.
constexpr std::uint64_t kClassXStream = 1ULL << 40;
constexpr std::uint64_t kClassYStream = kClassXStream + 1;
constexpr std::uint64_t kPairSampleStream = kClassXStream + 2;
constexpr std::uint64_t kSplitStreamBase = 1ULL << 41;

std::string accuracy_column(QuantKind kind) { return "acc_" + std::string(to_string(kind)); }

double mean_of(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<double> draw_normals(std::uint64_t seed, std::uint64_t stream, std::size_t n, double mean, double sd) {
  Rng rng = Rng::substream(seed, stream);
  std::vector<double> out(n);
  for (double& v : out) v = rng.normal(mean, sd);
  return out;
}

ClassPairModel model_for_mean(double mean) {
  const double mu = std::max(std::abs(mean), std::numeric_limits<double>::min());
  return ClassPairModel::standardized(mu);
}

}  // namespace

std::vector<double> make_grid(double min, double max, double step) {
  if (!(step > 0.0) || !std::isfinite(min) || !std::isfinite(max)) {
    throw DomainError("grid needs finite bounds and a positive step");
  }
  if (max < min) throw DomainError("grid maximum is below its minimum");
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 0.5)) + 1;
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    // Snap to the step lattice so -0.2 prints as -0.2, not -0.19999999999999996.
    const double v = min + static_cast<double>(i) * step;
    const double snapped = std::round(v / step) * step;
    out[i] = std::abs(snapped - v) < 1e-9 * step ? snapped : v;
  }
  return out;
}

Region positive_region(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size()) throw DomainError("positive_region: size mismatch");
  Region region;
  std::size_t first = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(values[i] > 0.0)) continue;
    if (region.empty) first = i;
    last = i;
    region.empty = false;
  }
  if (region.empty) return region;
  region.lo = grid[first];
  region.hi = grid[last];
  for (std::size_t i = first; i <= last; ++i) {
    if (!(values[i] > 0.0)) region.contiguous = false;
  }
  return region;
}

CsvTable theory_sweep(double mu, std::span<const double> taus, QuantKind kind) {
  const ClassPairModel model = ClassPairModel::standardized(mu);
  for (double tau : taus) QuantScheme::make(kind, tau);  // validates the whole grid up front

  CsvTable table;
  table.header = {"tau", "condition_value", "d_original", "d_quantized"};
  table.rows.resize(taus.size());
  const double d0 = d_original(model);
  parallel_for(taus.size(), [&](std::size_t i) {
    const QuantScheme scheme = QuantScheme::make(kind, taus[i]);
    double dq = kNaN;
    try {
      dq = quantized_moments(model, scheme).ratio();
    } catch (const SaturationError&) {
    }
    table.rows[i] = {taus[i], enhancement_condition(model, scheme), d0, dq};
  });
  return table;
}

CsvTable mc_validate(const McConfig& cfg) {
  if (cfg.samples < 100) throw DomainError("mc-validate needs at least 100 samples per class");
  const ClassPairModel model = ClassPairModel::standardized(cfg.mu);
  for (double tau : cfg.taus) QuantScheme::make(cfg.kind, tau);

  const std::vector<double> x = draw_normals(cfg.seed, kClassXStream, cfg.samples, model.mu(), model.sigma());
  const std::vector<double> y = draw_normals(cfg.seed, kClassYStream, cfg.samples, -model.mu(), model.sigma());
  const double d = empirical_discrimination(x, y);

  CsvTable table;
  table.header = {"tau", "D_empirical", "Dq_empirical"};
  table.rows.resize(cfg.taus.size());
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    // The estimator itself runs in parallel over samples.
    const double dq = empirical_discrimination(x, y, QuantScheme::make(cfg.kind, cfg.taus[i]));
    table.rows[i] = {cfg.taus[i], d, dq};
  }
  return table;
}

CsvTable synth_classify(const SynthClassifyConfig& cfg) {
  if (cfg.repeats < 1) throw DomainError("repeats must be >= 1");
  if (cfg.taus.empty()) throw DomainError("threshold grid is empty");
  cfg.spec.validate();
  for (double tau : cfg.taus) QuantScheme::make(cfg.kind, tau);

  const auto repeats = static_cast<std::size_t>(cfg.repeats);
  const std::size_t n_tau = cfg.taus.size();
  std::vector<double> acc_original(repeats);
  std::vector<std::vector<double>> acc_quant(repeats, std::vector<double>(n_tau));
  std::vector<std::vector<double>> quant_error(repeats, std::vector<double>(n_tau));

  parallel_for(repeats, [&](std::size_t r) {
    SynthSpec spec = cfg.spec;
    spec.seed = Rng::substream(cfg.spec.seed, r).next();
    const LabeledDataset data = generate(spec);
    const TrainTestSplit parts = split(data, cfg.train_fraction, Rng::substream(spec.seed, kSplitStreamBase).next());
    acc_original[r] = accuracy(classify(parts.train, parts.test.features, cfg.classifier), parts.test.labels);
    for (std::size_t t = 0; t < n_tau; ++t) {
      const QuantScheme scheme = QuantScheme::make(cfg.kind, cfg.taus[t]);
      LabeledDataset qtrain{quantize_matrix(parts.train.features, scheme), parts.train.labels};
      const Matrix qtest = quantize_matrix(parts.test.features, scheme);
      acc_quant[r][t] = accuracy(classify(qtrain, qtest, cfg.classifier), parts.test.labels);
      quant_error[r][t] = quantization_error(data.features.values(), scheme, cfg.scaled_error);
    }
  });

  // Closed-form columns from the generating model.
  const std::vector<double> means = synth_means(cfg.spec);
  DistanceMoments original;
  for (double m : means) original += original_moments(model_for_mean(m));
  const ClassPairModel leading = model_for_mean(means.front());

  CsvTable table;
  table.header = {"tau",           "acc_original",    accuracy_column(cfg.kind), "acc_stddev", "d_original",
                  "d_quantized", "condition_value", "quant_error",             "repeats"};
  const double mean_original = mean_of(acc_original);
  for (std::size_t t = 0; t < n_tau; ++t) {
    const QuantScheme scheme = QuantScheme::make(cfg.kind, cfg.taus[t]);
    std::vector<double> acc(repeats);
    std::vector<double> err(repeats);
    for (std::size_t r = 0; r < repeats; ++r) {
      acc[r] = acc_quant[r][t];
      err[r] = quant_error[r][t];
    }
    double dq = kNaN;
    try {
      DistanceMoments quantized;
      for (double m : means) quantized += quantized_moments(model_for_mean(m), scheme);
      dq = quantized.ratio();
    } catch (const SaturationError&) {
    }
    table.rows.push_back({cfg.taus[t], mean_original, mean_of(acc), sample_stddev(acc), original.ratio(), dq,
                          enhancement_condition(leading, scheme), mean_of(err), static_cast<double>(repeats)});
  }
  return table;
}

ClassPairModel fit_class_pair_model(const LabeledDataset& train) {
  const std::vector<Label> classes = train.classes();
  if (classes.size() != 2) throw DomainError("model fit needs exactly two classes");
  const std::size_t d = train.dims();
  double mu_sum = 0.0;
  std::size_t used = 0;
  for (std::size_t c = 0; c < d; ++c) {
    double sum[2] = {0.0, 0.0};
    double count[2] = {0.0, 0.0};
    for (std::size_t r = 0; r < train.size(); ++r) {
      const int k = train.labels[r] == classes[0] ? 0 : 1;
      sum[k] += train.features(r, c);
      count[k] += 1.0;
    }
    const double m0 = sum[0] / count[0];
    const double m1 = sum[1] / count[1];
    double ss = 0.0;
    for (std::size_t r = 0; r < train.size(); ++r) {
      const double m = train.labels[r] == classes[0] ? m0 : m1;
      ss += (train.features(r, c) - m) * (train.features(r, c) - m);
    }
    const double within = ss / static_cast<double>(train.size());
    if (m0 == m1 || !(within > 0.0)) continue;
    mu_sum += standardize_params({m0, m1, within}).model.mu();
    ++used;
  }
  if (used == 0) throw DegenerateError("no feature column separates the two classes");
  return ClassPairModel::standardized(mu_sum / static_cast<double>(used));
}

EmpiricalSolveReport solve_empirical(const LabeledDataset& data, const EmpiricalSolveConfig& cfg) {
  if (data.classes().size() != 2) throw DomainError("solve needs a dataset with exactly two classes");
  StandardizedDataset standardized = standardize_dataset(data);
  const TrainTestSplit parts = split(standardized.data, cfg.train_fraction, cfg.seed);
  const ClassPairModel model = fit_class_pair_model(parts.train);
  SolverResult solved = solve_threshold(model, cfg.kind, cfg.solver);
  MqeResult mqe = solve_mqe_threshold(parts.train.features.values(), cfg.kind, cfg.scaled_mqe);

  auto accuracy_at = [&](std::optional<double> tau) {
    if (!tau) return accuracy(knn_predict(parts.train, parts.test.features, cfg.knn).labels, parts.test.labels);
    const QuantScheme scheme = QuantScheme::make(cfg.kind, *tau);
    LabeledDataset qtrain{quantize_matrix(parts.train.features, scheme), parts.train.labels};
    return accuracy(knn_predict(qtrain, quantize_matrix(parts.test.features, scheme), cfg.knn).labels,
                    parts.test.labels);
  };

  EmpiricalSolveReport report{model, solved, mqe, 0.0, 0.0, 0.0, standardized.constant_columns};
  report.acc_original = accuracy_at(std::nullopt);
  report.acc_ours = accuracy_at(solved.tau_star);
  report.acc_mqe = accuracy_at(mqe.tau);
  return report;
}

std::string to_string(const Report& report) {
  std::ostringstream out;
  out << "field,value\n";
  for (const auto& [k, v] : report) out << k << ',' << v << '\n';
  return out.str();
}

Report theory_report(const ClassPairModel& model, QuantKind kind, const SolverResult& r) {
  return {{"mode", "theory"},
          {"kind", std::string(to_string(kind))},
          {"mu", format_real(model.mu())},
          {"sigma", format_real(model.sigma())},
          {"tau_star", format_real(r.tau_star)},
          {"objective", format_real(r.objective_value)},
          {"iterations", std::to_string(r.iterations)},
          {"converged", r.converged ? "true" : "false"},
          {"condition_satisfied", r.condition_satisfied ? "true" : "false"}};
}

Report empirical_report(QuantKind kind, bool scaled_mqe, const EmpiricalSolveReport& r) {
  Report out = theory_report(r.model, kind, r.solver);
  out[0].second = "empirical";
  out.emplace_back("tau_mqe", format_real(r.mqe.tau));
  out.emplace_back("mqe_error", format_real(r.mqe.error));
  out.emplace_back("mqe_scaled", scaled_mqe ? "true" : "false");
  out.emplace_back("acc_original", format_real(r.acc_original));
  out.emplace_back("acc_mqe", format_real(r.acc_mqe));
  out.emplace_back("acc_ours", format_real(r.acc_ours));
  return out;
}

void RealDataConfig::validate() const {
  if (gamma_grid.empty()) throw DomainError("gamma grid is empty");
  if (!std::is_sorted(gamma_grid.begin(), gamma_grid.end())) throw DomainError("gamma grid must be sorted");
  if (kind == QuantKind::Ternary && gamma_grid.front() < 0.0) {
    throw DomainError("ternary thresholds need gamma >= 0");
  }
  if (max_pairs < 1) throw DomainError("at least one class pair is required");
}

RealClassifyOutput real_classify(const LabeledDataset& data, const RealDataConfig& cfg) {
  cfg.validate();
  RealClassifyOutput out;
  const std::vector<Label> classes = data.classes();
  if (classes.size() < 2) throw DomainError("dataset needs at least two classes");

  StandardizedDataset standardized = standardize_dataset(data);
  for (std::size_t c : standardized.constant_columns) {
    out.warnings.push_back("feature column " + std::to_string(c + 1) + " is constant; standardized to zeros");
  }
  const LabeledDataset& z = standardized.data;
  out.eta = blocked_sum(z.features.values().size(), [&](std::size_t i) { return std::abs(z.features.values()[i]); }) /
            static_cast<double>(z.features.values().size());

  std::vector<std::pair<Label, Label>> all_pairs;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (std::size_t j = i + 1; j < classes.size(); ++j) all_pairs.emplace_back(classes[i], classes[j]);
  }
  const std::size_t n_pairs = std::min(cfg.max_pairs, all_pairs.size());
  Rng pick = Rng::substream(cfg.seed, kPairSampleStream);
  for (std::size_t i = 0; i < n_pairs; ++i) {
    std::swap(all_pairs[i], all_pairs[i + pick.below(all_pairs.size() - i)]);
  }
  std::vector<std::pair<Label, Label>> chosen(all_pairs.begin(), all_pairs.begin() + static_cast<std::ptrdiff_t>(n_pairs));
  std::sort(chosen.begin(), chosen.end());

  const bool knn = cfg.classifier.kind != ClassifierKind::Svm;
  std::vector<std::size_t> class_count;
  for (const auto& [a, b] : chosen) {
    const auto count_a = static_cast<std::size_t>(std::count(z.labels.begin(), z.labels.end(), a));
    const auto count_b = static_cast<std::size_t>(std::count(z.labels.begin(), z.labels.end(), b));
    const std::size_t need = knn ? 2 * static_cast<std::size_t>(cfg.classifier.k) : 2;
    if (count_a < need || count_b < need) {
      out.warnings.push_back("class pair (" + std::to_string(a) + "," + std::to_string(b) + ") skipped: fewer than " +
                             std::to_string(need) + " samples in a class");
      continue;
    }
    out.pairs.emplace_back(a, b);
  }
  if (out.pairs.empty()) throw DomainError("no class pair has enough samples");

  const std::size_t n_gamma = cfg.gamma_grid.size();
  const std::size_t n_used = out.pairs.size();
  std::vector<double> acc_original(n_used);
  std::vector<std::vector<double>> acc_quant(n_used, std::vector<double>(n_gamma));

  parallel_for(n_used, [&](std::size_t p) {
    const auto [a, b] = out.pairs[p];
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < z.size(); ++r) {
      if (z.labels[r] == a || z.labels[r] == b) rows.push_back(r);
    }
    const TrainTestSplit parts = split(z.subset(rows), cfg.train_fraction, Rng::substream(cfg.seed, p).next());
    acc_original[p] = accuracy(classify(parts.train, parts.test.features, cfg.classifier), parts.test.labels);
    for (std::size_t g = 0; g < n_gamma; ++g) {
      const QuantScheme scheme = QuantScheme::make(cfg.kind, cfg.gamma_grid[g] * out.eta);
      LabeledDataset qtrain{quantize_matrix(parts.train.features, scheme), parts.train.labels};
      acc_quant[p][g] =
          accuracy(classify(qtrain, quantize_matrix(parts.test.features, scheme), cfg.classifier), parts.test.labels);
    }
  });

  out.table.header = {"gamma", "tau", "acc_original", accuracy_column(cfg.kind), "acc_stddev", "quant_error", "repeats"};
  const double mean_original = mean_of(acc_original);
  for (std::size_t g = 0; g < n_gamma; ++g) {
    const double tau = cfg.gamma_grid[g] * out.eta;
    std::vector<double> acc(n_used);
    for (std::size_t p = 0; p < n_used; ++p) acc[p] = acc_quant[p][g];
    const double err = quantization_error(z.features.values(), QuantScheme::make(cfg.kind, tau), cfg.scaled_error);
    out.table.rows.push_back({cfg.gamma_grid[g], tau, mean_original, mean_of(acc), sample_stddev(acc), err,
                              static_cast<double>(n_used)});
  }
  return out;
}

}  // namespace qdisc
