#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qdisc/classifiers.hpp"
#include "qdisc/csv.hpp"
#include "qdisc/gaussian_stats.hpp"
#include "qdisc/quant_core.hpp"
#include "qdisc/synth_data.hpp"
#include "qdisc/threshold_opt.hpp"

namespace qdisc {

// min, min + step, ... up to max (inclusive within half a step).
std::vector<double> make_grid(double min, double max, double step);

// Smallest and largest grid value where values[i] > 0, and whether the
// positive points form one unbroken run.
struct Region {
  bool empty = true;
  double lo = 0.0;
  double hi = 0.0;
  bool contiguous = true;
};
Region positive_region(std::span<const double> grid, std::span<const double> values);

// Columns: tau, condition_value, d_original, d_quantized. The model is the
// standardized pair with sigma^2 = 1 - mu^2.
CsvTable theory_sweep(double mu, std::span<const double> taus, QuantKind kind);

struct McConfig {
  double mu = 0.8;
  std::vector<double> taus;
  QuantKind kind = QuantKind::Binary;
  std::size_t samples = 10000;  // per class
  std::uint64_t seed = 1;
};

// Columns: tau, D_empirical, Dq_empirical, estimated from `samples` draws
// per class of N(+mu, 1 - mu^2) and N(-mu, 1 - mu^2).
CsvTable mc_validate(const McConfig& cfg);

struct SynthClassifyConfig {
  SynthSpec spec;
  std::vector<double> taus;
  QuantKind kind = QuantKind::Binary;
  ClassifierConfig classifier;
  int repeats = 100;
  double train_fraction = 0.8;
  bool scaled_error = false;
};

// Repeats data generation and classification; repeat r uses substream r of
// spec.seed. Columns: tau, acc_original, acc_<kind>, acc_stddev (sample
// stddev of the quantized accuracy over repeats), d_original, d_quantized
// (closed forms for the whole vector: summed inter over summed intra
// distances), condition_value (leading dimension), quant_error (mean over
// repeats of the error over every feature entry), repeats.
CsvTable synth_classify(const SynthClassifyConfig& cfg);

// Averages the per-column standardized class-pair fits of a two-class
// training set into one model. Columns with equal class means are skipped.
ClassPairModel fit_class_pair_model(const LabeledDataset& train);

struct EmpiricalSolveConfig {
  QuantKind kind = QuantKind::Binary;
  SolverConfig solver;
  KnnConfig knn;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool scaled_mqe = false;
};

struct EmpiricalSolveReport {
  ClassPairModel model;
  SolverResult solver;
  MqeResult mqe;
  double acc_original = 0.0;
  double acc_ours = 0.0;
  double acc_mqe = 0.0;
  std::vector<std::size_t> constant_columns;
};

// Standardize the whole two-class dataset, split it, fit the model on the
// training part, solve for tau, and compare KNN accuracy at the solved
// threshold, at the minimum-quantization-error threshold (fitted on the
// training features), and on unquantized data.
EmpiricalSolveReport solve_empirical(const LabeledDataset& data, const EmpiricalSolveConfig& cfg);

// field,value lines with a header.
using Report = std::vector<std::pair<std::string, std::string>>;
std::string to_string(const Report& report);
Report theory_report(const ClassPairModel& model, QuantKind kind, const SolverResult& result);
Report empirical_report(QuantKind kind, bool scaled_mqe, const EmpiricalSolveReport& r);

struct RealDataConfig {
  std::vector<double> gamma_grid;
  QuantKind kind = QuantKind::Binary;
  ClassifierConfig classifier;
  std::size_t max_pairs = 45;
  double train_fraction = 0.8;
  std::uint64_t seed = 0;
  bool scaled_error = false;

  void validate() const;
};

struct RealClassifyOutput {
  CsvTable table;
  double eta = 0.0;
  std::vector<std::pair<Label, Label>> pairs;  // pairs actually evaluated
  std::vector<std::string> warnings;
};

// Standardizes the dataset, samples up to max_pairs unordered class pairs
// without replacement, and for every gamma classifies each pair with the
// threshold tau = gamma * eta, eta being the mean |feature| over the whole
// standardized dataset. Columns: gamma, tau, acc_original, acc_<kind>,
// acc_stddev, quant_error, repeats (pairs averaged).
RealClassifyOutput real_classify(const LabeledDataset& data, const RealDataConfig& cfg);

}  // namespace qdisc
