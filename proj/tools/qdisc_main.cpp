// qdisc: command-line front end for the threshold-quantization experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qdisc/csv.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/experiments.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/plots.hpp"
#include "qdisc/synth_data.hpp"

namespace {

constexpr int kUsageError = 2;

struct GridFlags {
  std::optional<double> min;
  std::optional<double> max;
  double step = 0.01;

  void add(CLI::App* cmd) {
    cmd->add_option("--tau-min", min, "Smallest threshold (default -1 binary, 0 ternary)");
    cmd->add_option("--tau-max", max, "Largest threshold (default 1)");
    cmd->add_option("--tau-step", step, "Grid step")->capture_default_str();
  }

  std::vector<double> values(qdisc::QuantKind kind) const {
    const double lo = min.value_or(kind == qdisc::QuantKind::Binary ? -1.0 : 0.0);
    return qdisc::make_grid(lo, max.value_or(1.0), step);
  }
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

qdisc::ClassifierConfig classifier_config(const std::string& name, int k, std::uint64_t seed) {
  qdisc::ClassifierConfig cfg;
  cfg.kind = qdisc::parse_classifier(name);
  cfg.k = k;
  cfg.svm.seed = seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary/ternary threshold quantization and feature discrimination experiments"};
  app.require_subcommand(1);

  std::string output;
  int threads = 0;
  std::uint64_t seed = 1;
  std::string kind_name = "binary";
  app.add_option("--output", output, "Output file (default: stdout)");
  app.add_option("--threads", threads, "Worker threads (0: OpenMP default)");

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--kind", kind_name, "binary or ternary")
        ->check(CLI::IsMember({"binary", "ternary"}))
        ->capture_default_str();
    cmd->add_option("--output", output, "Output file (default: stdout)");
    cmd->add_option("--threads", threads, "Worker threads (0: OpenMP default)");
  };

  // theory-sweep
  double mu = 0.8;
  GridFlags grid;
  auto* theory = app.add_subcommand("theory-sweep", "Closed-form condition and discrimination over a tau grid");
  theory->add_option("--mu", mu, "Class mean, 0 < mu < 1 (sigma^2 = 1 - mu^2)")->required();
  grid.add(theory);
  add_common(theory);

  // mc-validate
  std::size_t samples = 10000;
  auto* mc = app.add_subcommand("mc-validate", "Monte-Carlo estimates of D and the quantized D over a tau grid");
  mc->add_option("--mu", mu, "Class mean")->capture_default_str();
  mc->add_option("--samples", samples, "Samples per class")->capture_default_str();
  mc->add_option("--seed", seed, "RNG seed")->capture_default_str();
  grid.add(mc);
  add_common(mc);

  // synth-classify
  std::size_t dims = 1;
  double lambda = 0.0;
  std::string classifier = "knn-euclid";
  int k = 5;
  int repeats = 100;
  double train_fraction = 0.8;
  bool scaled_mqe = false;
  std::size_t per_class = 1000;
  auto* synth = app.add_subcommand("synth-classify", "Accuracy of original vs quantized synthetic data over a tau grid");
  synth->add_option("--mu", mu, "First-dimension mean magnitude")->capture_default_str();
  synth->add_option("--lambda", lambda, "Mean decay rate across dimensions")->capture_default_str();
  synth->add_option("--dims", dims, "Dimensions")->capture_default_str();
  synth->add_option("--samples", per_class, "Samples per class")->capture_default_str();
  synth->add_option("--classifier", classifier, "knn-euclid, knn-cosine or svm")->capture_default_str();
  synth->add_option("--k", k, "Neighbors for KNN")->capture_default_str();
  synth->add_option("--repeats", repeats, "Independent datasets averaged")->capture_default_str();
  synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
  synth->add_option("--train-fraction", train_fraction, "Training share per class")->capture_default_str();
  synth->add_flag("--scaled-mqe", scaled_mqe, "Report the scale-optimal quantization error");
  grid.add(synth);
  add_common(synth);

  // generate
  bool header = false;
  auto* gen = app.add_subcommand("generate", "Write a synthetic two-class dataset CSV");
  gen->add_option("--mu", mu, "First-dimension mean magnitude")->capture_default_str();
  gen->add_option("--lambda", lambda, "Mean decay rate")->capture_default_str();
  gen->add_option("--dims", dims, "Dimensions")->capture_default_str();
  gen->add_option("--samples", per_class, "Samples per class")->capture_default_str();
  gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
  gen->add_flag("--header", header, "Write a header line");
  gen->add_option("--output", output, "Output file (default: stdout)");

  // solve
  std::string input;
  qdisc::SolverConfig solver;
  auto* solve = app.add_subcommand("solve", "Gradient-descent threshold for a model (--mu) or a dataset (--input)");
  auto* solve_mu = solve->add_option("--mu", mu, "Model mean (theory mode)");
  auto* solve_input = solve->add_option("--input", input, "Two-class dataset CSV (empirical mode)");
  solve_mu->excludes(solve_input);
  solve->add_flag("--header", header, "Dataset has a header line");
  solve->add_option("--k", k, "Neighbors for KNN")->capture_default_str();
  solve->add_option("--seed", seed, "Split seed")->capture_default_str();
  solve->add_option("--train-fraction", train_fraction, "Training share per class")->capture_default_str();
  solve->add_flag("--scaled-mqe", scaled_mqe, "Baseline minimizes the scale-optimal error");
  solve->add_option("--tau0", solver.tau0, "Initial threshold")->capture_default_str();
  solve->add_option("--armijo-c", solver.armijo_c, "Armijo constant")->capture_default_str();
  solve->add_option("--grad-tol", solver.grad_tol, "Stop when |g'| falls below this")->capture_default_str();
  solve->add_option("--max-iters", solver.max_iters, "Iteration cap")->capture_default_str();
  add_common(solve);

  // real-classify
  std::vector<double> gammas;
  std::size_t pairs = 45;
  auto* real = app.add_subcommand("real-classify", "Accuracy over tau = gamma * eta on a labelled feature CSV");
  real->add_option("--input", input, "Dataset CSV")->required();
  real->add_flag("--header", header, "Dataset has a header line");
  real->add_option("--gamma-grid", gammas, "Comma-separated, sorted gamma values")->delimiter(',')->required();
  real->add_option("--classifier", classifier, "knn-euclid, knn-cosine or svm")->capture_default_str();
  real->add_option("--k", k, "Neighbors for KNN")->capture_default_str();
  real->add_option("--pairs", pairs, "Class pairs sampled")->capture_default_str();
  real->add_option("--seed", seed, "RNG seed")->capture_default_str();
  real->add_option("--train-fraction", train_fraction, "Training share per class")->capture_default_str();
  real->add_flag("--scaled-mqe", scaled_mqe, "Report the scale-optimal quantization error");
  add_common(real);

  // emit-plots
  auto* plots = app.add_subcommand("emit-plots", "Write a matplotlib script for a result CSV");
  plots->add_option("--input", input, "Result CSV")->required();
  plots->add_option("--output", output, "Script path (default: <input>.plot.py)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  if (threads > 0) qdisc::set_threads(threads);

  try {
    const qdisc::QuantKind kind = qdisc::parse_quant_kind(kind_name);
    if (*theory) {
      emit(qdisc::theory_sweep(mu, grid.values(kind), kind).to_string(), output);
    } else if (*mc) {
      qdisc::McConfig cfg{mu, grid.values(kind), kind, samples, seed};
      emit(qdisc::mc_validate(cfg).to_string(), output);
    } else if (*synth) {
      qdisc::SynthClassifyConfig cfg;
      cfg.spec = {dims, lambda, mu, per_class, seed, false};
      cfg.taus = grid.values(kind);
      cfg.kind = kind;
      cfg.classifier = classifier_config(classifier, k, seed);
      cfg.repeats = repeats;
      cfg.train_fraction = train_fraction;
      cfg.scaled_error = scaled_mqe;
      emit(qdisc::synth_classify(cfg).to_string(), output);
    } else if (*gen) {
      const qdisc::LabeledDataset data = qdisc::generate({dims, lambda, mu, per_class, seed, false});
      std::ostringstream text;
      qdisc::write_dataset_csv(text, data, header);
      emit(text.str(), output);
    } else if (*solve) {
      if (solve_input->count() > 0) {
        qdisc::EmpiricalSolveConfig cfg;
        cfg.kind = kind;
        cfg.solver = solver;
        cfg.knn.k = k;
        cfg.train_fraction = train_fraction;
        cfg.seed = seed;
        cfg.scaled_mqe = scaled_mqe;
        const auto report = qdisc::solve_empirical(qdisc::read_dataset_file(input, header), cfg);
        for (std::size_t c : report.constant_columns) {
          std::cerr << "warning: feature column " << c + 1 << " is constant\n";
        }
        if (report.mqe.warning) std::cerr << "warning: " << *report.mqe.warning << '\n';
        if (!report.solver.converged) std::cerr << "warning: threshold solver did not converge\n";
        emit(qdisc::to_string(qdisc::empirical_report(kind, scaled_mqe, report)), output);
      } else {
        if (solve_mu->count() == 0) throw qdisc::DomainError("solve needs --mu or --input");
        const auto model = qdisc::ClassPairModel::standardized(mu);
        const auto result = qdisc::solve_threshold(model, kind, solver);
        if (!result.converged) std::cerr << "warning: threshold solver did not converge\n";
        emit(qdisc::to_string(qdisc::theory_report(model, kind, result)), output);
      }
    } else if (*real) {
      qdisc::RealDataConfig cfg;
      cfg.gamma_grid = gammas;
      cfg.kind = kind;
      cfg.classifier = classifier_config(classifier, k, seed);
      cfg.max_pairs = pairs;
      cfg.train_fraction = train_fraction;
      cfg.seed = seed;
      cfg.scaled_error = scaled_mqe;
      const auto result = qdisc::real_classify(qdisc::read_dataset_file(input, header), cfg);
      for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
      emit(result.table.to_string(), output);
    } else if (*plots) {
      const std::string script = qdisc::plot_script_for_file(input);
      emit(script, output.empty() ? input + ".plot.py" : output);
    }
  } catch (const qdisc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const qdisc::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const qdisc::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
