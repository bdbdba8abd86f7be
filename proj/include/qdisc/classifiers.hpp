#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qdisc/dataset.hpp"

namespace qdisc {

enum class Metric { Euclidean, Cosine };

struct KnnConfig {
  int k = 5;
  Metric metric = Metric::Euclidean;
};

struct KnnResult {
  std::vector<Label> labels;
  // Zero-norm rows (train and test) seen under the cosine metric. Such a row
  // is at distance 1 from everything.
  std::size_t zero_norm_rows = 0;
};

// Majority vote among the k nearest training rows. Distance ties go to the
// lower training index and vote ties to the lower label, so the output is a
// pure function of the inputs. Test rows are processed in parallel.
KnnResult knn_predict(const LabeledDataset& train, const Matrix& test, const KnnConfig& cfg);

struct SvmConfig {
  double regularization = 1e-3;
  int epochs = 20;
  std::uint64_t seed = 0;
};

// Linear classifier w.x + b; positive scores map to positive_label.
struct LinearSvm {
  std::vector<double> weights;
  double bias = 0.0;
  Label negative_label = 0;
  Label positive_label = 1;

  double score(std::span<const double> x) const;
};

// Primal stochastic subgradient descent (Pegasos step size 1/(lambda t)) on
// the L2-regularized hinge loss, bias folded in as a constant feature.
// Training is sequential; the visiting order comes from cfg.seed.
LinearSvm svm_train(const LabeledDataset& train, const SvmConfig& cfg);
std::vector<Label> svm_predict(const LinearSvm& model, const Matrix& features);

double accuracy(std::span<const Label> predicted, std::span<const Label> truth);

enum class ClassifierKind { KnnEuclidean, KnnCosine, Svm };

std::string_view to_string(ClassifierKind kind);
// "knn-euclid", "knn-cosine", "svm"
ClassifierKind parse_classifier(std::string_view name);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::KnnEuclidean;
  int k = 5;
  SvmConfig svm;
};

// Fits on train and predicts test with the chosen classifier.
std::vector<Label> classify(const LabeledDataset& train, const Matrix& test, const ClassifierConfig& cfg);

}  // namespace qdisc
