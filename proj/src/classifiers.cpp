#include "qdisc/classifiers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

namespace {

struct Neighbor {
  double distance;
  std::size_t index;
};

double squared_euclidean(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Label majority(std::span<const Neighbor> neighbors, const std::vector<Label>& labels) {
  // k is small; a linear tally beats a map.
  std::vector<std::pair<Label, int>> tally;
  for (const Neighbor& n : neighbors) {
    const Label l = labels[n.index];
    auto it = std::find_if(tally.begin(), tally.end(), [l](const auto& e) { return e.first == l; });
    if (it == tally.end()) {
      tally.emplace_back(l, 1);
    } else {
      ++it->second;
    }
  }
  auto best = tally.begin();
  for (auto it = tally.begin(); it != tally.end(); ++it) {
    if (it->second > best->second || (it->second == best->second && it->first < best->first)) best = it;
  }
  return best->first;
}

}  // namespace

KnnResult knn_predict(const LabeledDataset& train, const Matrix& test, const KnnConfig& cfg) {
  if (cfg.k < 1) throw DomainError("knn: k must be >= 1");
  if (train.size() == 0) throw DomainError("knn: empty training set");
  if (train.features.rows() != train.labels.size()) throw DomainError("knn: rows and labels disagree");
  if (test.rows() > 0 && test.cols() != train.dims()) {
    throw DomainError("knn: test width " + std::to_string(test.cols()) + " != train width " +
                      std::to_string(train.dims()));
  }
  const std::size_t n_train = train.size();
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(cfg.k), n_train);
  const bool cosine = cfg.metric == Metric::Cosine;

  KnnResult result;
  result.labels.resize(test.rows());

  std::vector<double> train_norms;
  if (cosine) {
    train_norms.resize(n_train);
    for (std::size_t j = 0; j < n_train; ++j) {
      train_norms[j] = std::sqrt(dot(train.features.row(j), train.features.row(j)));
      if (train_norms[j] == 0.0) ++result.zero_norm_rows;
    }
  }
  std::atomic<std::size_t> zero_test{0};

  parallel_for(test.rows(), [&](std::size_t r) {
    const auto query = test.row(r);
    double query_norm = 0.0;
    if (cosine) {
      query_norm = std::sqrt(dot(query, query));
      if (query_norm == 0.0) zero_test.fetch_add(1, std::memory_order_relaxed);
    }
    // Sorted by (distance, index); rows arrive in index order, so an equal
    // distance never displaces an earlier row.
    std::vector<Neighbor> best;
    best.reserve(k + 1);
    for (std::size_t j = 0; j < n_train; ++j) {
      double d;
      if (cosine) {
        const double denom = query_norm * train_norms[j];
        d = denom == 0.0 ? 1.0 : 1.0 - dot(query, train.features.row(j)) / denom;
      } else {
        d = squared_euclidean(query, train.features.row(j));
      }
      if (best.size() == k && !(d < best.back().distance)) continue;
      auto pos = std::upper_bound(best.begin(), best.end(), d,
                                  [](double value, const Neighbor& n) { return value < n.distance; });
      best.insert(pos, Neighbor{d, j});
      if (best.size() > k) best.pop_back();
    }
    result.labels[r] = majority(best, train.labels);
  });
  result.zero_norm_rows += zero_test.load();
  return result;
}

double LinearSvm::score(std::span<const double> x) const {
  return dot(weights, x) + bias;
}

LinearSvm svm_train(const LabeledDataset& train, const SvmConfig& cfg) {
  if (!(cfg.regularization > 0.0)) throw DomainError("svm: regularization must be positive");
  if (cfg.epochs < 1) throw DomainError("svm: epochs must be positive");
  train.validate();
  const std::vector<Label> classes = train.classes();
  if (classes.size() != 2) {
    throw DomainError("svm: training set must contain exactly two classes, found " +
                      std::to_string(classes.size()));
  }
  const std::size_t n = train.size();
  const std::size_t d = train.dims();

  LinearSvm model;
  model.negative_label = classes[0];
  model.positive_label = classes[1];
  // Last slot is the bias weight on a constant feature of 1.
  std::vector<double> w(d + 1, 0.0);

  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  const double lambda = cfg.regularization;
  double t = 0.0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t idx : order) {
      t += 1.0;
      const double eta = 1.0 / (lambda * t);
      const auto x = train.features.row(idx);
      const double y = train.labels[idx] == model.positive_label ? 1.0 : -1.0;
      const double margin = y * (dot(std::span<const double>(w.data(), d), x) + w[d]);
      const double decay = 1.0 - eta * lambda;
      for (double& wi : w) wi *= decay;
      if (margin < 1.0) {
        for (std::size_t c = 0; c < d; ++c) w[c] += eta * y * x[c];
        w[d] += eta * y;
      }
    }
  }
  model.bias = w[d];
  w.pop_back();
  model.weights = std::move(w);
  return model;
}

std::vector<Label> svm_predict(const LinearSvm& model, const Matrix& features) {
  if (features.rows() > 0 && features.cols() != model.weights.size()) {
    throw DomainError("svm: feature width does not match the model");
  }
  std::vector<Label> out(features.rows());
  parallel_for(features.rows(), [&](std::size_t r) {
    out[r] = model.score(features.row(r)) > 0.0 ? model.positive_label : model.negative_label;
  });
  return out;
}

double accuracy(std::span<const Label> predicted, std::span<const Label> truth) {
  if (predicted.size() != truth.size()) throw DomainError("accuracy: length mismatch");
  if (predicted.empty()) throw DomainError("accuracy: empty input");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) hits += predicted[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::KnnEuclidean:
      return "knn-euclid";
    case ClassifierKind::KnnCosine:
      return "knn-cosine";
    case ClassifierKind::Svm:
      return "svm";
  }
  return "?";
}

ClassifierKind parse_classifier(std::string_view name) {
  if (name == "knn-euclid") return ClassifierKind::KnnEuclidean;
  if (name == "knn-cosine") return ClassifierKind::KnnCosine;
  if (name == "svm") return ClassifierKind::Svm;
  throw DomainError("unknown classifier '" + std::string(name) + "'");
}

std::vector<Label> classify(const LabeledDataset& train, const Matrix& test, const ClassifierConfig& cfg) {
  switch (cfg.kind) {
    case ClassifierKind::KnnEuclidean:
      return knn_predict(train, test, {cfg.k, Metric::Euclidean}).labels;
    case ClassifierKind::KnnCosine:
      return knn_predict(train, test, {cfg.k, Metric::Cosine}).labels;
    case ClassifierKind::Svm:
      return svm_predict(svm_train(train, cfg.svm), test);
  }
  throw DomainError("unknown classifier");
}

}  // namespace qdisc
