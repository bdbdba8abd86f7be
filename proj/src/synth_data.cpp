#include "qdisc/synth_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"
#include "qdisc/rng.hpp"

namespace qdisc {

namespace {

// Substream indices; columns use their own index, the rest sit far above.
constexpr std::uint64_t kSignStream = 1ULL << 62;

void shuffle(std::vector<std::size_t>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

void SynthSpec::validate() const {
  if (dims < 1) throw DomainError("synthetic data needs at least one dimension");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be >= 0");
  if (!(mu1 > 0.0 && mu1 < 1.0)) throw DomainError("mu1 must lie in (0,1)");
  if (samples_per_class < 1) throw DomainError("samples_per_class must be positive");
}

std::vector<double> synth_means(const SynthSpec& spec) {
  spec.validate();
  std::vector<double> means(spec.dims);
  Rng signs = Rng::substream(spec.seed, kSignStream);
  for (std::size_t i = 0; i < spec.dims; ++i) {
    means[i] = spec.mu1 * std::exp(-spec.lambda * static_cast<double>(i));
    if (spec.random_signs && (signs.next() >> 63) != 0) means[i] = -means[i];
  }
  return means;
}

LabeledDataset generate(const SynthSpec& spec) {
  const std::vector<double> means = synth_means(spec);
  const std::size_t per_class = spec.samples_per_class;
  LabeledDataset out;
  out.features = Matrix(2 * per_class, spec.dims);
  out.labels.assign(2 * per_class, 0);
  std::fill(out.labels.begin() + static_cast<std::ptrdiff_t>(per_class), out.labels.end(), 1);

  parallel_for(spec.dims, [&](std::size_t c) {
    Rng rng = Rng::substream(spec.seed, c);
    const double mean = means[c];
    const double sd = std::sqrt((1.0 - mean) * (1.0 + mean));
    for (std::size_t r = 0; r < per_class; ++r) out.features(r, c) = rng.normal(mean, sd);
    for (std::size_t r = per_class; r < 2 * per_class; ++r) out.features(r, c) = rng.normal(-mean, sd);
  });
  return out;
}

TrainTestSplit split(const LabeledDataset& data, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DomainError("train_fraction must lie in (0,1)");
  }
  data.validate();
  std::map<Label, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < data.size(); ++i) by_class[data.labels[i]].push_back(i);

  Rng rng(seed);
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (auto& [label, rows] : by_class) {
    if (rows.size() < 2) {
      throw DomainError("class " + std::to_string(label) + " has fewer than 2 samples; cannot split");
    }
    shuffle(rows, rng);
    const auto count = static_cast<double>(rows.size());
    auto n_train = static_cast<std::size_t>(std::floor(count * train_fraction + 0.5));
    n_train = std::clamp<std::size_t>(n_train, 1, rows.size() - 1);
    train_rows.insert(train_rows.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_rows.insert(test_rows.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train), rows.end());
  }
  shuffle(train_rows, rng);
  shuffle(test_rows, rng);
  return {data.subset(train_rows), data.subset(test_rows)};
}

}  // namespace qdisc
