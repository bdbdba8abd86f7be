#pragma once

#include <cstdint>
#include <vector>

#include "qdisc/dataset.hpp"

namespace qdisc {

// Two Gaussian classes in `dims` independent dimensions. Dimension i (from 0)
// has class means +/- mu1 * exp(-lambda * i) and variance 1 - mean^2, so each
// dimension is already in standardized form.
struct SynthSpec {
  std::size_t dims = 1;
  double lambda = 0.0;
  double mu1 = 0.8;
  std::size_t samples_per_class = 1000;
  std::uint64_t seed = 0;
  // Flip the sign of each dimension's mean at random (seeded).
  bool random_signs = false;

  void validate() const;
};

// Class-0 means per dimension; class 1 uses the negation.
std::vector<double> synth_means(const SynthSpec& spec);

// Rows 0..samples_per_class-1 carry label 0, the rest label 1. Column i is
// drawn from its own substream of spec.seed, so the result does not depend
// on how columns are scheduled.
LabeledDataset generate(const SynthSpec& spec);

struct TrainTestSplit {
  LabeledDataset train;
  LabeledDataset test;
};

// Stratified split: each class contributes round_half_up(count * fraction)
// training rows (kept within [1, count - 1]). Both parts are shuffled so that
// row order carries no class information.
TrainTestSplit split(const LabeledDataset& data, double train_fraction, std::uint64_t seed);

}  // namespace qdisc
