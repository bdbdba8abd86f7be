#pragma once

// Single-threaded, straightforward versions of the parallel kernels. They
// exist to check the optimized paths in tests and to give the benchmarks a
// baseline; nothing in the library calls them.

#include <optional>
#include <span>
#include <vector>

#include "qdisc/classifiers.hpp"
#include "qdisc/dataset.hpp"
#include "qdisc/quant_core.hpp"

namespace qdisc::reference {

// Full sort of (distance, index) pairs per query.
std::vector<Label> knn_predict(const LabeledDataset& train, const Matrix& test, const KnnConfig& cfg);

// Same estimator as qdisc::empirical_discrimination with plain sequential
// two-pass moments.
double empirical_discrimination(std::span<const double> x, std::span<const double> y,
                                const std::optional<QuantScheme>& scheme = std::nullopt);

Matrix quantize_matrix(const Matrix& m, const QuantScheme& scheme);

}  // namespace qdisc::reference
