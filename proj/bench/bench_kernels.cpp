// Serial reference kernels against their parallel counterparts.

#include <benchmark/benchmark.h>

#include <vector>

#include "qdisc/classifiers.hpp"
#include "qdisc/discrim.hpp"
#include "qdisc/quant_core.hpp"
#include "qdisc/reference.hpp"
#include "qdisc/rng.hpp"
#include "qdisc/synth_data.hpp"

namespace {

qdisc::TrainTestSplit knn_data(std::size_t dims) {
  qdisc::SynthSpec spec;
  spec.dims = dims;
  spec.lambda = 0.1;
  spec.samples_per_class = 1000;
  spec.seed = 7;
  return qdisc::split(qdisc::generate(spec), 0.8, 7);
}

std::vector<double> normals(std::size_t n, std::uint64_t seed, double mean) {
  qdisc::Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.normal(mean, 0.6);
  return v;
}

void BM_KnnReference(benchmark::State& state) {
  const auto data = knn_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdisc::reference::knn_predict(data.train, data.test.features, {}));
  }
}

void BM_KnnParallel(benchmark::State& state) {
  const auto data = knn_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdisc::knn_predict(data.train, data.test.features, {}));
  }
}

void BM_DiscriminationReference(benchmark::State& state) {
  const auto x = normals(static_cast<std::size_t>(state.range(0)), 1, 0.8);
  const auto y = normals(static_cast<std::size_t>(state.range(0)), 2, -0.8);
  const auto scheme = qdisc::QuantScheme::binary(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdisc::reference::empirical_discrimination(x, y, scheme));
  }
}

void BM_DiscriminationParallel(benchmark::State& state) {
  const auto x = normals(static_cast<std::size_t>(state.range(0)), 1, 0.8);
  const auto y = normals(static_cast<std::size_t>(state.range(0)), 2, -0.8);
  const auto scheme = qdisc::QuantScheme::binary(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qdisc::empirical_discrimination(x, y, scheme));
  }
}

qdisc::Matrix wide_matrix(std::size_t rows) {
  qdisc::SynthSpec spec;
  spec.dims = 256;
  spec.samples_per_class = rows / 2;
  spec.seed = 3;
  return qdisc::generate(spec).features;
}

void BM_QuantizeReference(benchmark::State& state) {
  const auto m = wide_matrix(static_cast<std::size_t>(state.range(0)));
  const auto scheme = qdisc::QuantScheme::ternary(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(qdisc::reference::quantize_matrix(m, scheme));
}

void BM_QuantizeParallel(benchmark::State& state) {
  const auto m = wide_matrix(static_cast<std::size_t>(state.range(0)));
  const auto scheme = qdisc::QuantScheme::ternary(0.4);
  for (auto _ : state) benchmark::DoNotOptimize(qdisc::quantize_matrix(m, scheme));
}

}  // namespace

BENCHMARK(BM_KnnReference)->Arg(1)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KnnParallel)->Arg(1)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DiscriminationReference)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_DiscriminationParallel)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_QuantizeReference)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_QuantizeParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
