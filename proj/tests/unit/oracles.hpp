#pragma once

// Independent reference computations used as test oracles. None of these
// call into the library's statistics code.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

inline double pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI); }

// Composite Simpson integration of the density from -12 to x.
inline double cdf(double x, int intervals = 20000) {
  const double a = -12.0;
  if (x <= a) return 0.0;
  const double h = (x - a) / intervals;
  double s = pdf(a) + pdf(x);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * pdf(a + i * h);
  return s * h / 3.0;
}

template <class F>
double central_difference(F&& f, double x, double h = 1e-6) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Mean squared distance over disjoint pairs of independent draws:
// numerator uses (x_i, y_i), denominator (x_i, x_{i+n/2}) and (y_i, y_{i+n/2}).
// `code` maps a real sample to its (possibly quantized) value.
template <class Code>
double monte_carlo_d(double mu, double sigma, std::size_t n, std::uint64_t seed, Code code) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> px(mu, sigma), py(-mu, sigma);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = code(px(gen));
    y[i] = code(py(gen));
  }
  double inter = 0.0, intra_x = 0.0, intra_y = 0.0;
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    inter += (x[i] - y[i]) * (x[i] - y[i]);
    intra_x += (x[i] - x[i + half]) * (x[i] - x[i + half]);
    intra_y += (y[i] - y[i + half]) * (y[i] - y[i + half]);
  }
  return inter / (intra_x + intra_y);
}

// All-pairs definition, O(n^2): mean over (x_i, y_j) divided by the sum of
// the means over distinct pairs within each sample.
inline double pairwise_d(const std::vector<double>& x, const std::vector<double>& y) {
  double inter = 0.0;
  for (double a : x)
    for (double b : y) inter += (a - b) * (a - b);
  inter /= static_cast<double>(x.size() * y.size());
  auto within = [](const std::vector<double>& v) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        if (i != j) s += (v[i] - v[j]) * (v[i] - v[j]);
    return s / static_cast<double>(v.size() * (v.size() - 1));
  };
  return inter / (within(x) + within(y));
}

}  // namespace oracle
