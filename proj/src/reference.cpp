#include "qdisc/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include "qdisc/errors.hpp"

namespace qdisc::reference {

std::vector<Label> knn_predict(const LabeledDataset& train, const Matrix& test, const KnnConfig& cfg) {
  if (cfg.k < 1 || train.size() == 0) throw DomainError("reference knn: bad arguments");
  const std::size_t n_train = train.size();
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(cfg.k), n_train);

  auto norm = [](std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
  };

  std::vector<Label> out;
  out.reserve(test.rows());
  std::vector<std::pair<double, std::size_t>> all(n_train);
  for (std::size_t r = 0; r < test.rows(); ++r) {
    const auto q = test.row(r);
    const double qn = norm(q);
    for (std::size_t j = 0; j < n_train; ++j) {
      const auto t = train.features.row(j);
      double d = 0.0;
      if (cfg.metric == Metric::Euclidean) {
        for (std::size_t c = 0; c < q.size(); ++c) d += (q[c] - t[c]) * (q[c] - t[c]);
      } else {
        const double denom = qn * norm(t);
        double s = 0.0;
        for (std::size_t c = 0; c < q.size(); ++c) s += q[c] * t[c];
        d = denom == 0.0 ? 1.0 : 1.0 - s / denom;
      }
      all[j] = {d, j};
    }
    std::sort(all.begin(), all.end());
    std::map<Label, int> votes;
    for (std::size_t i = 0; i < k; ++i) ++votes[train.labels[all[i].second]];
    // map iterates labels in ascending order, so '>' keeps the lowest on ties
    Label best = votes.begin()->first;
    int best_count = -1;
    for (const auto& [label, count] : votes) {
      if (count > best_count) {
        best = label;
        best_count = count;
      }
    }
    out.push_back(best);
  }
  return out;
}

double empirical_discrimination(std::span<const double> x, std::span<const double> y,
                                const std::optional<QuantScheme>& scheme) {
  if (x.size() < 2 || y.size() < 2) throw DomainError("reference: need at least 2 samples per class");
  auto load = [&](std::span<const double> s) {
    std::vector<double> v(s.begin(), s.end());
    if (scheme) {
      for (double& e : v) e = quantize_scalar(e, *scheme);
    }
    return v;
  };
  const std::vector<double> xs = load(x);
  const std::vector<double> ys = load(y);
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e;
    return s / static_cast<double>(v.size());
  };
  auto css = [](const std::vector<double>& v, double m) {
    double s = 0.0;
    for (double e : v) s += (e - m) * (e - m);
    return s;
  };
  const double mx = mean(xs);
  const double my = mean(ys);
  const double sx = css(xs, mx);
  const double sy = css(ys, my);
  const auto nx = static_cast<double>(xs.size());
  const auto ny = static_cast<double>(ys.size());
  const double inter = sx / nx + sy / ny + (mx - my) * (mx - my);
  const double intra = 2.0 * sx / (nx - 1.0) + 2.0 * sy / (ny - 1.0);
  if (intra == 0.0) return std::numeric_limits<double>::infinity();
  return inter / intra;
}

Matrix quantize_matrix(const Matrix& m, const QuantScheme& scheme) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = quantize_scalar(m(r, c), scheme);
  }
  return out;
}

}  // namespace qdisc::reference
