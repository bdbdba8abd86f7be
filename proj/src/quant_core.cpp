#include "qdisc/quant_core.hpp"

#include <cmath>
#include <string>

#include "qdisc/errors.hpp"
#include "qdisc/parallel.hpp"

namespace qdisc {

std::string_view to_string(QuantKind kind) {
  return kind == QuantKind::Binary ? "binary" : "ternary";
}

QuantKind parse_quant_kind(std::string_view name) {
  if (name == "binary") return QuantKind::Binary;
  if (name == "ternary") return QuantKind::Ternary;
  throw DomainError("unknown quantization kind '" + std::string(name) + "'");
}

QuantScheme QuantScheme::binary(double tau) {
  if (std::isnan(tau)) throw DomainError("binary threshold is NaN");
  return {QuantKind::Binary, tau};
}

QuantScheme QuantScheme::ternary(double tau) {
  if (!(tau >= 0.0)) throw DomainError("ternary threshold must be >= 0");
  return {QuantKind::Ternary, tau};
}

QuantScheme QuantScheme::make(QuantKind kind, double tau) {
  return kind == QuantKind::Binary ? binary(tau) : ternary(tau);
}

std::vector<std::int8_t> quantize_vector(std::span<const double> v, const QuantScheme& scheme) {
  std::vector<std::int8_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<std::int8_t>(quantize_scalar(v[i], scheme));
  }
  return out;
}

Matrix quantize_matrix(const Matrix& m, const QuantScheme& scheme) {
  Matrix out(m.rows(), m.cols());
  parallel_for(m.rows(), [&](std::size_t r) {
    const auto src = m.row(r);
    auto dst = out.row(r);
    for (std::size_t c = 0; c < src.size(); ++c) dst[c] = quantize_scalar(src[c], scheme);
  });
  return out;
}

double quantization_error(std::span<const double> v, const QuantScheme& scheme, bool scaled) {
  if (v.empty()) throw DomainError("quantization_error: empty input");
  const std::size_t n = v.size();
  double scale = 1.0;
  if (scaled) {
    const double vq = blocked_sum(n, [&](std::size_t i) { return v[i] * quantize_scalar(v[i], scheme); });
    const double qq = blocked_sum(n, [&](std::size_t i) {
      const int q = quantize_scalar(v[i], scheme);
      return static_cast<double>(q * q);
    });
    scale = qq > 0.0 ? std::max(0.0, vq / qq) : 0.0;
  }
  const double sse = blocked_sum(n, [&](std::size_t i) {
    const double diff = v[i] - scale * quantize_scalar(v[i], scheme);
    return diff * diff;
  });
  return sse / static_cast<double>(n);
}

}  // namespace qdisc
