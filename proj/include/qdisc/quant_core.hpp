#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qdisc/dataset.hpp"

namespace qdisc {

enum class QuantKind { Binary, Ternary };

std::string_view to_string(QuantKind kind);
// Accepts "binary" / "ternary"; throws DomainError otherwise.
QuantKind parse_quant_kind(std::string_view name);

// Threshold quantizer. Binary: 1 if x > tau else 0, tau anywhere on the real
// line. Ternary: 1 if x > tau, -1 if x < -tau, else 0, with tau >= 0.
class QuantScheme {
 public:
  static QuantScheme binary(double tau);
  static QuantScheme ternary(double tau);
  static QuantScheme make(QuantKind kind, double tau);

  QuantKind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }

 private:
  QuantScheme(QuantKind kind, double tau) : kind_(kind), tau_(tau) {}
  QuantKind kind_;
  double tau_;
};

inline int quantize_scalar(double x, const QuantScheme& scheme) {
  const double tau = scheme.tau();
  if (x > tau) return 1;
  if (scheme.kind() == QuantKind::Ternary && x < -tau) return -1;
  return 0;
}

std::vector<std::int8_t> quantize_vector(std::span<const double> v, const QuantScheme& scheme);

// Element-wise quantization of a feature matrix, codes stored as doubles so
// the result feeds straight into the classifiers.
Matrix quantize_matrix(const Matrix& m, const QuantScheme& scheme);

// Mean squared reconstruction error between v and its codes q. With
// `scaled`, the codes are first multiplied by the least-squares scale
// s = <v,q>/<q,q> (clamped at 0; 0 when q is all zero).
double quantization_error(std::span<const double> v, const QuantScheme& scheme, bool scaled);

}  // namespace qdisc
