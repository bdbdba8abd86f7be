#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "qdisc/errors.hpp"
#include "qdisc/quant_core.hpp"
#include "qdisc/reference.hpp"
#include "qdisc/rng.hpp"

using namespace qdisc;

namespace {

// Grid minimum over s >= 0 of mean (v - s q)^2.
double scaled_error_by_grid(const std::vector<double>& v, const std::vector<std::int8_t>& q) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 40000; ++i) {
    const double s = i * 1e-4;
    double e = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) e += std::pow(v[j] - s * q[j], 2);
    best = std::min(best, e / v.size());
  }
  return best;
}

}  // namespace

TEST_CASE("scheme construction") {
  CHECK_THROWS_AS(QuantScheme::ternary(-0.1), DomainError);
  CHECK_THROWS_AS(QuantScheme::binary(std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK(QuantScheme::make(QuantKind::Ternary, 0.3).kind() == QuantKind::Ternary);
  CHECK(parse_quant_kind("binary") == QuantKind::Binary);
  CHECK(parse_quant_kind("ternary") == QuantKind::Ternary);
  CHECK_THROWS(parse_quant_kind("quaternary"));
}

TEST_CASE("scalar quantization branches") {
  CHECK(quantize_scalar(0.5, QuantScheme::binary(0.0)) == 1);
  CHECK(quantize_scalar(0.3, QuantScheme::binary(0.3)) == 0);
  CHECK(quantize_scalar(-5.0, QuantScheme::binary(-4.0)) == 0);
  CHECK(quantize_scalar(0.0, QuantScheme::ternary(0.0)) == 0);
  CHECK(quantize_scalar(0.3, QuantScheme::ternary(0.3)) == 0);
  CHECK(quantize_scalar(-0.3, QuantScheme::ternary(0.3)) == 0);
  CHECK(quantize_scalar(-0.31, QuantScheme::ternary(0.3)) == -1);
}

TEST_CASE("vector quantization") {
  const std::vector<double> v{-1.0, 0.0, 1.0};
  CHECK(quantize_vector(v, QuantScheme::ternary(0.5)) == std::vector<std::int8_t>{-1, 0, 1});
  CHECK(quantize_vector(v, QuantScheme::binary(0.0)) == std::vector<std::int8_t>{0, 0, 1});
  const std::vector<double> zeros(7, 0.0);
  CHECK(quantize_vector(zeros, QuantScheme::binary(0.0)) == std::vector<std::int8_t>(7, 0));
  CHECK(quantize_vector(zeros, QuantScheme::ternary(0.2)) == std::vector<std::int8_t>(7, 0));
}

TEST_CASE("matrix quantization matches the serial reference") {
  Rng rng(3);
  Matrix m(301, 17);
  for (double& x : m.values()) x = rng.normal();
  for (const auto& scheme : {QuantScheme::binary(-0.2), QuantScheme::ternary(0.4)}) {
    CHECK(quantize_matrix(m, scheme) == reference::quantize_matrix(m, scheme));
  }
}

TEST_CASE("quantization error examples") {
  CHECK(quantization_error(std::vector<double>{1.0, 1.0}, QuantScheme::binary(0.0), false) == 0.0);
  CHECK(quantization_error(std::vector<double>{2.0, 2.0}, QuantScheme::binary(0.0), true) == doctest::Approx(0.0));
  CHECK(quantization_error(std::vector<double>{0.5, -0.5}, QuantScheme::ternary(1.0), false) == doctest::Approx(0.25));
  CHECK_THROWS_AS(quantization_error(std::vector<double>{}, QuantScheme::binary(0.0), false), DomainError);
}

TEST_CASE("scaled error is the minimum over nonnegative scales") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(50);
    for (double& x : v) x = rng.normal(trial % 3 == 0 ? -0.5 : 0.3, 1.0);
    const double tau = rng.uniform() - 0.5;
    const auto scheme = trial % 2 ? QuantScheme::binary(tau) : QuantScheme::ternary(std::abs(tau));
    const double scaled = quantization_error(v, scheme, true);
    const double oracle = scaled_error_by_grid(v, quantize_vector(v, scheme));
    CHECK(scaled <= oracle + 1e-12);
    CHECK(scaled == doctest::Approx(oracle).epsilon(1e-5));
    CHECK(scaled <= quantization_error(v, scheme, false) + 1e-15);
  }
}

TEST_CASE("huge ternary threshold zeros everything") {
  Rng rng(9);
  std::vector<double> v(100);
  double sq = 0.0;
  for (double& x : v) {
    x = rng.normal();
    sq += x * x;
  }
  const auto scheme = QuantScheme::ternary(1e6);
  CHECK(quantize_vector(v, scheme) == std::vector<std::int8_t>(100, 0));
  CHECK(quantization_error(v, scheme, false) == doctest::Approx(sq / 100));
  CHECK(quantization_error(v, scheme, true) == doctest::Approx(sq / 100));
}
