#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qdisc {

// Bad argument for an otherwise well-defined operation (empty input,
// non-finite value, too few samples, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Two classes that cannot be told apart (equal means, zero variance).
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A quantizer threshold so extreme that every sample lands in one code,
// leaving the discrimination ratio undefined.
class SaturationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A CSV handed to emit-plots that is missing a required column.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qdisc
