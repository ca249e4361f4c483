#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace entbound {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (JSON, command-line values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Matrix with non-finite entries or a degenerate shape.
class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside its legal range, or a state violating its invariants.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A detection claim was requested with a heuristic lambda_sup.
class CertificationRequiredError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, std::size_t required)
      : Error(what + " (required net size " + std::to_string(required) + ")"),
        required_net_size(required) {}

  std::size_t required_net_size;
};

/// Entanglement is not detected by the chosen subspace (delta <= 0).
class NotDetectedError : public Error {
 public:
  using Error::Error;
};

class InvalidPerturbationError : public Error {
 public:
  using Error::Error;
};

}  // namespace entbound
