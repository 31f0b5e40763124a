#pragma once

#include <stdexcept>
#include <string>

namespace pdalg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("inverse of zero") {}
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  SingularMatrix() : Error("matrix is singular") {}
};

/// The top-index slice of the structure tensor is not invertible.
class SingularPairing : public Error {
 public:
  SingularPairing() : Error("pairing matrix is singular") {}
};

class MissingTopClass : public Error {
 public:
  MissingTopClass() : Error("basis has no top class") {}
};

class InvalidBasis : public Error {
 public:
  using Error::Error;
};

class NoSolution : public Error {
 public:
  NoSolution() : Error("normalized symmetry system is inconsistent") {}
};

class NonUniqueSolution : public Error {
 public:
  NonUniqueSolution() : Error("normalized symmetry system is underdetermined") {}
};

/// Malformed input. `location` is a line/column or JSON pointer.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(location.empty() ? message : location + ": " + message), location_(location), message_(message) {}

  const std::string& location() const noexcept { return location_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string location_;
  std::string message_;
};

}  // namespace pdalg
