#pragma once

#include <stdexcept>
#include <string>

namespace steerlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive semidefinite has an eigenvalue below -tol.
class NegativityError : public Error {
 public:
  NegativityError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class ZeroOperatorError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedScenarioError : public Error {
 public:
  using Error::Error;
};

/// An element failed validation (POVM, assemblage, channel, kernel).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class InvalidOperationError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation requires commuting operators and got a
/// noncommuting family. Carries the largest commutator norm found.
class PreconditionError : public Error {
 public:
  PreconditionError(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerlab

namespace steerlab {

/// Malformed input document. `field` names the offending location.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& what) : Error(field + ": " + what), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace steerlab
