#pragma once

#include <stdexcept>
#include <string>

namespace nmfkit {

/// Base class for all nmfkit errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible matrix shapes.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A precondition on the input data or configuration was violated.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A computation produced non-finite values or otherwise broke down.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

/// A certificate or consistency check failed (e.g. a vertex outside its
/// polytope, a factorization that does not reproduce its target).
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(what) {}
};

}  // namespace nmfkit
