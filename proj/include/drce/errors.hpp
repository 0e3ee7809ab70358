#pragma once

#include <stdexcept>
#include <string>

namespace drce {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input violates a documented precondition or domain invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An iterative method hit its iteration cap.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic broke down (tiny pivot, singular factor, inconsistent result).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace drce
