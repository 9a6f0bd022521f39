#pragma once

#include <stdexcept>
#include <string>

namespace diffmix {

/// Base class for every numerical failure raised by the library.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field carries too much mass near the edge of the truncated line, so a
/// periodic spectral operation would wrap it around.
class TruncationError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

/// Input violates a mathematical precondition (negative Burgers data,
/// non-mean-zero data for a contraction estimate, singular quotient, ...).
class DomainError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

/// Grid cannot represent the requested operation (clipping, aliasing).
class ResolutionError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

/// Iterative solver or time integrator failed.
class ConvergenceError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

}  // namespace diffmix
