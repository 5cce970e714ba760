#pragma once

#include <stdexcept>
#include <string>

namespace pdecomp {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation's hypothesis is violated: a pole at an interpolation node,
/// a degenerate problem, an index out of range, coincident roots.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised when a pole of the input function sits on (or numerically at) a node.
class PoleAtNodeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Numerically singular system. Carries the offending pivot magnitude.
class SingularMatrixError : public PreconditionError {
 public:
  SingularMatrixError(const std::string& what, double pivot)
      : PreconditionError(what), pivot_(pivot) {}
  double pivot() const noexcept { return pivot_; }

 private:
  double pivot_;
};

/// A computation finished but failed its own accuracy certificate
/// (non-exact division, Krylov non-closure, quadrature non-convergence).
class ToleranceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdecomp
