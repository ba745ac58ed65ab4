#pragma once

#include <stdexcept>
#include <string>

namespace ptdomain {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dimension outside the range for which closed-form criteria exist (2..11).
class UnsupportedDimension : public Error {
 public:
  explicit UnsupportedDimension(int dimension)
      : Error("unsupported dimension N=" + std::to_string(dimension) +
              " (supported: 2..11)"),
        dimension_(dimension) {}
  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// Malformed caller input (wrong arity, non-finite values, empty ranges).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the domain of a parametrization (negative square root,
/// B <= 0 in the J=3 reparametrization, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two routes that must agree did not, or an exact certificate failed.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

/// Bisection ray that never leaves the domain inside the bounding box.
class NoBoundaryFound : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical method did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptdomain
