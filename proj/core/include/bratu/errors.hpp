#pragma once

#include <stdexcept>
#include <string>

namespace bratu {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a structural constraint (symmetry, skewness, membership).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A domain point has a singular normalizer (it sits at infinity relative to
/// the chosen boundary point).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A value that is guaranteed by construction failed its own check.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// The ODE integrator lost positive definiteness of h.
class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double last_valid_s)
      : Error(what), last_valid_s_(last_valid_s) {}

  double last_valid_s() const noexcept { return last_valid_s_; }

 private:
  double last_valid_s_;
};

}  // namespace bratu
