#pragma once

#include <stdexcept>
#include <string>

namespace triplewell {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter set or configuration violates one of its invariants.
/// `field()` names the offending field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Argument outside the supported domain of a kernel (poles, range limits).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure exhausted its budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The Wronskian of the seed solutions vanished or under/overflowed.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// The potential does not have the triple-well shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Time point too close to a multiple of pi, where the oscillator kernel
/// collapses onto a delta function.
class CausticError : public Error {
 public:
  using Error::Error;
};

}  // namespace triplewell
