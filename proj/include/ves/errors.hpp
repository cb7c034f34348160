#pragma once

#include <stdexcept>
#include <string>

namespace ves {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed (bracketing, quadrature, integration).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The B->D integral curve left the region between H_G and H^sp.
class BarrierViolation : public ComputationError {
 public:
  BarrierViolation(double u, const std::string& what)
      : ComputationError(what), u_(u) {}
  double u() const noexcept { return u_; }

 private:
  double u_;
};

/// A check was asked to run on an input it does not support.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ves
