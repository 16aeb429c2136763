#pragma once

#include <stdexcept>
#include <string>

namespace gerstner {

/// Rejected wave parameters, labels or settings.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A formula whose denominator vanishes at the surface label b = 0.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A physical point that does not lie below the free surface.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A finite-difference stencil reaching outside the fluid.
class StencilError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Iterative solve that did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual, int iterations)
      : std::runtime_error(what + " (last residual " + std::to_string(last_residual) + " after " +
                           std::to_string(iterations) + " iterations)"),
        last_residual_(last_residual),
        iterations_(iterations) {}

  double last_residual() const { return last_residual_; }
  int iterations() const { return iterations_; }

 private:
  double last_residual_;
  int iterations_;
};

}  // namespace gerstner
