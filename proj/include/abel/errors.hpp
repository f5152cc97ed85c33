#pragma once

#include <stdexcept>
#include <string>

namespace abel {

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Root finding or moment evaluation lost the accuracy it promises.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NewtonDiverged : public std::runtime_error {
 public:
  NewtonDiverged(int element, double last_residual_norm)
      : std::runtime_error("Newton iteration did not converge on element " + std::to_string(element) +
                           " (last residual " + std::to_string(last_residual_norm) + ")"),
        element_(element),
        last_residual_norm_(last_residual_norm) {}

  int element() const noexcept { return element_; }
  double last_residual_norm() const noexcept { return last_residual_norm_; }

 private:
  int element_;
  double last_residual_norm_;
};

class SingularJacobian : public std::runtime_error {
 public:
  SingularJacobian(int element, int iteration)
      : std::runtime_error("singular Jacobian on element " + std::to_string(element) + " at iteration " +
                           std::to_string(iteration)),
        element_(element),
        iteration_(iteration) {}

  int element() const noexcept { return element_; }
  int iteration() const noexcept { return iteration_; }

 private:
  int element_;
  int iteration_;
};

}  // namespace abel
