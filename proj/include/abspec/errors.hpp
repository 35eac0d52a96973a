#pragma once

#include <stdexcept>
#include <string>

namespace abspec {

// Iterative solver failed to reach its tolerance; carries the last residual
// (or last relative change) for diagnostics.
class convergence_error : public std::runtime_error {
public:
  convergence_error(const std::string& what, double last_residual)
      : std::runtime_error(what), residual(last_residual) {}
  double residual;
};

// Ground-mode search kept hitting the boundary of the angular-mode window
// even after enlarging it.
class mode_range_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Eigenvalue derivative requested at a point where it is not defined
// (integer or half-integer circulation).
class undefined_derivative_error : public std::domain_error {
  using std::domain_error::domain_error;
};

// A cross-check between two computations that must agree did not.
class inconsistency_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Convergence-order fit could not be made (non-monotone differences).
class inconclusive_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace abspec
