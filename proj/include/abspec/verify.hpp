#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "abspec/model.hpp"

namespace abspec {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, one line
};

// Runs the structural checks at production scale: potential validity,
// periodicity, evenness, monotonicity, the eigenvalue-derivative identity,
// degeneracy dichotomy, derivative sign change at integer circulation, the
// nodal ray, the gauge criterion, eigensolver oracle agreement, and the
// discretization order. Prints one line per check to `out` as it goes.
std::vector<CheckResult> run_verification(const PotentialSpec& spec,
                                          const NumericsConfig& cfg,
                                          std::ostream& out);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace abspec
