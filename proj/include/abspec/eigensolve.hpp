#pragma once

#include <span>
#include <utility>
#include <vector>

#include "abspec/radial.hpp"

namespace abspec {

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm, largest-magnitude entry positive
};

// Interval [lo, hi] containing every eigenvalue (union of Gershgorin discs).
std::pair<double, double> gershgorin_bounds(std::span<const double> d,
                                            std::span<const double> e);
std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& T);

// Number of eigenvalues strictly below x: negative-pivot count of the shifted
// LDL^T recurrence, with the standard tiny-pivot safeguard.
int sturm_count(std::span<const double> d, std::span<const double> e, double x);
int sturm_count(const TridiagonalOperator& T, double x);

// k smallest eigenvalues, ascending, repeated by multiplicity. Each value
// brackets the j-th eigenvalue within tol*max(1, |lambda|); bisection
// actually runs to near machine precision so results are reproducible to a
// few ulps under ulp-level matrix perturbations.
std::vector<double> lowest_k(std::span<const double> d, std::span<const double> e,
                             int k, double tol);
std::vector<double> lowest_k(const TridiagonalOperator& T, int k, double tol);

// Eigenvector for an isolated eigenvalue near lambda_hat. Deterministic start
// (vector of ones); throws convergence_error after max_iter sweeps.
EigenPair inverse_iteration(std::span<const double> d, std::span<const double> e,
                            double lambda_hat, double residual_tol = 1e-8,
                            int max_iter = 50);
EigenPair inverse_iteration(const TridiagonalOperator& T, double lambda_hat,
                            double residual_tol = 1e-8, int max_iter = 50);

// All n eigenvalues by implicit-shift QL sweeps -- a code path fully
// independent of the Sturm count/bisection pair, kept as a test oracle.
// Refuses n > 200.
std::vector<double> dense_brute_force(std::span<const double> d,
                                      std::span<const double> e);
std::vector<double> dense_brute_force(const TridiagonalOperator& T);

}  // namespace abspec
