#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "abspec/eigensolve.hpp"
#include "abspec/radial.hpp"
#include "doctest.h"

using namespace abspec;

namespace {
const PotentialSpec kDefault;
}

TEST_CASE("effective potential values") {
  CHECK(effective_potential(0.0, 0, kDefault, 2.0) == 1.9375);  // -1/16 + 2
  CHECK(effective_potential(0.5, 0, kDefault, 2.0) == 2.0);
  // At kappa = 1/2, modes 0 and 1 carry the same centrifugal weight: the
  // degeneracy mechanism at matrix level.
  CHECK(effective_potential(0.5, 1, kDefault, 2.0) == 2.0);
  CHECK_THROWS_AS(effective_potential(0.0, 0, kDefault, 1.0), std::domain_error);
}

TEST_CASE("single-node assembly") {
  const RadialMesh mesh = build_mesh(1.0, 3.0, 1);
  const TridiagonalOperator T = assemble_tridiagonal(0.0, 0, kDefault, mesh);
  REQUIRE(T.size() == 1);
  CHECK(T.diag[0] == 3.9375);  // 2/1 + 1.9375
  CHECK(T.off.empty());
  CHECK(T.diagonal_positive);
}

TEST_CASE("half-integer degeneracy: identical matrices for modes 0 and 1") {
  const RadialMesh mesh = build_mesh(1.0, 6.0, 200);
  const TridiagonalOperator A = assemble_tridiagonal(0.5, 0, kDefault, mesh);
  const TridiagonalOperator B = assemble_tridiagonal(0.5, 1, kDefault, mesh);
  CHECK(A.diag == B.diag);
  CHECK(A.off == B.off);
}

TEST_CASE("gauge shift at matrix level: (0.3, 0) vs (1.3, 1)") {
  const RadialMesh mesh = build_mesh(1.0, 6.0, 200);
  const TridiagonalOperator A = assemble_tridiagonal(0.3, 0, kDefault, mesh);
  const TridiagonalOperator B = assemble_tridiagonal(1.3, 1, kDefault, mesh);
  for (int i = 0; i < A.size(); ++i) {
    CHECK(std::abs(A.diag[i] - B.diag[i]) <= 1e-14 * std::abs(A.diag[i]));
  }
  CHECK(A.off == B.off);
}

TEST_CASE("reflection identity: (-kappa, -m) equals (kappa, m)") {
  const RadialMesh mesh = build_mesh(1.0, 6.0, 200);
  for (const double kappa : {0.1, 0.3, 0.77}) {
    for (int mode = -2; mode <= 2; ++mode) {
      const TridiagonalOperator A = assemble_tridiagonal(kappa, mode, kDefault, mesh);
      const TridiagonalOperator B =
          assemble_tridiagonal(-kappa, -mode, kDefault, mesh);
      // (-x)^2 and x^2 round identically, so this holds exactly.
      CHECK(A.diag == B.diag);
      CHECK(A.off == B.off);
    }
  }
}

TEST_CASE("rayleigh quotient basics") {
  const RadialMesh single = build_mesh(1.0, 3.0, 1);
  const TridiagonalOperator T1 = assemble_tridiagonal(0.0, 0, kDefault, single);
  const double g1[] = {1.0};
  CHECK(rayleigh_quotient(T1, g1) == 3.9375);

  const RadialMesh mesh = build_mesh(1.0, 6.0, 4000);
  const TridiagonalOperator T = assemble_tridiagonal(0.3, 0, kDefault, mesh);
  std::vector<double> e1(4000, 0.0);
  e1[0] = 1.0;
  CHECK(rayleigh_quotient(T, e1) == T.diag[0]);

  std::vector<double> zero(4000, 0.0);
  CHECK_THROWS_AS(rayleigh_quotient(T, zero), std::invalid_argument);
}

TEST_CASE("rayleigh quotient bounds the lowest eigenvalue from above") {
  const RadialMesh mesh = build_mesh(1.0, 6.0, 400);
  const TridiagonalOperator T = assemble_tridiagonal(0.3, 0, kDefault, mesh);
  const double eig_tol = 1e-10;
  const double lambda1 = lowest_k(T, 1, eig_tol)[0];

  std::mt19937 rng(98765u);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> g(T.size());
    for (auto& x : g) x = gauss(rng);
    CHECK(rayleigh_quotient(T, g) >= lambda1 - eig_tol);
  }

  // The computed ground vector attains the bound.
  const EigenPair pair = inverse_iteration(T, lambda1);
  CHECK(rayleigh_quotient(T, pair.vector) ==
        doctest::Approx(lambda1).epsilon(1e-10));
}

TEST_CASE("per-mode ground energy grows with the centrifugal weight") {
  const RadialMesh mesh = build_mesh(1.0, 6.0, 800);
  for (const double kappa : {0.0, 0.2, 0.5}) {
    double prev = -1.0;
    // order modes by (m - kappa)^2
    std::vector<int> modes = {-3, -2, -1, 0, 1, 2, 3};
    std::sort(modes.begin(), modes.end(), [&](int lhs, int rhs) {
      return std::abs(lhs - kappa) < std::abs(rhs - kappa);
    });
    for (const int m : modes) {
      const TridiagonalOperator T = assemble_tridiagonal(kappa, m, kDefault, mesh);
      const double lambda = lowest_k(T, 1, 1e-10)[0];
      CHECK(lambda >= prev - 1e-10);
      prev = lambda;
    }
  }
}
