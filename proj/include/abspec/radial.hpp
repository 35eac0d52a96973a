#pragma once

#include <span>
#include <vector>

#include "abspec/model.hpp"

namespace abspec {

// Symmetric tridiagonal discretization of one angular mode of the magnetic
// Hamiltonian, in the flat (Liouville) gauge g = sqrt(r)*f:
//
//   -g'' + W(r) g,   W(r) = ((m - kappa)^2 - 1/4)/r^2 + V(r),
//
// with homogeneous Dirichlet values at both mesh ends.
struct TridiagonalOperator {
  std::vector<double> diag;  // length n
  std::vector<double> off;   // length n-1, single array keeps it symmetric
  RadialMesh mesh;
  int mode = 0;
  double kappa = 0.0;
  bool diagonal_positive = true;  // all diag entries > 0 at assembly time

  int size() const { return static_cast<int>(diag.size()); }
};

// W(r) after mode decomposition and Liouville transform.
double effective_potential(double kappa, int mode, const PotentialSpec& spec, double r);

// Three-point central stencil: d_i = 2/h^2 + W(r_i), e_i = -1/h^2.
// Eigenvalues approximate the mode's spectrum with O(h^2) error.
TridiagonalOperator assemble_tridiagonal(double kappa, int mode,
                                         const PotentialSpec& spec,
                                         const RadialMesh& mesh);

// (g^T T g)/(g^T g); discrete quadratic form of the mode restricted to g.
double rayleigh_quotient(const TridiagonalOperator& T, std::span<const double> g);

double rayleigh_quotient(double kappa, int mode, const PotentialSpec& spec,
                         const RadialMesh& mesh, std::span<const double> g);

}  // namespace abspec
