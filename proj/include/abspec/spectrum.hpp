#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abspec/eigensolve.hpp"
#include "abspec/model.hpp"
#include "abspec/radial.hpp"

namespace abspec {

// Ground eigenpair of the full operator at one circulation: the minimum over
// angular modes of the per-mode lowest eigenvalue, with its radial
// eigenfunction in the Liouville gauge g = sqrt(r) f.
struct GroundState {
  double kappa = 0.0;
  double lambda1 = 0.0;
  int mode_star = 0;
  std::vector<double> g;  // unit norm on the mesh
  RadialMesh mesh;
  PotentialSpec spec;
};

struct Degeneracy {
  int multiplicity = 0;
  std::vector<int> modes;  // ascending
};

struct SweepResult {
  std::vector<double> kappas;
  std::vector<double> lambdas;
  std::vector<int> modes;
  std::vector<std::optional<double>> hf_derivs;
  std::vector<std::optional<double>> fd_derivs;
};

struct NodalRayReport {
  double max_on_ray = 0.0;        // max |psi(r, pi)| over mesh radii
  double min_off_ray = 0.0;       // min |psi| at theta in {0, pi/2} where |f| > 10% peak
  double max_identity_dev = 0.0;  // max | |psi| - |f||cos(theta/2)| | over samples
};

// Lowest eigenvalue of one angular mode on a given mesh.
double mode_ground_energy(double kappa, int mode, const PotentialSpec& spec,
                          const RadialMesh& mesh, double eig_tol = 1e-10);

// Ground state on an explicitly supplied mesh (shared-mesh workhorse: sweeps
// and symmetry checks rely on every kappa seeing identical node locations).
GroundState ground_state_on_mesh(double kappa, const PotentialSpec& spec,
                                 const RadialMesh& mesh, const NumericsConfig& cfg);

// Ground state with the outer radius picked by adaptive_outer_radius.
GroundState ground_state(double kappa, const PotentialSpec& spec,
                         const NumericsConfig& cfg);

// Cheap variant without the eigenvector.
double ground_energy_on_mesh(double kappa, const PotentialSpec& spec,
                             const RadialMesh& mesh, const NumericsConfig& cfg,
                             int* mode_star = nullptr);

// d(lambda1)/d(kappa) from the eigenpair itself: 2*(kappa - m*) * sum g_i^2/r_i^2
// for the unit-norm radial ground state. Defined away from integer and
// half-integer circulations, where the ground eigenvalue has a flat point or
// a crossing; those throw undefined_derivative_error.
double hf_derivative(const GroundState& gs, double deg_tol = 1e-8);

// Central finite difference of lambda1, both solves on one mesh. The stencil
// must not cross a half-integer circulation (eigenvalue branches cross there).
double fd_derivative_on_mesh(double kappa, double h, const PotentialSpec& spec,
                             const RadialMesh& mesh, const NumericsConfig& cfg);
double fd_derivative(double kappa, double h, const PotentialSpec& spec,
                     const NumericsConfig& cfg);

// Number of modes in [-M, M] whose ground energy lies within
// deg_tol*max(1, |lambda1|) of the global minimum.
Degeneracy degeneracy_multiplicity_on_mesh(double kappa, const PotentialSpec& spec,
                                           const RadialMesh& mesh,
                                           const NumericsConfig& cfg);
Degeneracy degeneracy_multiplicity(double kappa, const PotentialSpec& spec,
                                   const NumericsConfig& cfg);

// Uniform kappa grid, one shared mesh sized by the adaptive radius at the
// endpoints. Points are independent; evaluation is OpenMP-parallel with
// results stored in grid order. sweep_serial is the plain-loop reference and
// produces bitwise-identical output.
SweepResult sweep(double kappa_from, double kappa_to, int steps,
                  const PotentialSpec& spec, const NumericsConfig& cfg);
SweepResult sweep_serial(double kappa_from, double kappa_to, int steps,
                         const PotentialSpec& spec, const NumericsConfig& cfg);

// At kappa = 1/2 the ground level is doubly degenerate across modes {0, 1};
// the combination psi = f(r)(1 + e^{i theta})/2 has nodal set exactly on the
// ray theta = pi. Verifies that structure on the discrete eigenfunction.
NodalRayReport nodal_ray_check(const PotentialSpec& spec, const NumericsConfig& cfg);

// Smallest outer radius R such that doubling it moves lambda1 by less than
// R_tol relative. Probes at fixed mesh spacing so truncation error, not
// discretization error, drives the comparison.
double adaptive_outer_radius(double kappa, const PotentialSpec& spec,
                             const NumericsConfig& cfg);

// Observed convergence order from lambda1 at three consecutive mesh
// refinements (ratio-2 n list): log2 of the difference quotient.
double convergence_order(double kappa, const PotentialSpec& spec,
                         const NumericsConfig& cfg, std::span<const int> n_list);

}  // namespace abspec
