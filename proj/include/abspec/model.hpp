#pragma once

#include <string>
#include <vector>

namespace abspec {

// Scaled magnetic flux through the solenoid. Physics depends on kappa only
// through its class mod 1; the canonical representative lives in (-1/2, 1/2].
double canonical_circulation(double kappa);

// Confining radial potential outside a disk solenoid of radius a:
//
//   V(r) = beta/(r-a)^p + omega*(r-a)^q,   r > a.
//
// The first term walls the particle off from the border (needs
// V(r)*(r-a)^2 >= 1 near r = a), the second forces V -> infinity so the
// spectrum is purely discrete.
struct PotentialSpec {
  double a = 1.0;      // solenoid radius
  double beta = 1.0;   // border-barrier strength
  double p = 2.0;      // border exponent, >= 2
  double omega = 1.0;  // confinement strength
  double q = 2.0;      // confinement exponent, >= 1
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks the border bound inf_{(a,a+1]} V*(r-a)^2 >= 1, divergence at
// infinity, positivity and the parameter domains. Never throws; failures are
// listed by name in the report.
ValidationReport validate_potential(const PotentialSpec& spec);

// V(r) for r > a; throws std::domain_error at or inside the border.
double evaluate_potential(const PotentialSpec& spec, double r);

// Radius where V attains its minimum, r* = a + (p*beta/(q*omega))^(1/(p+q)).
double potential_minimizer(const PotentialSpec& spec);

// Uniform grid of n interior nodes on (a, R) with homogeneous Dirichlet
// values at both ends; r_i = a + i*h, h = (R-a)/(n+1). Nodes are computed,
// not stored.
struct RadialMesh {
  double a = 0.0;
  double R = 0.0;
  int n = 0;
  double h = 0.0;

  double node(int i) const { return a + (i + 1) * h; }  // i in [0, n)
};

RadialMesh build_mesh(double a, double R, int n);

// Solver knobs shared across the pipeline.
struct NumericsConfig {
  int max_mode = 3;        // angular-mode window half-width M
  double eig_tol = 1e-10;  // relative eigenvalue tolerance
  double deg_tol = 1e-8;   // relative degeneracy-grouping tolerance
  double R_growth = 2.0;   // outer-radius expansion factor
  double R_tol = 1e-8;     // relative eigenvalue change accepted as "domain big enough"
  int n_default = 4000;    // interior mesh nodes for production solves
};

}  // namespace abspec
