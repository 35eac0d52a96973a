#pragma once

#include <array>
#include <functional>

#include "abspec/model.hpp"
#include "abspec/radial.hpp"

namespace abspec {

// A smooth curl-free planar vector field on |z| > a, given pointwise.
struct PlanarFieldSampler {
  std::function<std::array<double, 2>(double x, double y)> field;
  double inner_radius = 0.0;
};

// The standard flux-line potential A_kappa(z) = kappa/|z|^2 * (-y, x).
PlanarFieldSampler ab_potential(double kappa, double a);

// (1/2pi) * closed line integral of the field around the circle of radius
// rho, by the n_quad-point periodic trapezoid rule. For smooth curl-free
// fields the value is rho-independent up to quadrature error, which decays
// spectrally.
double circulation_of(const PlanarFieldSampler& field, double rho, int n_quad);

// Gauge quantum related: circulations differ by an integer (within tol).
bool is_gqr(double kappa1, double kappa2, double tol = 1e-9);

// Max entrywise difference between the mode matrix at (kappa, mode) and the
// one at (kappa + m_shift, mode + m_shift). The multivalued gauge phase
// e^{i m theta} acts as a pure relabeling of angular modes, so the two
// assemblies run through identical arithmetic whenever kappa + m_shift
// rounds exactly.
double conjugation_check(double kappa, int m_shift, int mode,
                         const RadialMesh& mesh, const PotentialSpec& spec);

}  // namespace abspec
