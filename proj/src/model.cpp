#include "abspec/model.hpp"

#include <cmath>
#include <stdexcept>

namespace abspec {

double canonical_circulation(double kappa) {
  if (!std::isfinite(kappa)) {
    throw std::invalid_argument("canonical_circulation: kappa must be finite");
  }
  // m0 = ceil(kappa - 1/2) is the unique integer with kappa - m0 in (-1/2, 1/2];
  // ties at -1/2 therefore land on +1/2.
  const double m0 = std::ceil(kappa - 0.5);
  return kappa - m0;
}

double evaluate_potential(const PotentialSpec& spec, double r) {
  if (!(r > spec.a)) {
    throw std::domain_error("evaluate_potential: r must exceed the solenoid radius");
  }
  const double t = r - spec.a;
  return spec.beta / std::pow(t, spec.p) + spec.omega * std::pow(t, spec.q);
}

double potential_minimizer(const PotentialSpec& spec) {
  return spec.a + std::pow(spec.p * spec.beta / (spec.q * spec.omega),
                           1.0 / (spec.p + spec.q));
}

namespace {

// Infimum of V(r)*(r-a)^2 = beta*t^(2-p) + omega*t^(q+2) over t in (0, 1].
// For p = 2 the infimum is beta (t -> 0); for p > 2 the border term blows up
// and the minimum sits at t* or at t = 1.
double border_bound_infimum(const PotentialSpec& s) {
  if (s.p == 2.0) {
    return s.beta;
  }
  const double tstar =
      std::pow((s.p - 2.0) * s.beta / ((s.q + 2.0) * s.omega), 1.0 / (s.p + s.q));
  const double t = std::min(tstar, 1.0);
  return s.beta * std::pow(t, 2.0 - s.p) + s.omega * std::pow(t, s.q + 2.0);
}

}  // namespace

ValidationReport validate_potential(const PotentialSpec& spec) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& what) {
    rep.ok = false;
    rep.violations.push_back(what);
  };

  bool params_usable = true;
  if (!(spec.a > 0.0) || !std::isfinite(spec.a)) {
    fail("solenoid radius: a must be positive and finite");
    params_usable = false;
  }
  if (!(spec.p >= 2.0) || !std::isfinite(spec.p)) {
    fail("border exponent: p must be >= 2");
    params_usable = false;
  }
  if (!(spec.q >= 1.0) || !std::isfinite(spec.q)) {
    fail("confinement exponent: q must be >= 1");
    params_usable = false;
  }
  if (!(spec.beta > 0.0) || !(spec.omega > 0.0)) {
    fail("positivity: beta and omega must be positive");
    params_usable = false;
  }
  if (!(spec.omega > 0.0) || !(spec.q >= 1.0)) {
    fail("divergence: omega > 0 and q >= 1 required for V -> infinity");
  }
  if (params_usable && border_bound_infimum(spec) < 1.0) {
    fail("border bound: V(r)*(r-a)^2 >= 1 fails on (a, a+1]");
  }
  return rep;
}

RadialMesh build_mesh(double a, double R, int n) {
  if (!(R > a) || !std::isfinite(a) || !std::isfinite(R)) {
    throw std::invalid_argument("build_mesh: need finite R > a");
  }
  if (n < 1) {
    throw std::invalid_argument("build_mesh: need at least one interior node");
  }
  RadialMesh mesh;
  mesh.a = a;
  mesh.R = R;
  mesh.n = n;
  mesh.h = (R - a) / (n + 1);
  return mesh;
}

}  // namespace abspec
