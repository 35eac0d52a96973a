#include "abspec/radial.hpp"

#include <cmath>
#include <stdexcept>

namespace abspec {

double effective_potential(double kappa, int mode, const PotentialSpec& spec, double r) {
  const double mu = static_cast<double>(mode) - kappa;
  return (mu * mu - 0.25) / (r * r) + evaluate_potential(spec, r);
}

TridiagonalOperator assemble_tridiagonal(double kappa, int mode,
                                         const PotentialSpec& spec,
                                         const RadialMesh& mesh) {
  TridiagonalOperator T;
  T.mesh = mesh;
  T.mode = mode;
  T.kappa = kappa;
  const int n = mesh.n;
  const double two_over_h2 = 2.0 / (mesh.h * mesh.h);
  T.diag.resize(n);
  T.off.assign(n > 0 ? n - 1 : 0, -1.0 / (mesh.h * mesh.h));
  bool positive = true;
  for (int i = 0; i < n; ++i) {
    const double di = two_over_h2 + effective_potential(kappa, mode, spec, mesh.node(i));
    T.diag[i] = di;
    positive = positive && (di > 0.0);
  }
  T.diagonal_positive = positive;
  return T;
}

double rayleigh_quotient(const TridiagonalOperator& T, std::span<const double> g) {
  const int n = T.size();
  if (static_cast<int>(g.size()) != n) {
    throw std::invalid_argument("rayleigh_quotient: vector length mismatch");
  }
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    double tg = T.diag[i] * g[i];
    if (i > 0) tg += T.off[i - 1] * g[i - 1];
    if (i + 1 < n) tg += T.off[i] * g[i + 1];
    num += g[i] * tg;
    den += g[i] * g[i];
  }
  if (den == 0.0) {
    throw std::invalid_argument("rayleigh_quotient: zero vector");
  }
  return num / den;
}

double rayleigh_quotient(double kappa, int mode, const PotentialSpec& spec,
                         const RadialMesh& mesh, std::span<const double> g) {
  return rayleigh_quotient(assemble_tridiagonal(kappa, mode, spec, mesh), g);
}

}  // namespace abspec
