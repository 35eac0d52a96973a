#include "abspec/gauge.hpp"

#include <cmath>
#include <stdexcept>

namespace abspec {

PlanarFieldSampler ab_potential(double kappa, double a) {
  PlanarFieldSampler s;
  s.inner_radius = a;
  s.field = [kappa](double x, double y) -> std::array<double, 2> {
    const double r2 = x * x + y * y;
    return {-kappa * y / r2, kappa * x / r2};
  };
  return s;
}

double circulation_of(const PlanarFieldSampler& field, double rho, int n_quad) {
  if (!(rho > field.inner_radius)) {
    throw std::domain_error("circulation_of: circle must lie in the accessible region");
  }
  if (n_quad < 8) {
    throw std::invalid_argument("circulation_of: need at least 8 quadrature points");
  }
  // Equal weights on a periodic integrand; ds = rho*(-sin, cos) dtheta and the
  // 1/(2pi) prefactor cancel into a plain average times rho.
  double sum = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double theta = 2.0 * M_PI * j / n_quad;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const auto A = field.field(rho * c, rho * s);
    sum += A[0] * (-s) + A[1] * c;
  }
  return sum * rho / n_quad;
}

bool is_gqr(double kappa1, double kappa2, double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("is_gqr: tol must be positive");
  }
  const double d = kappa2 - kappa1;
  return std::abs(d - std::round(d)) <= tol;
}

double conjugation_check(double kappa, int m_shift, int mode,
                         const RadialMesh& mesh, const PotentialSpec& spec) {
  const TridiagonalOperator A = assemble_tridiagonal(kappa, mode, spec, mesh);
  const TridiagonalOperator B =
      assemble_tridiagonal(kappa + m_shift, mode + m_shift, spec, mesh);
  double worst = 0.0;
  for (int i = 0; i < A.size(); ++i) {
    worst = std::max(worst, std::abs(A.diag[i] - B.diag[i]));
  }
  for (std::size_t i = 0; i < A.off.size(); ++i) {
    worst = std::max(worst, std::abs(A.off[i] - B.off[i]));
  }
  return worst;
}

}  // namespace abspec
