#include <cmath>
#include <sstream>
#include <stdexcept>

#include "abspec/errors.hpp"
#include "abspec/io.hpp"
#include "abspec/spectrum.hpp"
#include "doctest.h"

using namespace abspec;

namespace {

const PotentialSpec kDefault;

NumericsConfig desk_config() {
  NumericsConfig cfg;
  cfg.n_default = 600;  // unit tests run at reduced resolution
  return cfg;
}

}  // namespace

TEST_CASE("mode ordering at kappa = 0 and the half-integer tie") {
  const NumericsConfig cfg = desk_config();
  const double R = adaptive_outer_radius(0.0, kDefault, cfg);
  const RadialMesh mesh = build_mesh(kDefault.a, R, cfg.n_default);

  const double m0 = mode_ground_energy(0.0, 0, kDefault, mesh);
  const double m1 = mode_ground_energy(0.0, 1, kDefault, mesh);
  CHECK(m0 < m1);

  // identical matrices => identical eigenvalues, bit for bit
  CHECK(mode_ground_energy(0.5, 0, kDefault, mesh) ==
        mode_ground_energy(0.5, 1, kDefault, mesh));
}

TEST_CASE("frozen reference value at kappa = 0, production resolution") {
  // Reference computed once with the QL oracle on a coarse mesh plus
  // Richardson refinement over n in {1000, 2000, 4000}, then frozen:
  //   adaptive R          = 7.1374777037983161
  //   n=200 dense QL      = 4.1849266178883875 (bisection agrees to 1.1e-12)
  //   n=4000 value        = 4.1855017226771434
  //   Richardson limit    = 4.185503278650379
  const double lambda_ref = 4.1855017226771434;

  const NumericsConfig cfg;  // production defaults, n = 4000
  const double R = adaptive_outer_radius(0.0, kDefault, cfg);
  const RadialMesh mesh = build_mesh(kDefault.a, R, cfg.n_default);
  const double lambda = mode_ground_energy(0.0, 0, kDefault, mesh);
  CHECK(std::abs(lambda - lambda_ref) <= 1e-9 * lambda_ref);

  // The two independent eigensolvers still agree on the coarse mesh.
  const RadialMesh coarse = build_mesh(kDefault.a, R, 200);
  const TridiagonalOperator Tc = assemble_tridiagonal(0.0, 0, kDefault, coarse);
  const double dense = dense_brute_force(Tc)[0];
  const double bisect = lowest_k(Tc, 1, 1e-12)[0];
  CHECK(std::abs(dense - bisect) <= 1e-10 * std::abs(dense));

  // Richardson consistency: the frozen value sits h^2-close to the limit.
  const double l1000 = mode_ground_energy(0.0, 0, kDefault,
                                          build_mesh(kDefault.a, R, 1000));
  const double l2000 = mode_ground_energy(0.0, 0, kDefault,
                                          build_mesh(kDefault.a, R, 2000));
  const double limit = lambda + (lambda - l2000) / 3.0;
  CHECK(std::abs(l1000 - l2000) > std::abs(l2000 - lambda));  // shrinking steps
  CHECK(std::abs(lambda - limit) <= 1e-5 * limit);
}

TEST_CASE("ground state picks the expected mode") {
  const NumericsConfig cfg = desk_config();
  CHECK(ground_state(0.0, kDefault, cfg).mode_star == 0);
  CHECK(ground_state(0.3, kDefault, cfg).mode_star == 0);

  const GroundState shifted = ground_state(1.3, kDefault, cfg);
  CHECK(shifted.mode_star == 1);
  const GroundState base = ground_state(0.3, kDefault, cfg);
  CHECK(std::abs(shifted.lambda1 - base.lambda1) <= 1e-12 * base.lambda1);
}

TEST_CASE("ground state invariants") {
  const NumericsConfig cfg = desk_config();
  const GroundState gs = ground_state(0.25, kDefault, cfg);
  CHECK(std::abs(gs.mode_star) < cfg.max_mode);
  double nrm = 0.0;
  for (const double gi : gs.g) nrm += gi * gi;
  CHECK(std::sqrt(nrm) == doctest::Approx(1.0).epsilon(1e-12));
  // Rayleigh quotient of the returned vector reproduces lambda1.
  CHECK(rayleigh_quotient(gs.kappa, gs.mode_star, kDefault, gs.mesh, gs.g) ==
        doctest::Approx(gs.lambda1).epsilon(1e-10));
}

TEST_CASE("mode window doubles for far-out circulations and eventually fails") {
  const NumericsConfig cfg = desk_config();
  const GroundState far = ground_state(7.0, kDefault, cfg);  // needs M = 12
  CHECK(far.mode_star == 7);
  CHECK_THROWS_AS(ground_state(100.0, kDefault, cfg), mode_range_error);
}

TEST_CASE("derivative identity against central differences") {
  const NumericsConfig cfg = desk_config();
  const double R = adaptive_outer_radius(0.25, kDefault, cfg);
  const RadialMesh mesh = build_mesh(kDefault.a, R, cfg.n_default);

  for (const double kappa : {0.1, 0.25, 0.4}) {
    const GroundState gs = ground_state_on_mesh(kappa, kDefault, mesh, cfg);
    const double hf = hf_derivative(gs, cfg.deg_tol);
    CHECK(hf > 0.0);
    const double fd = fd_derivative_on_mesh(kappa, 1e-4, kDefault, mesh, cfg);
    CHECK(std::abs(hf - fd) <= 1e-4 * std::abs(fd));
  }
}

TEST_CASE("derivative vanishes linearly at integer circulation") {
  const NumericsConfig cfg = desk_config();
  const GroundState gs = ground_state(1e-6, kDefault, cfg);
  const double hf = hf_derivative(gs, cfg.deg_tol);
  double weight = 0.0;
  for (int i = 0; i < gs.mesh.n; ++i) {
    const double r = gs.mesh.node(i);
    weight += gs.g[i] * gs.g[i] / (r * r);
  }
  CHECK(hf > 0.0);
  CHECK(hf <= 1e-5 * weight);
}

TEST_CASE("derivative endpoints are reported undefined") {
  const NumericsConfig cfg = desk_config();
  CHECK_THROWS_AS(hf_derivative(ground_state(0.0, kDefault, cfg), cfg.deg_tol),
                  undefined_derivative_error);
  CHECK_THROWS_AS(hf_derivative(ground_state(0.5, kDefault, cfg), cfg.deg_tol),
                  undefined_derivative_error);
  CHECK_THROWS_AS(fd_derivative(0.49, 0.02, kDefault, cfg), std::invalid_argument);
  CHECK_THROWS_AS(fd_derivative(0.5, 1e-4, kDefault, cfg), std::invalid_argument);
}

TEST_CASE("central difference has second-order step dependence") {
  const NumericsConfig cfg = desk_config();
  const double R = adaptive_outer_radius(0.25, kDefault, cfg);
  const RadialMesh mesh = build_mesh(kDefault.a, R, cfg.n_default);
  const GroundState gs = ground_state_on_mesh(0.25, kDefault, mesh, cfg);
  // The analytic value is the exact derivative of the discrete eigenvalue
  // curve, so the finite-difference error must shrink by ~4 when h halves.
  const double exact = hf_derivative(gs, cfg.deg_tol);
  const double e1 = std::abs(fd_derivative_on_mesh(0.25, 2e-3, kDefault, mesh, cfg) - exact);
  const double e2 = std::abs(fd_derivative_on_mesh(0.25, 1e-3, kDefault, mesh, cfg) - exact);
  const double ratio = e1 / e2;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("degeneracy multiplicity dichotomy") {
  const NumericsConfig cfg = desk_config();
  const Degeneracy half = degeneracy_multiplicity(0.5, kDefault, cfg);
  CHECK(half.multiplicity == 2);
  CHECK(half.modes == std::vector<int>{0, 1});

  const Degeneracy quarter = degeneracy_multiplicity(0.25, kDefault, cfg);
  CHECK(quarter.multiplicity == 1);
  CHECK(quarter.modes == std::vector<int>{0});

  const Degeneracy zero = degeneracy_multiplicity(0.0, kDefault, cfg);
  CHECK(zero.multiplicity == 1);
  CHECK(zero.modes == std::vector<int>{0});
}

TEST_CASE("sweep reproduces periodicity, evenness and monotonicity") {
  NumericsConfig cfg = desk_config();
  cfg.n_default = 400;
  const SweepResult res = sweep(-1.5, 1.5, 61, kDefault, cfg);
  REQUIRE(static_cast<int>(res.kappas.size()) == 61);

  // one period = 20 grid steps
  for (int k = 0; k + 20 < 61; ++k) {
    CHECK(std::abs(res.lambdas[k + 20] - res.lambdas[k]) <=
          1e-10 * res.lambdas[k]);
  }
  // mirror pairs around the center index 30
  for (int k = 0; k < 61; ++k) {
    CHECK(std::abs(res.lambdas[60 - k] - res.lambdas[k]) <=
          1e-10 * res.lambdas[k]);
  }
  // restricted monotone segment: kappa in [0, 0.5] is indices 30..40
  for (int k = 30; k < 40; ++k) {
    CHECK(res.lambdas[k + 1] > res.lambdas[k]);
  }
  // derivative columns: defined off the special points, undefined on them
  CHECK_FALSE(res.hf_derivs[30].has_value());  // kappa = 0
  CHECK_FALSE(res.hf_derivs[40].has_value());  // kappa = 0.5
  CHECK_FALSE(res.fd_derivs[40].has_value());
  CHECK(res.hf_derivs[35].has_value());
  CHECK(res.fd_derivs[35].has_value());
  CHECK(*res.hf_derivs[35] > 0.0);
  CHECK(res.hf_derivs[25].has_value());
  CHECK(*res.hf_derivs[25] < 0.0);  // falling branch left of zero
}

TEST_CASE("parallel and serial sweeps agree bitwise") {
  NumericsConfig cfg = desk_config();
  cfg.n_default = 300;
  const SweepResult par = sweep(-0.4, 0.4, 9, kDefault, cfg);
  const SweepResult ser = sweep_serial(-0.4, 0.4, 9, kDefault, cfg);
  CHECK(par.lambdas == ser.lambdas);
  CHECK(par.modes == ser.modes);
  for (int k = 0; k < 9; ++k) {
    CHECK(par.hf_derivs[k] == ser.hf_derivs[k]);
    CHECK(par.fd_derivs[k] == ser.fd_derivs[k]);
  }
  std::ostringstream a, b;
  write_sweep_csv(a, par);
  write_sweep_csv(b, ser);
  CHECK(a.str() == b.str());
}

TEST_CASE("sweep rejects bad grids and aborts on failing points") {
  const NumericsConfig cfg = desk_config();
  CHECK_THROWS_AS(sweep(0.0, 1.0, 1, kDefault, cfg), std::invalid_argument);
  CHECK_THROWS_WITH_AS(sweep(99.9, 100.1, 3, kDefault, desk_config()),
                       doctest::Contains("kappa"), mode_range_error);
}

TEST_CASE("nodal ray structure at kappa = 1/2") {
  const NumericsConfig cfg = desk_config();
  const NodalRayReport rep = nodal_ray_check(kDefault, cfg);
  CHECK(rep.max_on_ray == 0.0);
  CHECK(rep.min_off_ray > 0.0);
  CHECK(rep.max_identity_dev <= 1e-14);
}

TEST_CASE("adaptive outer radius certifies itself and tracks confinement") {
  const NumericsConfig cfg = desk_config();
  const double R = adaptive_outer_radius(0.0, kDefault, cfg);
  CHECK(R > kDefault.a);

  // doubling the certified radius moves lambda1 by less than R_tol
  const double lam1 = ground_energy_on_mesh(
      0.0, kDefault, build_mesh(kDefault.a, R, cfg.n_default), cfg);
  const double lam2 = ground_energy_on_mesh(
      0.0, kDefault, build_mesh(kDefault.a, 2.0 * R - kDefault.a, 2 * cfg.n_default),
      cfg);
  CHECK(std::abs(lam2 - lam1) <= 10.0 * cfg.R_tol * std::abs(lam1));

  PotentialSpec stiff = kDefault;
  stiff.omega = 100.0;
  CHECK(adaptive_outer_radius(0.0, stiff, cfg) < R);

  PotentialSpec quartic = kDefault;
  quartic.q = 4.0;
  CHECK(adaptive_outer_radius(0.0, quartic, cfg) <= R);
}

TEST_CASE("observed convergence order is second order") {
  const NumericsConfig cfg = desk_config();
  const int n_list[] = {250, 500, 1000};
  for (const double kappa : {0.0, 0.3}) {
    const double order = convergence_order(kappa, kDefault, cfg, n_list);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
  }
  const int too_short[] = {250, 500};
  CHECK_THROWS_AS(convergence_order(0.3, kDefault, cfg, too_short),
                  std::invalid_argument);
  const int not_doubling[] = {250, 500, 999};
  CHECK_THROWS_AS(convergence_order(0.3, kDefault, cfg, not_doubling),
                  std::invalid_argument);
}
