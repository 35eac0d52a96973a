#include "abspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "abspec/eigensolve.hpp"
#include "abspec/errors.hpp"
#include "abspec/gauge.hpp"
#include "abspec/io.hpp"
#include "abspec/spectrum.hpp"

namespace abspec {

namespace {

struct Harness {
  const PotentialSpec& spec;
  const NumericsConfig& cfg;
  std::ostream& out;
  std::vector<CheckResult> results;

  void run(const std::string& name, const std::function<CheckResult()>& body) {
    CheckResult res;
    res.name = name;
    try {
      res = body();
      res.name = name;
    } catch (const std::exception& ex) {
      res.pass = false;
      res.detail = std::string("exception: ") + ex.what();
    }
    out << (res.pass ? "PASS" : "FAIL") << "  " << name;
    if (!res.detail.empty()) out << "  [" << res.detail << "]";
    out << '\n' << std::flush;
    results.push_back(res);
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const PotentialSpec& spec,
                                          const NumericsConfig& cfg,
                                          std::ostream& out) {
  Harness h{spec, cfg, out, {}};

  h.run("potential validity", [&] {
    CheckResult r;
    const ValidationReport rep = validate_potential(spec);
    r.pass = rep.ok;
    if (!rep.ok) {
      std::string joined;
      for (const auto& v : rep.violations) {
        if (!joined.empty()) joined += "; ";
        joined += v;
      }
      r.detail = joined;
    }
    return r;
  });
  if (!h.results.back().pass) {
    // Nothing downstream is meaningful for an inadmissible potential.
    return h.results;
  }

  // One shared mesh sized for the kappa range exercised below: the symmetry
  // checks are matrix identities only when every solve sees the same nodes.
  const double R = std::max(adaptive_outer_radius(-1.5, spec, cfg),
                            adaptive_outer_radius(1.5, spec, cfg));
  const RadialMesh mesh = build_mesh(spec.a, R, cfg.n_default);
  const auto lambda_of = [&](double kappa) {
    return ground_energy_on_mesh(kappa, spec, mesh, cfg);
  };

  h.run("periodicity lambda(kappa) = lambda(kappa+1)", [&] {
    CheckResult r;
    double worst = 0.0;
    for (const double kappa : {-0.4, -0.1, 0.2, 0.5}) {
      const double l0 = lambda_of(kappa);
      const double l1 = lambda_of(kappa + 1.0);
      worst = std::max(worst, std::abs(l1 - l0) / std::abs(l0));
    }
    r.pass = worst <= 1e-12;
    r.detail = "max rel diff " + fmt(worst);
    return r;
  });

  h.run("evenness lambda(kappa) = lambda(-kappa)", [&] {
    CheckResult r;
    double worst = 0.0;
    for (const double kappa : {-0.4, -0.1, 0.2, 0.5}) {
      const double l0 = lambda_of(kappa);
      const double l1 = lambda_of(-kappa);
      worst = std::max(worst, std::abs(l1 - l0) / std::abs(l0));
    }
    r.pass = worst <= 1e-12;
    r.detail = "max rel diff " + fmt(worst);
    return r;
  });

  h.run("strict monotonicity on [0, 1/2]", [&] {
    CheckResult r;
    const int pts = 26;
    std::vector<double> lam(pts);
    for (int i = 0; i < pts; ++i) {
      lam[i] = lambda_of(0.5 * i / (pts - 1));
    }
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < pts; ++i) {
      min_gap = std::min(min_gap, lam[i + 1] - lam[i]);
    }
    const double floor = 10.0 * cfg.eig_tol * lam.back();
    r.pass = min_gap > floor;
    r.detail = "min consecutive gap " + fmt(min_gap) + " vs floor " + fmt(floor);
    return r;
  });

  h.run("eigenvalue derivative identity (analytic vs finite difference)", [&] {
    CheckResult r;
    double worst = 0.0;
    for (const double kappa : {0.1, 0.25, 0.4}) {
      const GroundState gs = ground_state_on_mesh(kappa, spec, mesh, cfg);
      const double hf = hf_derivative(gs, cfg.deg_tol);
      const double fd = fd_derivative_on_mesh(kappa, 1e-4, spec, mesh, cfg);
      worst = std::max(worst, std::abs(hf - fd) / std::abs(fd));
    }
    r.pass = worst <= 1e-4;
    r.detail = "max rel mismatch " + fmt(worst);
    return r;
  });

  h.run("degeneracy dichotomy", [&] {
    CheckResult r;
    r.pass = true;
    for (const double kappa : {0.0, 0.1, 0.25, 0.49}) {
      const Degeneracy d = degeneracy_multiplicity_on_mesh(kappa, spec, mesh, cfg);
      if (d.multiplicity != 1) r.pass = false;
    }
    const Degeneracy dhalf = degeneracy_multiplicity_on_mesh(0.5, spec, mesh, cfg);
    if (dhalf.multiplicity != 2 || dhalf.modes != std::vector<int>{0, 1}) {
      r.pass = false;
    }
    r.detail = "multiplicity at 1/2: " + std::to_string(dhalf.multiplicity);
    return r;
  });

  h.run("derivative sign change across kappa = 0", [&] {
    CheckResult r;
    const double dm = fd_derivative_on_mesh(-0.1, 1e-4, spec, mesh, cfg);
    const double dp = fd_derivative_on_mesh(0.1, 1e-4, spec, mesh, cfg);
    r.pass = dm < 0.0 && dp > 0.0;
    r.detail = "fd(-0.1) = " + fmt(dm) + ", fd(+0.1) = " + fmt(dp);
    return r;
  });

  h.run("nodal ray at kappa = 1/2", [&] {
    CheckResult r;
    const NodalRayReport rep = nodal_ray_check(spec, cfg);
    r.pass = rep.max_on_ray == 0.0 && rep.min_off_ray > 0.0 &&
             rep.max_identity_dev <= 1e-14;
    r.detail = "on-ray max " + fmt(rep.max_on_ray) + ", off-ray min " +
               fmt(rep.min_off_ray);
    return r;
  });

  h.run("gauge criterion (integer circulation difference)", [&] {
    CheckResult r;
    r.pass = true;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        const double k1 = -2.0 + 0.5 * i;
        const double k2 = -2.0 + 0.5 * j;
        const bool expect = (i % 2) == (j % 2);  // 0.5-spaced grid
        if (is_gqr(k1, k2, 1e-9) != expect) r.pass = false;
      }
    }
    const RadialMesh small = build_mesh(spec.a, spec.a + 5.0, 64);
    double worst = 0.0;
    for (const double kappa : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
      for (int shift = -2; shift <= 2; ++shift) {
        for (int mode = -2; mode <= 2; ++mode) {
          worst = std::max(worst,
                           conjugation_check(kappa, shift, mode, small, spec));
        }
      }
    }
    if (worst != 0.0) r.pass = false;
    r.detail = "max conjugation residual " + fmt(worst);
    return r;
  });

  h.run("eigensolver agrees with QL oracle", [&] {
    CheckResult r;
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::uniform_int_distribution<int> size_dist(2, 50);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = size_dist(rng);
      std::vector<double> d(n), e(n - 1);
      for (auto& x : d) x = 4.0 * unif(rng);
      for (auto& x : e) x = 2.0 * unif(rng);
      const auto all = dense_brute_force(d, e);
      const auto low = lowest_k(d, e, n, 1e-12);
      double scale = 0.0;
      for (int i = 0; i < n; ++i) {
        double row = std::abs(d[i]);
        if (i > 0) row += std::abs(e[i - 1]);
        if (i + 1 < n) row += std::abs(e[i]);
        scale = std::max(scale, row);
      }
      for (int i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(all[i] - low[i]) / std::max(1.0, scale));
      }
    }
    r.pass = worst <= 1e-10;
    r.detail = "worst scaled diff " + fmt(worst);
    return r;
  });

  h.run("discretization order is second order", [&] {
    CheckResult r;
    const int base = std::max(1, cfg.n_default / 4);
    const int n_list[] = {base, 2 * base, 4 * base};
    double worst_dev = 0.0;
    std::string orders;
    for (const double kappa : {0.0, 0.3}) {
      const double order = convergence_order(kappa, spec, cfg, n_list);
      worst_dev = std::max(worst_dev, std::abs(order - 2.0));
      if (!orders.empty()) orders += ", ";
      orders += fmt(order);
    }
    r.pass = worst_dev <= 0.3;
    r.detail = "observed orders " + orders;
    return r;
  });

  return h.results;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace abspec
