#include "abspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "abspec/errors.hpp"

namespace abspec {

namespace {

constexpr double kSweepFdStep = 1e-4;

struct ModeScan {
  std::vector<double> energies;  // for m in [-M, M]
  int M = 0;
  int argmin = 0;  // mode index (not array index)
};

double energy_at(const ModeScan& scan, int mode) {
  return scan.energies[static_cast<std::size_t>(mode + scan.M)];
}

// Per-mode ground energies over a window [-M, M]; the window doubles (up to
// four times) while the argmin sits on its boundary.
ModeScan scan_modes(double kappa, const PotentialSpec& spec, const RadialMesh& mesh,
                    const NumericsConfig& cfg) {
  int M = std::max(1, cfg.max_mode);
  for (int attempt = 0;; ++attempt) {
    ModeScan scan;
    scan.M = M;
    scan.energies.assign(2 * M + 1, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (int idx = 0; idx <= 2 * M; ++idx) {
      const int m = idx - M;
      scan.energies[idx] =
          mode_ground_energy(kappa, m, spec, mesh, cfg.eig_tol);
    }
    int best = -M;
    for (int m = -M + 1; m <= M; ++m) {
      if (energy_at(scan, m) < energy_at(scan, best)) best = m;
    }
    scan.argmin = best;
    if (std::abs(best) < M) return scan;
    if (attempt >= 4) {
      throw mode_range_error("ground mode stuck on window boundary |m| = " +
                             std::to_string(M) + " at kappa = " +
                             std::to_string(kappa));
    }
    M *= 2;
  }
}

// True when [kappa-h, kappa+h] stays inside one analyticity branch, i.e.
// does not touch a half-integer circulation where branches cross.
bool stencil_on_one_branch(double kappa, double h) {
  return std::floor(kappa - h + 0.5) == std::floor(kappa + h + 0.5);
}

enum class PointFailure { none, convergence, mode_range, other };

struct SweepPoint {
  double lambda = 0.0;
  int mode = 0;
  std::optional<double> hf;
  std::optional<double> fd;
  PointFailure failure = PointFailure::none;
  std::string message;
};

SweepPoint evaluate_sweep_point(double kappa, const PotentialSpec& spec,
                                const RadialMesh& mesh, const NumericsConfig& cfg) {
  SweepPoint pt;
  try {
    const GroundState gs = ground_state_on_mesh(kappa, spec, mesh, cfg);
    pt.lambda = gs.lambda1;
    pt.mode = gs.mode_star;
    try {
      pt.hf = hf_derivative(gs, cfg.deg_tol);
    } catch (const undefined_derivative_error&) {
    }
    try {
      pt.fd = fd_derivative_on_mesh(kappa, kSweepFdStep, spec, mesh, cfg);
    } catch (const std::invalid_argument&) {
    }
  } catch (const convergence_error& ex) {
    pt.failure = PointFailure::convergence;
    pt.message = ex.what();
  } catch (const mode_range_error& ex) {
    pt.failure = PointFailure::mode_range;
    pt.message = ex.what();
  } catch (const std::exception& ex) {
    pt.failure = PointFailure::other;
    pt.message = ex.what();
  }
  return pt;
}

SweepResult sweep_impl(double kappa_from, double kappa_to, int steps,
                       const PotentialSpec& spec, const NumericsConfig& cfg,
                       bool parallel) {
  if (steps < 2) {
    throw std::invalid_argument("sweep: need at least 2 steps");
  }
  const double R = std::max(adaptive_outer_radius(kappa_from, spec, cfg),
                            adaptive_outer_radius(kappa_to, spec, cfg));
  const RadialMesh mesh = build_mesh(spec.a, R, cfg.n_default);
  const double step = (kappa_to - kappa_from) / (steps - 1);

  std::vector<double> kappas(steps);
  for (int k = 0; k < steps; ++k) kappas[k] = kappa_from + k * step;

  std::vector<SweepPoint> pts(steps);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < steps; ++k) {
      pts[k] = evaluate_sweep_point(kappas[k], spec, mesh, cfg);
    }
  } else {
    for (int k = 0; k < steps; ++k) {
      pts[k] = evaluate_sweep_point(kappas[k], spec, mesh, cfg);
    }
  }

  for (int k = 0; k < steps; ++k) {
    if (pts[k].failure != PointFailure::none) {
      const std::string msg = "sweep failed at kappa = " +
                              std::to_string(kappas[k]) + ": " + pts[k].message;
      if (pts[k].failure == PointFailure::convergence) {
        throw convergence_error(msg, std::numeric_limits<double>::quiet_NaN());
      }
      if (pts[k].failure == PointFailure::mode_range) {
        throw mode_range_error(msg);
      }
      throw std::runtime_error(msg);
    }
  }

  SweepResult out;
  out.kappas = std::move(kappas);
  out.lambdas.resize(steps);
  out.modes.resize(steps);
  out.hf_derivs.resize(steps);
  out.fd_derivs.resize(steps);
  for (int k = 0; k < steps; ++k) {
    out.lambdas[k] = pts[k].lambda;
    out.modes[k] = pts[k].mode;
    out.hf_derivs[k] = pts[k].hf;
    out.fd_derivs[k] = pts[k].fd;
  }
  return out;
}

}  // namespace

double mode_ground_energy(double kappa, int mode, const PotentialSpec& spec,
                          const RadialMesh& mesh, double eig_tol) {
  const TridiagonalOperator T = assemble_tridiagonal(kappa, mode, spec, mesh);
  return lowest_k(T, 1, eig_tol)[0];
}

double ground_energy_on_mesh(double kappa, const PotentialSpec& spec,
                             const RadialMesh& mesh, const NumericsConfig& cfg,
                             int* mode_star) {
  const ModeScan scan = scan_modes(kappa, spec, mesh, cfg);
  if (mode_star) *mode_star = scan.argmin;
  return energy_at(scan, scan.argmin);
}

GroundState ground_state_on_mesh(double kappa, const PotentialSpec& spec,
                                 const RadialMesh& mesh, const NumericsConfig& cfg) {
  const ModeScan scan = scan_modes(kappa, spec, mesh, cfg);
  GroundState gs;
  gs.kappa = kappa;
  gs.mode_star = scan.argmin;
  gs.lambda1 = energy_at(scan, scan.argmin);
  gs.mesh = mesh;
  gs.spec = spec;
  const TridiagonalOperator T = assemble_tridiagonal(kappa, gs.mode_star, spec, mesh);
  gs.g = inverse_iteration(T, gs.lambda1).vector;
  return gs;
}

GroundState ground_state(double kappa, const PotentialSpec& spec,
                         const NumericsConfig& cfg) {
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  return ground_state_on_mesh(kappa, spec, build_mesh(spec.a, R, cfg.n_default), cfg);
}

double hf_derivative(const GroundState& gs, double deg_tol) {
  // On the m* branch the matrix depends on kappa only through (m* - kappa)^2,
  // so the eigenvalue derivative is exactly 2*(kappa - m*)*<g, g/r^2>.
  const double kappa_eff = gs.kappa - gs.mode_star;
  if (std::abs(kappa_eff) <= deg_tol) {
    throw undefined_derivative_error(
        "hf_derivative: undefined at integer circulation (endpoint)");
  }
  if (std::abs(std::abs(kappa_eff) - 0.5) <= deg_tol) {
    throw undefined_derivative_error(
        "hf_derivative: undefined at half-integer circulation (level crossing)");
  }
  double num = 0.0;
  double den = 0.0;
  for (int i = 0; i < gs.mesh.n; ++i) {
    const double r = gs.mesh.node(i);
    num += gs.g[i] * gs.g[i] / (r * r);
    den += gs.g[i] * gs.g[i];
  }
  return 2.0 * kappa_eff * num / den;
}

double fd_derivative_on_mesh(double kappa, double h, const PotentialSpec& spec,
                             const RadialMesh& mesh, const NumericsConfig& cfg) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw std::invalid_argument("fd_derivative: h must be positive");
  }
  const double kp = kappa + h;
  const double km = kappa - h;
  if (!(kp > km)) {
    throw std::invalid_argument("fd_derivative: h vanishes at this kappa");
  }
  if (!stencil_on_one_branch(kappa, h)) {
    throw std::invalid_argument(
        "fd_derivative: stencil crosses a half-integer circulation");
  }
  const double lp = ground_energy_on_mesh(kp, spec, mesh, cfg);
  const double lm = ground_energy_on_mesh(km, spec, mesh, cfg);
  return (lp - lm) / (kp - km);
}

double fd_derivative(double kappa, double h, const PotentialSpec& spec,
                     const NumericsConfig& cfg) {
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  return fd_derivative_on_mesh(kappa, h, spec, build_mesh(spec.a, R, cfg.n_default),
                               cfg);
}

Degeneracy degeneracy_multiplicity_on_mesh(double kappa, const PotentialSpec& spec,
                                           const RadialMesh& mesh,
                                           const NumericsConfig& cfg) {
  const ModeScan scan = scan_modes(kappa, spec, mesh, cfg);
  const double lambda1 = energy_at(scan, scan.argmin);
  const double tol = cfg.deg_tol * std::max(1.0, std::abs(lambda1));
  Degeneracy deg;
  for (int m = -scan.M; m <= scan.M; ++m) {
    if (energy_at(scan, m) - lambda1 <= tol) {
      deg.modes.push_back(m);
    }
  }
  deg.multiplicity = static_cast<int>(deg.modes.size());
  return deg;
}

Degeneracy degeneracy_multiplicity(double kappa, const PotentialSpec& spec,
                                   const NumericsConfig& cfg) {
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  return degeneracy_multiplicity_on_mesh(kappa, spec,
                                         build_mesh(spec.a, R, cfg.n_default), cfg);
}

SweepResult sweep(double kappa_from, double kappa_to, int steps,
                  const PotentialSpec& spec, const NumericsConfig& cfg) {
  return sweep_impl(kappa_from, kappa_to, steps, spec, cfg, true);
}

SweepResult sweep_serial(double kappa_from, double kappa_to, int steps,
                         const PotentialSpec& spec, const NumericsConfig& cfg) {
  return sweep_impl(kappa_from, kappa_to, steps, spec, cfg, false);
}

NodalRayReport nodal_ray_check(const PotentialSpec& spec, const NumericsConfig& cfg) {
  const double kappa = 0.5;
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  const RadialMesh mesh = build_mesh(spec.a, R, cfg.n_default);
  const Degeneracy deg = degeneracy_multiplicity_on_mesh(kappa, spec, mesh, cfg);
  if (deg.multiplicity != 2 || deg.modes != std::vector<int>{0, 1}) {
    throw inconsistency_error(
        "nodal_ray_check: expected the {0, 1} degenerate pair at kappa = 1/2");
  }
  const GroundState gs = ground_state_on_mesh(kappa, spec, mesh, cfg);

  // Radial factor of psi; both degenerate modes share it by construction.
  std::vector<double> f(mesh.n);
  double fpeak = 0.0;
  for (int i = 0; i < mesh.n; ++i) {
    f[i] = gs.g[i] / std::sqrt(mesh.node(i));
    fpeak = std::max(fpeak, std::abs(f[i]));
  }

  // psi(r, theta) = f(r) (1 + e^{i theta})/2, sampled at angles with exact
  // unit-circle coordinates so the theta = pi cancellation is exact.
  struct Angle {
    double theta, cos, sin;
  };
  const Angle angles[] = {{0.0, 1.0, 0.0}, {M_PI / 2.0, 0.0, 1.0}, {M_PI, -1.0, 0.0}};

  NodalRayReport rep;
  rep.min_off_ray = std::numeric_limits<double>::infinity();
  for (const Angle& ang : angles) {
    const double re = 0.5 * (1.0 + ang.cos);
    const double im = 0.5 * ang.sin;
    const double envelope = std::hypot(re, im);          // |1 + e^{i theta}| / 2
    const double half_angle = std::abs(std::cos(0.5 * ang.theta));
    for (int i = 0; i < mesh.n; ++i) {
      const double amp = std::abs(f[i]) * envelope;
      rep.max_identity_dev = std::max(
          rep.max_identity_dev, std::abs(amp - std::abs(f[i]) * half_angle));
      if (ang.theta == M_PI) {
        rep.max_on_ray = std::max(rep.max_on_ray, amp);
      } else if (std::abs(f[i]) > 0.1 * fpeak) {
        rep.min_off_ray = std::min(rep.min_off_ray, amp);
      }
    }
  }
  return rep;
}

double adaptive_outer_radius(double kappa, const PotentialSpec& spec,
                             const NumericsConfig& cfg) {
  // Scale estimate from a coarse fixed-size solve.
  const int n_probe = 800;
  const RadialMesh coarse = build_mesh(spec.a, spec.a + 10.0, n_probe);
  const int m_near = static_cast<int>(std::llround(kappa));
  const double lam_est =
      mode_ground_energy(kappa, m_near, spec, coarse, cfg.eig_tol);

  const double R0 = spec.a + 3.0 * std::pow(lam_est / spec.omega, 1.0 / spec.q);
  // Grow the domain at (nearly) fixed spacing: comparing lambda1 across radii
  // at equal h isolates the truncation error from the O(h^2) discretization
  // error, which would otherwise swamp R_tol.
  const double h_probe = (R0 - spec.a) / (n_probe + 1);
  int intervals = n_probe + 1;
  double R = R0;
  double lam = ground_energy_on_mesh(kappa, spec, build_mesh(spec.a, R, intervals - 1),
                                     cfg);
  double change = std::numeric_limits<double>::infinity();
  for (int expansion = 0; expansion < 10; ++expansion) {
    const int next_intervals =
        std::max(intervals + 1,
                 static_cast<int>(std::lround(intervals * cfg.R_growth)));
    const double R_next = spec.a + next_intervals * h_probe;
    const double lam_next = ground_energy_on_mesh(
        kappa, spec, build_mesh(spec.a, R_next, next_intervals - 1), cfg);
    change = std::abs(lam_next - lam);
    if (change <= cfg.R_tol * std::max(1.0, std::abs(lam_next))) {
      return R;
    }
    R = R_next;
    intervals = next_intervals;
    lam = lam_next;
  }
  throw convergence_error("adaptive_outer_radius: lambda1 did not stabilize", change);
}

double convergence_order(double kappa, const PotentialSpec& spec,
                         const NumericsConfig& cfg, std::span<const int> n_list) {
  if (n_list.size() < 3) {
    throw std::invalid_argument("convergence_order: need at least 3 mesh sizes");
  }
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
    if (n_list[i + 1] != 2 * n_list[i]) {
      throw std::invalid_argument("convergence_order: sizes must double");
    }
  }
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  std::vector<double> lambdas(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    lambdas[i] = ground_energy_on_mesh(kappa, spec,
                                       build_mesh(spec.a, R, n_list[i]), cfg);
  }
  // Finest triple.
  const std::size_t j = n_list.size() - 3;
  const double d1 = lambdas[j] - lambdas[j + 1];
  const double d2 = lambdas[j + 1] - lambdas[j + 2];
  const double ratio = d1 / d2;
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw inconclusive_error("convergence_order: non-monotone refinement differences");
  }
  return std::log2(ratio);
}

}  // namespace abspec
