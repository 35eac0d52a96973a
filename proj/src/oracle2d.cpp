#include "abspec/oracle2d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "abspec/errors.hpp"
#include "abspec/radial.hpp"
#include "abspec/spectrum.hpp"

namespace abspec {

namespace {

using cd = std::complex<double>;

// Serial inner products keep every reduction order fixed, so the whole solve
// is reproducible independent of the OpenMP thread count.
double dot_re(std::span<const cd> a, std::span<const cd> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  }
  return s;
}

cd dot_c(std::span<const cd> a, std::span<const cd> b) {
  cd s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm2(std::span<const cd> a) { return std::sqrt(dot_re(a, a)); }

}  // namespace

HermitianGridOperator::HermitianGridOperator(double kappa, const PotentialSpec& spec,
                                             int n_r, int n_theta, double R)
    : n_r_(n_r), n_theta_(n_theta), kappa_(kappa) {
  if (n_r < 16 || n_theta < 8 || n_theta % 2 != 0) {
    throw std::invalid_argument(
        "assemble_2d: need n_r >= 16 and even n_theta >= 8");
  }
  if (!(R > spec.a)) {
    throw std::invalid_argument("assemble_2d: need R > a");
  }
  rmesh_ = build_mesh(spec.a, R, n_r);
  inv_h2_ = 1.0 / (rmesh_.h * rmesh_.h);
  const double dtheta = 2.0 * M_PI / n_theta;

  diag_radial_.resize(n_r);
  ctheta_.resize(n_r);
  cross_.resize(n_r);
  diag_.resize(size());
  for (int i = 0; i < n_r; ++i) {
    const double r = rmesh_.node(i);
    const double inv_r2 = 1.0 / (r * r);
    // Same expression as the radial assembly; theta terms enter as explicit
    // differences below, so theta-constant vectors see the mode-0 radial
    // matrix bit for bit.
    diag_radial_[i] =
        2.0 / (rmesh_.h * rmesh_.h) + effective_potential(kappa, 0, spec, r);
    ctheta_[i] = inv_r2 / (dtheta * dtheta);
    cross_[i] = kappa * inv_r2 / dtheta;
    for (int j = 0; j < n_theta; ++j) {
      diag_[i * n_theta + j] = diag_radial_[i] + 2.0 * ctheta_[i];
    }
  }
}

void HermitianGridOperator::apply_row(std::span<const cd> u, std::span<cd> out,
                                      int i) const {
  const int nt = n_theta_;
  const cd* row = u.data() + static_cast<std::size_t>(i) * nt;
  cd* dst = out.data() + static_cast<std::size_t>(i) * nt;
  const cd* below = (i > 0) ? row - nt : nullptr;
  const cd* above = (i + 1 < n_r_) ? row + nt : nullptr;
  const double dr0 = diag_radial_[i];
  const double ct = ctheta_[i];
  const cd cross(0.0, cross_[i]);
  for (int j = 0; j < nt; ++j) {
    const int jp = (j + 1 == nt) ? 0 : j + 1;
    const int jm = (j == 0) ? nt - 1 : j - 1;
    // second and first periodic differences; both vanish exactly on
    // theta-constant data
    const cd d2 = (2.0 * row[j] - row[jp]) - row[jm];
    const cd d1 = row[jp] - row[jm];
    cd v = dr0 * row[j] + ct * d2 + cross * d1;
    if (below) v -= inv_h2_ * below[j];
    if (above) v -= inv_h2_ * above[j];
    dst[j] = v;
  }
}

void HermitianGridOperator::apply(std::span<const cd> u, std::span<cd> out) const {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_r_; ++i) {
    apply_row(u, out, i);
  }
}

void HermitianGridOperator::apply_serial(std::span<const cd> u,
                                         std::span<cd> out) const {
  for (int i = 0; i < n_r_; ++i) {
    apply_row(u, out, i);
  }
}

HermitianGridOperator assemble_2d(double kappa, const PotentialSpec& spec, int n_r,
                                  int n_theta, double R) {
  return HermitianGridOperator(kappa, spec, n_r, n_theta, R);
}

namespace {

// Jacobi-preconditioned CG for T x = b. Warm-started from x on entry.
void solve_cg(const HermitianGridOperator& T, std::span<const cd> b,
              std::vector<cd>& x, double rel_tol) {
  const int N = T.size();
  const std::vector<double>& M = T.diagonal();
  std::vector<cd> r(N), z(N), p(N), Tp(N);

  T.apply(x, Tp);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i) {
    r[i] = b[i] - Tp[i];
    z[i] = r[i] / M[i];
    p[i] = z[i];
  }
  const double bnorm = norm2(b);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), cd(0.0));
    return;
  }
  double rz = dot_re(r, z);
  const int max_iter = 20 * N;
  for (int it = 0; it < max_iter; ++it) {
    if (norm2(r) <= rel_tol * bnorm) return;
    T.apply(p, Tp);
    const double pTp = dot_re(p, Tp);
    if (!(pTp > 0.0)) {
      throw convergence_error("cg: operator lost positive definiteness", pTp);
    }
    const double alpha = rz / pTp;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Tp[i];
      z[i] = r[i] / M[i];
    }
    const double rz_next = dot_re(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) {
      p[i] = z[i] + beta * p[i];
    }
  }
  throw convergence_error("cg: no convergence", norm2(r) / bnorm);
}

// Deterministic start vector with content in every Fourier block (modes up
// to |m| = 4 explicitly, everything else via a fixed LCG sprinkle).
std::vector<cd> start_vector(const HermitianGridOperator& T, int phase_mode) {
  const int nr = T.n_r();
  const int nt = T.n_theta();
  std::vector<cd> v(static_cast<std::size_t>(nr) * nt);
  std::uint64_t lcg = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nt; ++j) {
      const double theta = 2.0 * M_PI * j / nt;
      double re = std::cos(phase_mode * theta);
      double im = std::sin(phase_mode * theta);
      for (int m = 1; m <= 4; ++m) {
        re += std::pow(0.5, m) * std::cos(m * theta);
      }
      lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
      const double noise = 1e-3 * (static_cast<double>(lcg >> 11) * 0x1.0p-53 - 0.5);
      v[static_cast<std::size_t>(i) * nt + j] = cd(re + noise, im);
    }
  }
  return v;
}

void normalize(std::vector<cd>& v) {
  const double nv = norm2(v);
  if (!(nv > 0.0) || !std::isfinite(nv)) {
    throw convergence_error("power iteration: breakdown", nv);
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < static_cast<int>(v.size()); ++i) v[i] /= nv;
}

void orthogonalize_against(std::vector<cd>& v, std::span<const cd> u) {
  const cd proj = dot_c(u, v);  // u is unit norm
#pragma omp parallel for schedule(static)
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    v[i] -= proj * u[i];
  }
}

// Two-vector inverse power iteration: both directions are solved against T,
// the second is re-orthogonalized against the first every step, and the pair
// is resolved by a 2x2 Rayleigh-Ritz extraction. The block form converges at
// the gap to the third eigenvalue, so the near-degenerate pair at
// kappa = 1/2 costs no extra iterations.
std::pair<double, double> block_power_iterate(const HermitianGridOperator& T,
                                              double tol) {
  const int N = T.size();
  std::vector<cd> v1 = start_vector(T, 0);
  std::vector<cd> v2 = start_vector(T, 1);
  normalize(v1);
  orthogonalize_against(v2, v1);
  normalize(v2);

  std::vector<cd> t1(N), t2(N);
  double mu1 = std::numeric_limits<double>::infinity();
  double mu2 = mu1;
  int settled = 0;
  double change = mu1;
  const int max_iter = 3000;
  for (int it = 0; it < max_iter; ++it) {
    std::vector<cd> w1 = v1;
    solve_cg(T, v1, w1, 1e-12);
    normalize(w1);
    std::vector<cd> w2 = v2;
    solve_cg(T, v2, w2, 1e-12);
    orthogonalize_against(w2, w1);
    normalize(w2);

    // Rayleigh-Ritz on span{w1, w2}.
    T.apply(w1, t1);
    T.apply(w2, t2);
    const double a = dot_re(w1, t1);
    const double b = dot_re(w2, t2);
    const cd c = dot_c(w1, t2);
    const double half_gap = std::hypot(0.5 * (a - b), std::abs(c));
    const double mid = 0.5 * (a + b);
    const double next1 = mid - half_gap;
    const double next2 = mid + half_gap;

    // Ritz rotation, written to avoid cancellation: next1 - b (for a <= b) and
    // next1 - a (for a > b) are sums of same-sign terms.
    cd r1_q1, r1_q2;
    if (a <= b) {
      r1_q1 = cd(next1 - b);
      r1_q2 = std::conj(c);
    } else {
      r1_q1 = c;
      r1_q2 = cd(next1 - a);
    }
    double nr1 = std::hypot(std::abs(r1_q1), std::abs(r1_q2));
    if (!(nr1 > 0.0)) {  // a == b with c == 0: basis already diagonalizes
      r1_q1 = cd(1.0);
      r1_q2 = cd(0.0);
      nr1 = 1.0;
    }
    const cd r2_q1 = -std::conj(r1_q2);
    const cd r2_q2 = std::conj(r1_q1);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < N; ++i) {
      const cd q1 = w1[i];
      const cd q2 = w2[i];
      v1[i] = (r1_q1 * q1 + r1_q2 * q2) / nr1;
      v2[i] = (r2_q1 * q1 + r2_q2 * q2) / nr1;
    }

    change = std::max(std::abs(next1 - mu1), std::abs(next2 - mu2));
    mu1 = next1;
    mu2 = next2;
    if (change <= tol * std::max(1.0, std::abs(mu1))) {
      if (++settled >= 2) return {mu1, mu2};
    } else {
      settled = 0;
    }
  }
  throw convergence_error("power iteration: no convergence", change);
}

}  // namespace

double lowest_eigenvalue_2d(const HermitianGridOperator& T, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lowest_eigenvalue_2d: bad tol");
  return block_power_iterate(T, tol).first;
}

std::pair<double, double> lowest_two_2d(const HermitianGridOperator& T, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("lowest_two_2d: bad tol");
  return block_power_iterate(T, tol);
}

OracleComparison compare_with_radial(double kappa, const PotentialSpec& spec,
                                     const NumericsConfig& cfg, int n_r,
                                     int n_theta) {
  OracleComparison cmp;
  cmp.n_r = n_r;
  cmp.n_theta = n_theta;
  const double R = adaptive_outer_radius(kappa, spec, cfg);
  const RadialMesh mesh = build_mesh(spec.a, R, n_r);
  cmp.lambda_radial = ground_energy_on_mesh(kappa, spec, mesh, cfg);

  const double tol = std::min(cfg.eig_tol, 1e-10);
  const HermitianGridOperator T = assemble_2d(kappa, spec, n_r, n_theta, R);
  cmp.lambda_2d = lowest_eigenvalue_2d(T, tol);
  cmp.discrepancy = std::abs(cmp.lambda_2d - cmp.lambda_radial) /
                    std::abs(cmp.lambda_radial);

  const HermitianGridOperator T2 = assemble_2d(kappa, spec, n_r, 2 * n_theta, R);
  cmp.lambda_2d_fine = lowest_eigenvalue_2d(T2, tol);
  cmp.discrepancy_fine = std::abs(cmp.lambda_2d_fine - cmp.lambda_radial) /
                         std::abs(cmp.lambda_radial);
  return cmp;
}

}  // namespace abspec
