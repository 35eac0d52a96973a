#include "abspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abspec/errors.hpp"

namespace abspec {

namespace {

double inf_norm(std::span<const double> d, std::span<const double> e) {
  const int n = static_cast<int>(d.size());
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < n) row += std::abs(e[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

void check_shape(std::span<const double> d, std::span<const double> e) {
  if (d.empty()) throw std::invalid_argument("tridiagonal: empty diagonal");
  if (e.size() + 1 != d.size()) {
    throw std::invalid_argument("tridiagonal: off-diagonal must have length n-1");
  }
}

}  // namespace

std::pair<double, double> gershgorin_bounds(std::span<const double> d,
                                            std::span<const double> e) {
  check_shape(d, e);
  const int n = static_cast<int>(d.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(e[i - 1]);
    if (i + 1 < n) radius += std::abs(e[i]);
    lo = std::min(lo, d[i] - radius);
    hi = std::max(hi, d[i] + radius);
  }
  return {lo, hi};
}

int sturm_count(std::span<const double> d, std::span<const double> e, double x) {
  check_shape(d, e);
  if (!std::isfinite(x)) throw std::invalid_argument("sturm_count: x must be finite");
  const int n = static_cast<int>(d.size());
  const double pivmin = std::numeric_limits<double>::epsilon() * inf_norm(d, e);
  int count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_k(std::span<const double> d, std::span<const double> e,
                             int k, double tol) {
  check_shape(d, e);
  const int n = static_cast<int>(d.size());
  if (k < 1 || k > n) throw std::invalid_argument("lowest_k: need 1 <= k <= n");
  if (!(tol > 0.0)) throw std::invalid_argument("lowest_k: tol must be positive");
  const auto [glo, ghi] = gershgorin_bounds(d, e);

  // Bisect sharper than asked: the marginal cost is a handful of O(n) count
  // evaluations and it makes results stable to ulp-level input perturbations,
  // which the matrix-identity checks upstream rely on.
  const double tol_eff = std::min(tol, 4.0 * std::numeric_limits<double>::epsilon());

  std::vector<double> out(k);
  for (int j = 1; j <= k; ++j) {
    double lo = glo;
    double hi = ghi;
    for (int it = 0; it < 2048; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // interval exhausted in fp
      if ((hi - lo) <= tol_eff * std::max(1.0, std::abs(mid))) break;
      if (sturm_count(d, e, mid) >= j) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    out[j - 1] = 0.5 * (lo + hi);
  }
  return out;
}

EigenPair inverse_iteration(std::span<const double> d, std::span<const double> e,
                            double lambda_hat, double residual_tol, int max_iter) {
  check_shape(d, e);
  const int n = static_cast<int>(d.size());
  const double normT = inf_norm(d, e);

  // LU of (T - lambda_hat I) with partial pivoting; row swaps fill a second
  // superdiagonal. Near-singular pivots are nudged, which is exactly what
  // inverse iteration wants.
  std::vector<double> u0(n), u1(std::max(0, n - 1)), u2(std::max(0, n - 2));
  std::vector<double> lmul(std::max(0, n - 1));
  std::vector<char> swapped(std::max(0, n - 1));
  {
    std::vector<double> du(n), dl(std::max(0, n - 1)), dup(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) du[i] = d[i] - lambda_hat;
    for (int i = 0; i + 1 < n; ++i) {
      dl[i] = e[i];
      dup[i] = e[i];
    }
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(normT, 1.0);
    for (int i = 0; i + 1 < n; ++i) {
      if (std::abs(du[i]) >= std::abs(dl[i])) {
        swapped[i] = 0;
        if (std::abs(du[i]) < tiny) du[i] = std::copysign(tiny, du[i] == 0.0 ? 1.0 : du[i]);
        const double m = dl[i] / du[i];
        lmul[i] = m;
        u0[i] = du[i];
        u1[i] = dup[i];
        if (i + 2 < n) u2[i] = 0.0;
        du[i + 1] -= m * dup[i];
        // next row keeps its own dl/dup
      } else {
        swapped[i] = 1;
        const double m = du[i] / dl[i];
        lmul[i] = m;
        u0[i] = dl[i];
        u1[i] = du[i + 1];
        if (i + 2 < n) u2[i] = dup[i + 1];
        du[i + 1] = dup[i] - m * du[i + 1];
        if (i + 2 < n) dup[i + 1] = -m * dup[i + 1];
      }
    }
    if (std::abs(du[n - 1]) < tiny) du[n - 1] = std::copysign(tiny, du[n - 1] == 0.0 ? 1.0 : du[n - 1]);
    u0[n - 1] = du[n - 1];
  }

  auto solve = [&](std::vector<double>& x) {
    // forward elimination mirrors the factorization's row ordering
    for (int i = 0; i + 1 < n; ++i) {
      if (swapped[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= lmul[i] * x[i];
    }
    for (int i = n - 1; i >= 0; --i) {
      double rhs = x[i];
      if (i + 1 < n) rhs -= u1[i] * x[i + 1];
      if (i + 2 < n) rhs -= u2[i] * x[i + 2];
      x[i] = rhs / u0[i];
    }
  };

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double resid = std::numeric_limits<double>::infinity();
  double value = lambda_hat;
  for (int iter = 0; iter < max_iter; ++iter) {
    solve(v);
    double norm = 0.0;
    for (double vi : v) norm += vi * vi;
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw convergence_error("inverse_iteration: breakdown", resid);
    }
    for (double& vi : v) vi /= norm;

    // Rayleigh quotient and residual of the current iterate.
    value = 0.0;
    resid = 0.0;
    std::vector<double> tv(n);
    for (int i = 0; i < n; ++i) {
      double s = d[i] * v[i];
      if (i > 0) s += e[i - 1] * v[i - 1];
      if (i + 1 < n) s += e[i] * v[i + 1];
      tv[i] = s;
      value += v[i] * s;
    }
    for (int i = 0; i < n; ++i) {
      const double ri = tv[i] - value * v[i];
      resid += ri * ri;
    }
    resid = std::sqrt(resid);
    if (resid <= residual_tol * normT) {
      int imax = 0;
      for (int i = 1; i < n; ++i) {
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
      }
      if (v[imax] < 0.0) {
        for (double& vi : v) vi = -vi;
      }
      return {value, std::move(v)};
    }
  }
  throw convergence_error("inverse_iteration: no convergence", resid);
}

std::vector<double> dense_brute_force(std::span<const double> d,
                                      std::span<const double> e) {
  check_shape(d, e);
  const int n = static_cast<int>(d.size());
  if (n > 200) {
    throw std::invalid_argument("dense_brute_force: oracle is capped at n = 200");
  }
  // Implicit-shift QL (plane rotations only; no Sturm machinery involved).
  std::vector<double> diag(d.begin(), d.end());
  std::vector<double> sub(n);  // sub[i] couples i and i+1; sub[n-1] spare
  for (int i = 0; i + 1 < n; ++i) sub[i] = e[i];
  sub[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      for (; m + 1 < n; ++m) {
        const double scale = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(sub[m]) <= std::numeric_limits<double>::epsilon() * scale) break;
      }
      if (m == l) break;
      if (iter >= 50) {
        throw convergence_error("dense_brute_force: QL sweep limit", std::abs(sub[l]));
      }
      // Wilkinson shift from the leading 2x2.
      double g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + sub[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * sub[i];
        const double b = c * sub[i];
        r = std::hypot(f, g);
        sub[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          sub[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        if (i == l) {
          diag[l] -= p;
          sub[l] = g;
          sub[m] = 0.0;
        }
      }
    }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& T) {
  return gershgorin_bounds(T.diag, T.off);
}
int sturm_count(const TridiagonalOperator& T, double x) {
  return sturm_count(T.diag, T.off, x);
}
std::vector<double> lowest_k(const TridiagonalOperator& T, int k, double tol) {
  return lowest_k(T.diag, T.off, k, tol);
}
EigenPair inverse_iteration(const TridiagonalOperator& T, double lambda_hat,
                            double residual_tol, int max_iter) {
  return inverse_iteration(T.diag, T.off, lambda_hat, residual_tol, max_iter);
}
std::vector<double> dense_brute_force(const TridiagonalOperator& T) {
  return dense_brute_force(T.diag, T.off);
}

}  // namespace abspec
