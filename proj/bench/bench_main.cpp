// Timing comparison between the OpenMP kernels and their serial reference
// implementations: the kappa-sweep driver and the 2D stencil application.
// The serial runs are pinned to one thread so the reference is genuinely
// sequential (the per-mode loops inside a sweep point are parallel too).

#include <chrono>
#include <cstdio>

#include "abspec/oracle2d.hpp"
#include "abspec/spectrum.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void set_threads(int n) {
#ifdef _OPENMP
  omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace

int main() {
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  std::printf("threads available: %d\n\n", threads);

  const abspec::PotentialSpec spec;
  abspec::NumericsConfig cfg;
  cfg.n_default = 2000;

  {
    const int steps = 41;
    set_threads(1);
    auto t0 = std::chrono::steady_clock::now();
    const auto serial = abspec::sweep_serial(-0.45, 0.45, steps, spec, cfg);
    const double t_serial = seconds_since(t0);

    set_threads(threads);
    t0 = std::chrono::steady_clock::now();
    const auto parallel = abspec::sweep(-0.45, 0.45, steps, spec, cfg);
    const double t_parallel = seconds_since(t0);

    double max_diff = 0.0;
    for (int k = 0; k < steps; ++k) {
      max_diff = std::max(max_diff,
                          std::abs(serial.lambdas[k] - parallel.lambdas[k]));
    }
    std::printf("kappa sweep, %d points, n = %d\n", steps, cfg.n_default);
    std::printf("  serial (1 thread)   %8.3f s\n", t_serial);
    std::printf("  openmp (%d threads)  %8.3f s   (speedup %.2fx, max |diff| = %.3g)\n\n",
                threads, t_parallel, t_serial / t_parallel, max_diff);
  }

  {
    const int n_r = 400, n_theta = 256, reps = 2000;
    const auto T = abspec::assemble_2d(0.3, spec, n_r, n_theta, spec.a + 6.0);
    abspec::cvector u(T.size()), out(T.size());
    for (int i = 0; i < T.size(); ++i) {
      u[i] = std::complex<double>(1.0 + 0.001 * (i % 7), 0.001 * (i % 5));
    }

    set_threads(1);
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) T.apply_serial(u, out);
    const double t_serial = seconds_since(t0);

    set_threads(threads);
    t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) T.apply(u, out);
    const double t_parallel = seconds_since(t0);

    std::printf("2D stencil apply, %dx%d grid, %d repetitions\n", n_r, n_theta,
                reps);
    std::printf("  serial (1 thread)   %8.3f s\n", t_serial);
    std::printf("  openmp (%d threads)  %8.3f s   (speedup %.2fx)\n", threads,
                t_parallel, t_serial / t_parallel);
  }
  return 0;
}
