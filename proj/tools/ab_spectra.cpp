// Command-line front end: spectra, sweeps, gauge checks, the 2D oracle and
// the verification suite. Exit codes: 0 success, 1 verification failure,
// 2 invalid input or config, 3 numerical non-convergence.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "abspec/errors.hpp"
#include "abspec/gauge.hpp"
#include "abspec/io.hpp"
#include "abspec/oracle2d.hpp"
#include "abspec/spectrum.hpp"
#include "abspec/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConvergence = 3;

struct Options {
  std::string config_path;
  abspec::PotentialSpec spec;
  abspec::NumericsConfig numerics;
  std::string format = "csv";
  std::string out_from_config;
};

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("AB_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end && *end == '\0' && cap >= 1) {
      omp_set_num_threads(static_cast<int>(cap));
    } else {
      std::cerr << "warning: ignoring unparsable AB_SPECTRA_THREADS='" << env
                << "'\n";
    }
  }
#endif
}

void load_config(Options& opt) {
  if (opt.config_path.empty()) return;
  const abspec::KeyValueConfig cfg = abspec::KeyValueConfig::load(opt.config_path);
  static const std::set<std::string> known = {
      "a",        "beta",  "p",     "omega",     "q",   "M",     "eig_tol",
      "deg_tol",  "R_growth", "R_tol", "n_default", "out", "format"};
  for (const auto& [key, value] : cfg.entries()) {
    if (!known.count(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  opt.spec = abspec::potential_from_config(cfg);
  opt.numerics = abspec::numerics_from_config(cfg);
  opt.format = cfg.get_string("format", opt.format);
  opt.out_from_config = cfg.get_string("out", "");
  if (opt.format != "csv" && opt.format != "structured-text") {
    throw std::invalid_argument("config: format must be csv or structured-text");
  }
}

void require_valid_potential(const abspec::PotentialSpec& spec) {
  const abspec::ValidationReport rep = abspec::validate_potential(spec);
  if (!rep.ok) {
    std::string msg = "potential fails validation:";
    for (const auto& v : rep.violations) msg += " [" + v + "]";
    throw std::invalid_argument(msg);
  }
}

int cmd_spectrum(const Options& opt, double kappa, const std::string& out_path,
                 const std::string& dump_matrix_path) {
  require_valid_potential(opt.spec);
  const abspec::GroundState gs =
      abspec::ground_state(kappa, opt.spec, opt.numerics);
  const abspec::Degeneracy deg = abspec::degeneracy_multiplicity_on_mesh(
      kappa, opt.spec, gs.mesh, opt.numerics);

  std::cout << "kappa        = " << abspec::format_g17(kappa) << '\n';
  std::cout << "lambda1      = " << abspec::format_g17(gs.lambda1) << '\n';
  std::cout << "mode_star    = " << gs.mode_star << '\n';
  std::cout << "multiplicity = " << deg.multiplicity << " (modes:";
  for (int m : deg.modes) std::cout << ' ' << m;
  std::cout << ")\n";
  try {
    const double d = abspec::hf_derivative(gs, opt.numerics.deg_tol);
    std::cout << "dlambda1/dkappa = " << abspec::format_g17(d) << '\n';
  } catch (const abspec::undefined_derivative_error&) {
    const double kc = abspec::canonical_circulation(kappa);
    std::cout << "dlambda1/dkappa = undefined ("
              << (std::abs(kc) <= 0.25 ? "endpoint" : "level crossing") << ")\n";
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    abspec::write_ground_state_record(out, gs);
  }
  if (!dump_matrix_path.empty()) {
    std::ofstream out(dump_matrix_path);
    if (!out) {
      throw std::invalid_argument("cannot open matrix dump " + dump_matrix_path);
    }
    const abspec::TridiagonalOperator T =
        abspec::assemble_tridiagonal(kappa, gs.mode_star, opt.spec, gs.mesh);
    out << "d,e\n";
    for (int i = 0; i < T.size(); ++i) {
      out << abspec::format_g17(T.diag[i]) << ',';
      if (i + 1 < T.size()) out << abspec::format_g17(T.off[i]);
      out << '\n';
    }
  }
  return kExitOk;
}

int cmd_sweep(const Options& opt, double from, double to, int steps,
              const std::string& out_path) {
  require_valid_potential(opt.spec);
  if (steps < 2) throw std::invalid_argument("sweep: --steps must be >= 2");
  const abspec::SweepResult res =
      abspec::sweep(from, to, steps, opt.spec, opt.numerics);
  if (out_path.empty()) {
    abspec::write_sweep_csv(std::cout, res);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + out_path);
    abspec::write_sweep_csv(out, res);
    std::cout << "wrote " << steps << " rows to " << out_path << '\n';
  }
  return kExitOk;
}

int cmd_verify(const Options& opt) {
  const auto results =
      abspec::run_verification(opt.spec, opt.numerics, std::cout);
  if (abspec::all_passed(results)) {
    std::cout << "all " << results.size() << " checks passed\n";
    return kExitOk;
  }
  std::cout << "failed checks:";
  for (const auto& r : results) {
    if (!r.pass) std::cout << " [" << r.name << "]";
  }
  std::cout << '\n';
  return kExitVerifyFail;
}

int cmd_gauge(const Options& opt, double k1, double k2) {
  const bool gqr = abspec::is_gqr(k1, k2, 1e-9);
  std::cout << "kappa1 = " << abspec::format_g17(k1)
            << " (canonical " << abspec::format_g17(abspec::canonical_circulation(k1))
            << ")\n";
  std::cout << "kappa2 = " << abspec::format_g17(k2)
            << " (canonical " << abspec::format_g17(abspec::canonical_circulation(k2))
            << ")\n";
  std::cout << "GQR: " << (gqr ? "yes" : "no") << '\n';
  if (gqr) {
    const int shift = static_cast<int>(std::llround(k2 - k1));
    const abspec::RadialMesh mesh = abspec::build_mesh(opt.spec.a, opt.spec.a + 5.0, 64);
    const double resid = abspec::conjugation_check(k1, shift, 0, mesh, opt.spec);
    std::cout << "conjugation residual (mode shift " << shift
              << "): " << abspec::format_g17(resid) << '\n';
  }
  return kExitOk;
}

int cmd_oracle(const Options& opt, double kappa, int n_r, int n_theta) {
  require_valid_potential(opt.spec);
  const abspec::OracleComparison cmp =
      abspec::compare_with_radial(kappa, opt.spec, opt.numerics, n_r, n_theta);
  std::cout << "lambda1 (radial, n=" << n_r
            << ")          = " << abspec::format_g17(cmp.lambda_radial) << '\n';
  std::cout << "lambda1 (2D, " << n_r << "x" << n_theta
            << ")          = " << abspec::format_g17(cmp.lambda_2d) << '\n';
  std::cout << "relative discrepancy          = "
            << abspec::format_g17(cmp.discrepancy) << '\n';
  std::cout << "lambda1 (2D, " << n_r << "x" << 2 * n_theta
            << ")          = " << abspec::format_g17(cmp.lambda_2d_fine) << '\n';
  std::cout << "relative discrepancy (2x theta) = "
            << abspec::format_g17(cmp.discrepancy_fine) << '\n';
  return kExitOk;
}

int cmd_convergence(const Options& opt, double kappa) {
  require_valid_potential(opt.spec);
  const int n_list[] = {1000, 2000, 4000};
  const double R = abspec::adaptive_outer_radius(kappa, opt.spec, opt.numerics);
  double lam[3];
  for (int i = 0; i < 3; ++i) {
    lam[i] = abspec::ground_energy_on_mesh(
        kappa, opt.spec, abspec::build_mesh(opt.spec.a, R, n_list[i]), opt.numerics);
    std::cout << "lambda1(n=" << n_list[i] << ") = " << abspec::format_g17(lam[i])
              << '\n';
  }
  const double order =
      abspec::convergence_order(kappa, opt.spec, opt.numerics, n_list);
  // Richardson extrapolation assuming the observed second-order stencil.
  const double extrap = lam[2] + (lam[2] - lam[1]) / 3.0;
  std::cout << "observed order        = " << abspec::format_g17(order) << '\n';
  std::cout << "Richardson extrapolant = " << abspec::format_g17(extrap) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"Spectral laboratory for the Aharonov-Bohm operator with a "
               "confining potential"};
  app.require_subcommand(1);

  Options opt;

  double kappa = 0.0, k1 = 0.0, k2 = 0.0, from = -1.5, to = 1.5;
  int steps = 121, n_r = 200, n_theta = 64;
  std::string out_path, dump_matrix_path;

  const auto with_config = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "flat key = value config file");
    return sub;
  };

  CLI::App* spectrum =
      with_config(app.add_subcommand("spectrum", "ground state at one kappa"));
  spectrum->add_option("--kappa", kappa, "circulation")->required();
  spectrum->add_option("--out", out_path, "write ground-state record here");
  spectrum->add_option("--dump-matrix", dump_matrix_path,
                       "debug: dump the winning mode matrix (columns d,e)");

  CLI::App* sweep =
      with_config(app.add_subcommand("sweep", "lambda1 over a kappa grid"));
  sweep->add_option("--from", from, "first kappa")->required();
  sweep->add_option("--to", to, "last kappa")->required();
  sweep->add_option("--steps", steps, "grid size (>= 2)")->required();
  sweep->add_option("--out", out_path, "CSV output path");

  CLI::App* verify =
      with_config(app.add_subcommand("verify", "run the structural checks"));

  CLI::App* gauge =
      with_config(app.add_subcommand("gauge", "gauge relation between two kappas"));
  gauge->add_option("--k1", k1, "first circulation")->required();
  gauge->add_option("--k2", k2, "second circulation")->required();

  CLI::App* oracle = with_config(
      app.add_subcommand("oracle", "2D cross-check of the radial pipeline"));
  oracle->add_option("--kappa", kappa, "circulation")->required();
  oracle->add_option("--nr", n_r, "radial grid size");
  oracle->add_option("--ntheta", n_theta, "angular grid size");

  CLI::App* convergence =
      with_config(app.add_subcommand("convergence", "mesh refinement study"));
  convergence->add_option("--kappa", kappa, "circulation")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    app.exit(e);
    return kExitInvalid;
  }

  try {
    load_config(opt);
    if (out_path.empty()) out_path = opt.out_from_config;  // flag wins
    if (spectrum->parsed()) return cmd_spectrum(opt, kappa, out_path, dump_matrix_path);
    if (sweep->parsed()) return cmd_sweep(opt, from, to, steps, out_path);
    if (verify->parsed()) return cmd_verify(opt);
    if (gauge->parsed()) return cmd_gauge(opt, k1, k2);
    if (oracle->parsed()) return cmd_oracle(opt, kappa, n_r, n_theta);
    if (convergence->parsed()) return cmd_convergence(opt, kappa);
  } catch (const abspec::convergence_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNoConvergence;
  } catch (const abspec::mode_range_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNoConvergence;
  } catch (const abspec::inconclusive_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNoConvergence;
  } catch (const abspec::inconsistency_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitVerifyFail;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return kExitNoConvergence;
  }
  return kExitInvalid;
}
