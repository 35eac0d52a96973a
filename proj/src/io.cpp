#include "abspec/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace abspec {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string strip_section(const std::string& key) {
  const auto dot = key.rfind('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key '" + key + "' has non-numeric value '" +
                                value + "'");
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config: trailing junk in value for key '" + key + "'");
  }
  return x;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not of the form key = value");
    }
    const std::string key = strip_section(trim(stripped.substr(0, eq)));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw std::invalid_argument("config: empty key or value on line " +
                                  std::to_string(lineno));
    }
    cfg.entries_[key] = value;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  return parse(in);
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(strip_section(key)) > 0;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(strip_section(key));
  if (it == entries_.end()) return fallback;
  return parse_double(key, it->second);
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const double x = get_double(key, static_cast<double>(fallback));
  const int i = static_cast<int>(std::llround(x));
  if (static_cast<double>(i) != x) {
    throw std::invalid_argument("config: key '" + key + "' must be an integer");
  }
  return i;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = entries_.find(strip_section(key));
  return it == entries_.end() ? fallback : it->second;
}

PotentialSpec potential_from_config(const KeyValueConfig& cfg) {
  PotentialSpec spec;
  spec.a = cfg.get_double("a", spec.a);
  spec.beta = cfg.get_double("beta", spec.beta);
  spec.p = cfg.get_double("p", spec.p);
  spec.omega = cfg.get_double("omega", spec.omega);
  spec.q = cfg.get_double("q", spec.q);
  return spec;
}

void write_potential_config(std::ostream& out, const PotentialSpec& spec) {
  out << "a = " << format_g17(spec.a) << '\n';
  out << "beta = " << format_g17(spec.beta) << '\n';
  out << "p = " << format_g17(spec.p) << '\n';
  out << "omega = " << format_g17(spec.omega) << '\n';
  out << "q = " << format_g17(spec.q) << '\n';
}

NumericsConfig numerics_from_config(const KeyValueConfig& cfg) {
  NumericsConfig num;
  num.max_mode = cfg.get_int("M", num.max_mode);
  num.eig_tol = cfg.get_double("eig_tol", num.eig_tol);
  num.deg_tol = cfg.get_double("deg_tol", num.deg_tol);
  num.R_growth = cfg.get_double("R_growth", num.R_growth);
  num.R_tol = cfg.get_double("R_tol", num.R_tol);
  num.n_default = cfg.get_int("n_default", num.n_default);
  if (num.max_mode < 1 || !(num.eig_tol > 0.0) || !(num.deg_tol > 0.0) ||
      !(num.R_growth > 1.0) || !(num.R_tol > 0.0) || num.n_default < 1) {
    throw std::invalid_argument("config: numerics values out of range");
  }
  return num;
}

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "kappa,lambda1,mode,deriv_hf,deriv_fd\n";
  for (std::size_t k = 0; k < sweep.kappas.size(); ++k) {
    out << format_g17(sweep.kappas[k]) << ',' << format_g17(sweep.lambdas[k]) << ','
        << sweep.modes[k] << ',';
    if (sweep.hf_derivs[k]) out << format_g17(*sweep.hf_derivs[k]);
    out << ',';
    if (sweep.fd_derivs[k]) out << format_g17(*sweep.fd_derivs[k]);
    out << '\n';
  }
}

void write_ground_state_record(std::ostream& out, const GroundState& gs) {
  out << "kappa: " << format_g17(gs.kappa) << '\n';
  out << "lambda1: " << format_g17(gs.lambda1) << '\n';
  out << "mode_star: " << gs.mode_star << '\n';
  out << "a: " << format_g17(gs.mesh.a) << '\n';
  out << "R: " << format_g17(gs.mesh.R) << '\n';
  out << "n: " << gs.mesh.n << '\n';
  out << "h: " << format_g17(gs.mesh.h) << '\n';
  out << '\n';
  for (int i = 0; i < gs.mesh.n; ++i) {
    const double r = gs.mesh.node(i);
    out << format_g17(r) << '\t' << format_g17(gs.g[i] / std::sqrt(r)) << '\n';
  }
}

}  // namespace abspec
