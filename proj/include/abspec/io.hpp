#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "abspec/model.hpp"
#include "abspec/spectrum.hpp"

namespace abspec {

// Flat UTF-8 `key = value` config, one pair per line. '#' starts a comment,
// blank lines are skipped, and keys may carry an optional section prefix
// ("potential.a" and "a" are the same key).
class KeyValueConfig {
public:
  static KeyValueConfig parse(std::istream& in);
  static KeyValueConfig parse_string(const std::string& text);
  static KeyValueConfig load(const std::string& path);

  bool has(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

private:
  std::map<std::string, std::string> entries_;  // keyed without section prefix
};

// Keys: a, beta, p, omega, q (optionally under "potential."). Throws
// std::invalid_argument on malformed input.
PotentialSpec potential_from_config(const KeyValueConfig& cfg);
void write_potential_config(std::ostream& out, const PotentialSpec& spec);

// Keys: M, eig_tol, deg_tol, R_growth, R_tol, n_default (optionally under
// "numerics.").
NumericsConfig numerics_from_config(const KeyValueConfig& cfg);

// CSV with header kappa,lambda1,mode,deriv_hf,deriv_fd; 17 significant
// digits, '.' decimal separator, '\n' line endings, empty fields where a
// derivative is undefined. Byte-stable across identical runs.
void write_sweep_csv(std::ostream& out, const SweepResult& sweep);

// Structured text record: `key: value` header lines, a blank line, then
// r<TAB>psi rows with psi = g/sqrt(r).
void write_ground_state_record(std::ostream& out, const GroundState& gs);

// Fixed 17-significant-digit formatting used by all emitters.
std::string format_g17(double x);

}  // namespace abspec
