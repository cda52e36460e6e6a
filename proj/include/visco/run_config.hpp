#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "visco/solver.hpp"

namespace visco {

// Plain-text configuration:
//
//   # comment
//   [grid]
//   n = 32
//   L = 2pi
//   [time]
//   dt = 0.05
//
// Keys are addressed as "section.key". Numbers accept a trailing "pi" factor
// ("2pi", "0.5pi", "pi"). Later assignments win, so command-line overrides are
// applied with set() after parsing.
class ConfigMap {
public:
  static ConfigMap parse(std::istream& is);
  static ConfigMap load(const std::string& path);

  void set(const std::string& key, const std::string& value);
  /// Applies "section.key=value".
  void apply_override(const std::string& assignment);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

  /// Sectioned dump in the same format, keys sorted.
  void write(std::ostream& os) const;
  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

double parse_number(const std::string& s);
/// Shortest text that parses back to v; infinity prints as "inf".
std::string format_number(double v);

/// Keys: grid.n, grid.L, physics.mu, physics.nonlinear, time.dt, time.t_end,
/// time.cadence, time.integrator, initial.kind, initial.amplitude,
/// initial.flow_time, initial.seed, initial.mode, initial.k0, initial.width,
/// initial.transport_step, initial.tolerance, record.kappa1, record.kappa2,
/// record.delta, record.besov_s, record.sobolev_s, record.residuals.
RunConfig to_run_config(const ConfigMap& map);
ConfigMap from_run_config(const RunConfig& config);

}  // namespace visco
