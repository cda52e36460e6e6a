#include "visco/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace visco {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& raw) {
  std::string s = trim(raw);
  double factor = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = trim(s.substr(0, s.size() - 2));
    if (s.empty()) return factor;
    if (s.back() == '*') s = trim(s.substr(0, s.size() - 1));
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + raw + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("not a number: '" + raw + "'");
  return v * factor;
}

ConfigMap ConfigMap::parse(std::istream& is) {
  ConfigMap map;
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw std::invalid_argument("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    map.set(section.empty() ? key : section + "." + key, trim(line.substr(eq + 1)));
  }
  return map;
}

ConfigMap ConfigMap::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse(in);
}

void ConfigMap::set(const std::string& key, const std::string& value) { values_[key] = value; }

void ConfigMap::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || trim(assignment.substr(0, eq)).find('.') == std::string::npos)
    throw std::invalid_argument("override must look like section.key=value: '" + assignment + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::string ConfigMap::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_number(it->second);
}

long ConfigMap::get_int(const std::string& key, long fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size())
    throw std::invalid_argument(key + ": not an integer: '" + it->second + "'");
  return v;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument(key + ": not a boolean: '" + v + "'");
}

std::vector<double> ConfigMap::get_list(const std::string& key, const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::stringstream ss(it->second);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "inf" || item == "infinity")
      out.push_back(std::numeric_limits<double>::infinity());
    else if (!item.empty())
      out.push_back(parse_number(item));
  }
  return out;
}

void ConfigMap::write(std::ostream& os) const {
  std::string current = "\x01";
  for (const auto& [key, value] : values_) {
    const auto dot = key.find('.');
    const std::string section = dot == std::string::npos ? "" : key.substr(0, dot);
    const std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (section != current) {
      if (!section.empty()) os << "[" << section << "]\n";
      current = section;
    }
    os << name << " = " << value << "\n";
  }
}

RunConfig to_run_config(const ConfigMap& m) {
  RunConfig c;
  c.n = static_cast<int>(m.get_int("grid.n", c.n));
  c.length = m.get_double("grid.L", c.length);
  c.mu = m.get_double("physics.mu", c.mu);
  c.nonlinear = m.get_bool("physics.nonlinear", c.nonlinear);
  c.dt = m.get_double("time.dt", c.dt);
  c.t_end = m.get_double("time.t_end", c.t_end);
  c.cadence = m.get_double("time.cadence", c.cadence);
  c.integrator = parse_integrator(m.get("time.integrator", to_string(c.integrator)));
  auto& in = c.initial;
  in.kind = parse_initial_kind(m.get("initial.kind", to_string(in.kind)));
  in.amplitude = m.get_double("initial.amplitude", in.amplitude);
  in.flow_time = m.get_double("initial.flow_time", in.flow_time);
  in.seed = static_cast<std::uint64_t>(m.get_int("initial.seed", static_cast<long>(in.seed)));
  in.mode = static_cast<int>(m.get_int("initial.mode", in.mode));
  in.k0 = m.get_double("initial.k0", in.k0);
  in.width = m.get_double("initial.width", in.width);
  in.transport_step = m.get_double("initial.transport_step", in.transport_step);
  in.tolerance = m.get_double("initial.tolerance", in.tolerance);
  auto& r = c.record;
  r.kappa1 = static_cast<int>(m.get_int("record.kappa1", r.kappa1));
  r.kappa2 = static_cast<int>(m.get_int("record.kappa2", r.kappa2));
  r.delta = m.get_double("record.delta", r.delta);
  r.besov_s = m.get_double("record.besov_s", r.besov_s);
  r.sobolev_s = m.get_double("record.sobolev_s", r.sobolev_s);
  r.residuals = m.get_bool("record.residuals", r.residuals);
  validate(c);
  return c;
}

ConfigMap from_run_config(const RunConfig& c) {
  ConfigMap m;
  m.set("grid.n", std::to_string(c.n));
  m.set("grid.L", format_number(c.length));
  m.set("physics.mu", format_number(c.mu));
  m.set("physics.nonlinear", c.nonlinear ? "true" : "false");
  m.set("time.dt", format_number(c.dt));
  m.set("time.t_end", format_number(c.t_end));
  m.set("time.cadence", format_number(c.cadence));
  m.set("time.integrator", to_string(c.integrator));
  m.set("initial.kind", to_string(c.initial.kind));
  m.set("initial.amplitude", format_number(c.initial.amplitude));
  m.set("initial.flow_time", format_number(c.initial.flow_time));
  m.set("initial.seed", std::to_string(c.initial.seed));
  m.set("initial.mode", std::to_string(c.initial.mode));
  m.set("initial.k0", format_number(c.initial.k0));
  m.set("initial.width", format_number(c.initial.width));
  m.set("initial.transport_step", format_number(c.initial.transport_step));
  m.set("initial.tolerance", format_number(c.initial.tolerance));
  m.set("record.kappa1", std::to_string(c.record.kappa1));
  m.set("record.kappa2", std::to_string(c.record.kappa2));
  m.set("record.delta", format_number(c.record.delta));
  m.set("record.besov_s", format_number(c.record.besov_s));
  m.set("record.sobolev_s", format_number(c.record.sobolev_s));
  m.set("record.residuals", c.record.residuals ? "true" : "false");
  return m;
}

}  // namespace visco
