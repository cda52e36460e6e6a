#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "visco/experiments.hpp"
#include "visco/reproduce.hpp"
#include "visco/run_config.hpp"

using namespace visco;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string out_dir = ".";
  std::string prefix;
  bool gnuplot = false;
  int workers = 1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config, "key = value configuration file");
  app->add_option("-s,--set", c.overrides, "override, e.g. --set time.dt=0.01 (repeatable)");
  app->add_option("-o,--out", c.out_dir, "output directory");
  app->add_option("--prefix", c.prefix, "output file prefix");
  app->add_option("-j,--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
}

ConfigMap resolve(const Common& c) {
  ConfigMap m = c.config.empty() ? ConfigMap{} : ConfigMap::load(c.config);
  for (const auto& o : c.overrides) m.apply_override(o);
  return m;
}

lab::Outputs outputs(const Common& c) { return {c.out_dir, c.prefix, c.gnuplot}; }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> times_from(const ConfigMap& m, const std::string& section, std::vector<double> fallback) {
  if (m.has(section + ".times")) return m.get_list(section + ".times", {});
  if (m.has(section + ".t_max")) {
    const double a = m.get_double(section + ".t_min", 0.0), b = m.get_double(section + ".t_max", 0.0);
    const long count = m.get_int(section + ".count", 21);
    std::vector<double> t;
    for (long i = 0; i < count; ++i) t.push_back(count == 1 ? b : a + (b - a) * i / (count - 1));
    return t;
  }
  return fallback;
}

lab::KernelDecaySpec kernel_spec(const ConfigMap& m, int workers) {
  lab::KernelDecaySpec s;
  s.mu = m.get_double("kernel.mu", s.mu);
  if (m.has("kernel.kinds")) {
    s.kinds.clear();
    for (const auto& k : split_list(m.get("kernel.kinds", ""))) s.kinds.push_back(parse_kernel_kind(k));
  }
  if (m.has("kernel.alphas")) {
    s.alphas.clear();
    for (double a : m.get_list("kernel.alphas", {})) s.alphas.push_back(static_cast<int>(a));
  }
  s.p_list = m.get_list("kernel.p", s.p_list);
  s.band = parse_band(m.get("kernel.band", to_string(s.band)));
  s.t_min = m.get_double("kernel.t_min", s.t_min);
  s.t_max = m.get_double("kernel.t_max", s.t_max);
  s.points = static_cast<int>(m.get_int("kernel.points", s.points));
  s.quadrature.tolerance = m.get_double("kernel.tolerance", s.quadrature.tolerance);
  s.workers = workers;
  return s;
}

lab::HighfreqSpec highfreq_spec(const ConfigMap& m, int workers) {
  lab::HighfreqSpec s;
  s.mus = m.get_list("highfreq.mus", s.mus);
  s.kind = parse_kernel_kind(m.get("highfreq.kind", to_string(s.kind)));
  s.alpha = static_cast<int>(m.get_int("highfreq.alpha", s.alpha));
  s.window_min = m.get_double("highfreq.window_min", s.window_min);
  s.window_max = m.get_double("highfreq.window_max", s.window_max);
  s.points = static_cast<int>(m.get_int("highfreq.points", s.points));
  s.weight_by_cutoff = m.get_bool("highfreq.weighted", s.weight_by_cutoff);
  s.workers = workers;
  return s;
}

lab::LinearBoxSpec linear_box_spec(const ConfigMap& m) {
  lab::LinearBoxSpec s;
  // Defaults for the grid and data come from the run-config mapping.
  ConfigMap with_defaults = m;
  if (!m.has("grid.n")) with_defaults.set("grid.n", std::to_string(s.n));
  if (!m.has("grid.L")) with_defaults.set("grid.L", "100");
  if (!m.has("initial.kind")) with_defaults.set("initial.kind", "gaussian-bump");
  if (!m.has("initial.amplitude")) with_defaults.set("initial.amplitude", "1");
  if (!m.has("time.t_end")) with_defaults.set("time.t_end", "0");
  const RunConfig rc = to_run_config(with_defaults);
  s.n = rc.n;
  s.length = rc.length;
  s.mu = rc.mu;
  s.initial = rc.initial;
  std::vector<double> fallback;
  for (int t = 5; t <= 25; ++t) fallback.push_back(t);
  s.times = times_from(m, "box", fallback);
  s.p_list = m.get_list("box.p", s.p_list);
  s.s_list = m.get_list("box.s", s.s_list);
  s.split = m.get_bool("box.split", s.split);
  s.fit_t_min = m.get_double("box.fit_t_min", s.fit_t_min);
  s.fit_t_max = m.get_double("box.fit_t_max", s.fit_t_max);
  return s;
}

std::string num(double v) { return format_number(v); }

template <class T, class F>
std::string join(const std::vector<T>& items, F&& fmt) {
  std::string out;
  for (const auto& x : items) out += (out.empty() ? "" : ",") + fmt(x);
  return out;
}

// Resolved parameters, written back in the configuration vocabulary for the manifest.
ConfigMap resolved(const lab::KernelDecaySpec& s) {
  ConfigMap m;
  m.set("kernel.mu", num(s.mu));
  m.set("kernel.kinds", join(s.kinds, [](KernelKind k) { return to_string(k); }));
  m.set("kernel.alphas", join(s.alphas, [](int a) { return std::to_string(a); }));
  m.set("kernel.p", join(s.p_list, num));
  m.set("kernel.band", to_string(s.band));
  m.set("kernel.t_min", num(s.t_min));
  m.set("kernel.t_max", num(s.t_max));
  m.set("kernel.points", std::to_string(s.points));
  m.set("kernel.tolerance", num(s.quadrature.tolerance));
  return m;
}

ConfigMap resolved(const lab::HighfreqSpec& s) {
  ConfigMap m;
  m.set("highfreq.mus", join(s.mus, num));
  m.set("highfreq.kind", to_string(s.kind));
  m.set("highfreq.alpha", std::to_string(s.alpha));
  m.set("highfreq.window_min", num(s.window_min));
  m.set("highfreq.window_max", num(s.window_max));
  m.set("highfreq.points", std::to_string(s.points));
  m.set("highfreq.weighted", s.weight_by_cutoff ? "true" : "false");
  return m;
}

ConfigMap resolved(const lab::LinearBoxSpec& s) {
  RunConfig rc;
  rc.n = s.n;
  rc.length = s.length;
  rc.mu = s.mu;
  rc.initial = s.initial;
  const ConfigMap full = from_run_config(rc);
  ConfigMap m;
  for (const auto& [k, v] : full.values())
    if (k.rfind("grid.", 0) == 0 || k.rfind("initial.", 0) == 0 || k == "physics.mu") m.set(k, v);
  m.set("box.times", join(s.times, num));
  m.set("box.p", join(s.p_list, num));
  m.set("box.s", join(s.s_list, num));
  m.set("box.split", s.split ? "true" : "false");
  m.set("box.fit_t_min", num(s.fit_t_min));
  m.set("box.fit_t_max", num(s.fit_t_max));
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for linearized and nonlinear viscoelastic flow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", lab::version());

  Common kd;
  auto* kernel = app.add_subcommand("kernel-decay", "L^p decay of whole-space radial kernels and slope fits");
  add_common(kernel, kd);
  kernel->add_flag("--gnuplot", kd.gnuplot, "also write one .dat file per series");

  Common hf;
  auto* high = app.add_subcommand("highfreq", "exponential decay of the high-frequency band");
  add_common(high, hf);

  Common lb;
  auto* box = app.add_subcommand("linear-box", "exact linear evolution on a large periodic box");
  add_common(box, lb);

  Common nb;
  auto* nonlinear = app.add_subcommand("nonlinear-box", "pseudo-spectral nonlinear run with diagnostics");
  add_common(nonlinear, nb);

  Common ft;
  lab::FitSpec fit_spec;
  std::vector<std::string> where;
  auto* fit = app.add_subcommand("fit", "power-law or exponential fit of a CSV column");
  add_common(fit, ft);
  fit->add_option("input", fit_spec.input, "CSV file")->required()->check(CLI::ExistingFile);
  fit->add_option("--x", fit_spec.x, "time column");
  fit->add_option("--y", fit_spec.y, "value column");
  fit->add_option("--where", where, "column=value filter (repeatable)");
  fit->add_option("--t-min", fit_spec.t_min, "window start");
  fit->add_option("--t-max", fit_spec.t_max, "window end");
  fit->add_flag("--exponential", fit_spec.exponential, "fit exp(-rate t) instead of (1+t)^slope");

  std::string which = "all";
  lab::ReproduceOptions repro;
  bool verbose = false;
  auto* reproduce = app.add_subcommand("reproduce", "run acceptance criteria and report pass/fail");
  reproduce->add_option("name", which, "criterion name or number, or all");
  reproduce->add_flag("--slow", repro.include_slow, "include slow criteria in 'all'");
  reproduce->add_option("-j,--workers", repro.workers, "worker threads")->check(CLI::PositiveNumber);
  reproduce->add_flag("-v,--verbose", verbose, "progress output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*kernel) {
      const ConfigMap m = resolve(kd);
      const auto spec = kernel_spec(m, kd.workers);
      lab::write_manifest(outputs(kd), "kernel-decay", resolved(spec));
      for (const auto& r : lab::cmd_kernel_decay(spec, outputs(kd)))
        std::cout << to_string(r.kind) << " alpha=" << r.alpha << " p=" << r.p << " slope=" << r.fit.slope
                  << " theory=" << r.theory << " deviation=" << r.deviation << '\n';
    } else if (*high) {
      const auto spec = highfreq_spec(resolve(hf), hf.workers);
      lab::write_manifest(outputs(hf), "highfreq", resolved(spec));
      for (const auto& r : lab::cmd_highfreq(spec, outputs(hf)))
        std::cout << "mu=" << r.mu << " rate=" << r.fit.rate << " theory=" << r.theory << " ratio=" << r.ratio
                  << '\n';
    } else if (*box) {
      const auto spec = linear_box_spec(resolve(lb));
      lab::write_manifest(outputs(lb), "linear-box", resolved(spec));
      const auto r = lab::cmd_linear_box(spec, outputs(lb));
      std::cout << r.records.size() << " records";
      if (r.u_l1_fit) std::cout << "; u L1 slope " << r.u_l1_fit->slope << " (theory 0.5)";
      std::cout << '\n';
    } else if (*nonlinear) {
      const ConfigMap m = resolve(nb);
      const RunConfig rc = to_run_config(m);
      lab::write_manifest(outputs(nb), "nonlinear-box", from_run_config(rc));
      const auto s = lab::cmd_nonlinear_box(rc, outputs(nb));
      std::cout << s.records.size() << " records; max energy increase " << s.max_energy_increase
                << "; max D increase " << s.max_D_increase << "; Besov ratio " << s.besov_ratio << '\n';
      if (!s.failure.empty()) {
        std::cerr << s.failure << '\n';
        return 2;
      }
    } else if (*fit) {
      for (const auto& w : where) {
        const auto eq = w.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--where expects column=value");
        fit_spec.filters.emplace_back(w.substr(0, eq), w.substr(eq + 1));
      }
      std::cout << lab::cmd_fit(fit_spec, outputs(ft)) << '\n';
    } else if (*reproduce) {
      if (verbose) repro.log = &std::cerr;
      bool ok = true;
      for (const auto& r : lab::reproduce(which, repro)) {
        std::cout << lab::format_result(r) << std::endl;
        ok = ok && r.passed;
      }
      return ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
