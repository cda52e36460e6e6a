#include "visco/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "visco/cutoff.hpp"
#include "visco/field_io.hpp"
#include "visco/fft.hpp"
#include "visco/norms.hpp"
#include "visco/operators.hpp"

namespace visco::lab {
namespace {

using nlohmann::json;

std::string p_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

json p_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
  os << std::setprecision(17);
  return os;
}

json fit_json(const DecayFitResult& f) {
  return {{"slope", f.slope},         {"amplitude", f.amplitude}, {"r2", f.r2},
          {"window", {f.t_min, f.t_max}}, {"sensitivity", f.sensitivity}, {"points", f.points}};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

const char* version() {
#ifdef VISCO_VERSION
  return VISCO_VERSION;
#else
  return "unknown";
#endif
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& job) {
  const std::size_t threads = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

double theoretical_slope(KernelKind kind, int alpha, double p) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  switch (kind) {
    case KernelKind::A: return -1.5 - 0.5 * alpha + 2.5 * inv_p;
    case KernelKind::B:
    case KernelKind::C: return -2.0 - 0.5 * alpha + 2.5 * inv_p;
    case KernelKind::Heat: return -1.5 * (1.0 - inv_p) - 0.5 * alpha;
  }
  return 0.0;
}

double theoretical_highfreq_rate(double mu) { return 1.0 / (8.0 * mu); }

std::filesystem::path Outputs::file(const std::string& name) const {
  return dir / (prefix.empty() ? name : prefix + "_" + name);
}

void write_manifest(const Outputs& out, const std::string& command, const ConfigMap& resolved) {
  std::ofstream os = open_out(out.file("manifest.txt"));
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  os << "# visco-manifest v1\n";
  os << "command = " << command << "\n";
  os << "version = " << version() << "\n";
  os << "started = " << std::put_time(std::gmtime(&now), "%Y-%m-%dT%H:%M:%SZ") << "\n";
  resolved.write(os);
}

// kernel-decay

void validate(const KernelDecaySpec& s) {
  if (!(s.mu > 0.0)) throw std::invalid_argument("kernel-decay: mu must be positive");
  if (!(s.t_min >= 1.0) || !(s.t_max > s.t_min)) throw std::invalid_argument("kernel-decay: need 1 <= t_min < t_max");
  if (s.points < 8) throw std::invalid_argument("kernel-decay: at least 8 times are needed for a fit");
  if (s.kinds.empty() || s.alphas.empty() || s.p_list.empty())
    throw std::invalid_argument("kernel-decay: empty parameter list");
  for (double p : s.p_list)
    if (!(p >= 1.0)) throw std::invalid_argument("kernel-decay: p must be >= 1");
  for (KernelKind k : s.kinds)
    for (int a : s.alphas) validate(KernelSpec{k, s.mu, a, k == KernelKind::Heat ? Band::Full : s.band});
  if (s.band != Band::Low)
    for (KernelKind k : s.kinds)
      if (k != KernelKind::Heat)
        throw std::invalid_argument("kernel-decay: the wave kernels are only integrable on the low band");
}

std::vector<SlopeRow> kernel_decay(const KernelDecaySpec& spec) {
  validate(spec);
  const std::vector<double> times = log_spaced(spec.t_min, spec.t_max, static_cast<std::size_t>(spec.points));
  std::vector<SlopeRow> rows;
  for (KernelKind k : spec.kinds)
    for (int a : spec.alphas)
      for (double p : spec.p_list) {
        SlopeRow r;
        r.kind = k;
        r.band = k == KernelKind::Heat ? Band::Full : spec.band;
        r.alpha = a;
        r.p = p;
        r.mu = spec.mu;
        rows.push_back(r);
      }
  // One profile per (kind, alpha, t) serves every p.
  struct Job {
    KernelSpec kernel;
    double t;
  };
  std::vector<Job> jobs;
  std::map<std::pair<int, int>, std::size_t> first_job;
  for (KernelKind k : spec.kinds)
    for (int a : spec.alphas) {
      first_job[{static_cast<int>(k), a}] = jobs.size();
      for (double t : times) jobs.push_back({{k, spec.mu, a, k == KernelKind::Heat ? Band::Full : spec.band}, t});
    }
  std::vector<std::vector<DecayPoint>> norms(jobs.size());
  parallel_for(jobs.size(), spec.workers, [&](std::size_t i) {
    const RadialProfile prof = kernel_profile(jobs[i].kernel, jobs[i].t, spec.quadrature);
    for (double p : spec.p_list) norms[i].push_back({prof.t, lp_norm_radial(prof, p), prof.residual});
  });
  for (SlopeRow& r : rows) {
    const std::size_t base = first_job.at({static_cast<int>(r.kind), r.alpha});
    const auto pi = static_cast<std::size_t>(
        std::find(spec.p_list.begin(), spec.p_list.end(), r.p) - spec.p_list.begin());
    std::vector<double> t, y;
    for (std::size_t j = 0; j < times.size(); ++j) {
      r.series.push_back(norms[base + j][pi]);
      t.push_back(r.series.back().t);
      y.push_back(r.series.back().norm);
    }
    r.theory = theoretical_slope(r.kind, r.alpha, r.p);
    r.fit = fit_decay(t, y, spec.t_min, spec.t_max);
    r.deviation = std::abs(r.fit.slope - r.theory);
  }
  return rows;
}

void write_kernel_csv(std::ostream& os, const std::vector<SlopeRow>& rows) {
  os << "# visco-kernel-decay v1\n";
  os << "kind,band,alpha,p,mu,t,norm,quadrature_residual\n";
  for (const SlopeRow& r : rows)
    for (const DecayPoint& d : r.series)
      os << to_string(r.kind) << ',' << to_string(r.band) << ',' << r.alpha << ',' << p_label(r.p) << ',' << r.mu
         << ',' << d.t << ',' << d.norm << ',' << d.residual << '\n';
}

std::string slopes_json(const std::vector<SlopeRow>& rows) {
  json out = json::array();
  for (const SlopeRow& r : rows) {
    json j = fit_json(r.fit);
    j["kind"] = to_string(r.kind);
    j["band"] = to_string(r.band);
    j["alpha"] = r.alpha;
    j["p"] = p_json(r.p);
    j["mu"] = r.mu;
    j["theory"] = r.theory;
    j["deviation"] = r.deviation;
    out.push_back(j);
  }
  return out.dump(2);
}

std::vector<SlopeRow> cmd_kernel_decay(const KernelDecaySpec& spec, const Outputs& out) {
  std::vector<SlopeRow> rows = kernel_decay(spec);
  {
    std::ofstream os = open_out(out.file("kernel_decay.csv"));
    write_kernel_csv(os, rows);
  }
  open_out(out.file("kernel_decay_fits.json")) << slopes_json(rows) << '\n';
  if (out.gnuplot)
    for (const SlopeRow& r : rows) {
      std::ofstream os = open_out(out.file("kernel_" + to_string(r.kind) + "_a" + std::to_string(r.alpha) + "_p" +
                                           p_label(r.p) + ".dat"));
      os << "# t norm\n";
      for (const DecayPoint& d : r.series) os << d.t << ' ' << d.norm << '\n';
    }
  return rows;
}

// highfreq

std::vector<RateRow> highfreq(const HighfreqSpec& spec) {
  if (spec.mus.empty()) throw std::invalid_argument("highfreq: empty mu list");
  if (!(spec.window_max > spec.window_min && spec.window_min >= 0.0))
    throw std::invalid_argument("highfreq: bad fit window");
  if (spec.points < 8) throw std::invalid_argument("highfreq: at least 8 times are needed");
  std::vector<RateRow> rows(spec.mus.size());
  parallel_for(rows.size(), spec.workers, [&](std::size_t i) {
    const double mu = spec.mus[i];
    const KernelSpec k{spec.kind, mu, spec.alpha, Band::High};
    validate(k);
    const double unit = 8.0 * mu;
    std::vector<double> times;
    for (int j = 0; j < spec.points; ++j)
      times.push_back(unit * (spec.window_min + (spec.window_max - spec.window_min) * j / (spec.points - 1)));
    RateRow& r = rows[i];
    r.mu = mu;
    r.series = highfreq_sup_decay(k, times, spec.weight_by_cutoff);
    std::vector<double> t, y;
    for (const SupPoint& s : r.series) {
      t.push_back(s.t);
      y.push_back(s.sup);
    }
    r.fit = fit_exponential(t, y);
    r.theory = theoretical_highfreq_rate(mu);
    r.ratio = r.fit.rate / r.theory;
  });
  return rows;
}

std::vector<RateRow> cmd_highfreq(const HighfreqSpec& spec, const Outputs& out) {
  std::vector<RateRow> rows = highfreq(spec);
  {
    std::ofstream os = open_out(out.file("highfreq.csv"));
    os << "# visco-highfreq v1\n";
    os << "kind,alpha,mu,t,sup,rho_at\n";
    for (const RateRow& r : rows)
      for (const SupPoint& s : r.series)
        os << to_string(spec.kind) << ',' << spec.alpha << ',' << r.mu << ',' << s.t << ',' << s.sup << ','
           << s.rho_at << '\n';
  }
  json j = json::array();
  for (const RateRow& r : rows)
    j.push_back({{"kind", to_string(spec.kind)}, {"alpha", spec.alpha}, {"mu", r.mu}, {"rate", r.fit.rate},
                 {"amplitude", r.fit.amplitude}, {"r2", r.fit.r2}, {"points", r.fit.points},
                 {"theory", r.theory}, {"ratio", r.ratio}, {"deviation", std::abs(r.fit.rate - r.theory)}});
  open_out(out.file("highfreq_fits.json")) << j.dump(2) << '\n';
  return rows;
}

// linear-box

void validate(const LinearBoxSpec& s) {
  make_grid(s.n, s.length);
  if (!(s.mu > 0.0)) throw std::invalid_argument("linear-box: mu must be positive");
  if (s.times.empty()) throw std::invalid_argument("linear-box: no output times");
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (s.times[i] < 0.0 || (i > 0 && s.times[i] <= s.times[i - 1]))
      throw std::invalid_argument("linear-box: times must be non-negative and increasing");
    if (s.times[i] > 0.25 * s.length)
      throw std::invalid_argument("linear-box: t = " + std::to_string(s.times[i]) +
                                  " exceeds the wrap-around horizon L/4 = " + std::to_string(0.25 * s.length));
  }
  for (double p : s.p_list)
    if (!(p >= 1.0)) throw std::invalid_argument("linear-box: p must be >= 1");
  for (double sv : s.s_list)
    if (!(sv >= 0.0 && sv < 1.5)) throw std::invalid_argument("linear-box: s must lie in [0, 3/2)");
}

LinearBoxResult linear_box(const LinearBoxSpec& spec, const ViscoState* initial) {
  validate(spec);
  const Grid grid = make_grid(spec.n, spec.length);
  const ViscoState s0 = initial ? *initial : generate_initial_data(grid, spec.initial);
  require_same_grid(grid, s0.grid());
  const CutoffProfile cutoff = CutoffProfile::for_viscosity(spec.mu);
  LinearBoxResult result;
  for (double t : spec.times) {
    const ViscoState s = propagate_exact(s0, t, spec.mu);
    const SpectralTensorField Ec = q_project(s.E);
    NormRecord rec;
    rec.t = t;
    {
      const PhysicalVectorField u = to_physical(s.u);
      for (double p : spec.p_list) rec.values["u_l" + p_label(p)] = lp_norm_grid(u, p);
    }
    {
      const PhysicalTensorField e = to_physical(Ec);
      for (double p : spec.p_list) rec.values["Ec_l" + p_label(p)] = lp_norm_grid(e, p);
    }
    for (double sv : spec.s_list) {
      rec.values["u_hneg_" + p_label(sv)] = negative_sobolev_norm(s.u, sv);
      rec.values["Ec_hneg_" + p_label(sv)] = negative_sobolev_norm(Ec, sv);
    }
    if (spec.split) {
      const auto [u1, uinf] = split_low_high(s.u, cutoff);
      const auto [e1, einf] = split_low_high(Ec, cutoff);
      rec.values["u1_l2"] = l2_norm(u1);
      rec.values["uinf_l2"] = l2_norm(uinf);
      rec.values["Ec1_l2"] = l2_norm(e1);
      rec.values["Ecinf_l2"] = l2_norm(einf);
    }
    result.records.push_back(std::move(rec));
  }
  if (std::find(spec.p_list.begin(), spec.p_list.end(), 1.0) != spec.p_list.end()) {
    std::vector<double> t, y;
    for (const NormRecord& r : result.records) {
      t.push_back(r.t);
      y.push_back(r.values.at("u_l1"));
    }
    try {
      result.u_l1_fit = fit_decay(t, y, spec.fit_t_min, spec.fit_t_max);
    } catch (const std::invalid_argument&) {
      // Too few samples in the window (or a zero series): no fit to report.
    }
  }
  return result;
}

LinearBoxResult cmd_linear_box(const LinearBoxSpec& spec, const Outputs& out) {
  LinearBoxResult r = linear_box(spec);
  {
    std::ofstream os = open_out(out.file("linear_box.csv"));
    write_records_csv(os, r.records, "visco-linear-box v1");
  }
  json j = json::object();
  if (r.u_l1_fit) {
    j = fit_json(*r.u_l1_fit);
    j["series"] = "u_l1";
    j["theory"] = 0.5;
    j["deviation"] = std::abs(r.u_l1_fit->slope - 0.5);
  }
  open_out(out.file("linear_box_fit.json")) << j.dump(2) << '\n';
  return r;
}

// nonlinear-box

void write_records_csv(std::ostream& os, const std::vector<NormRecord>& records, const std::string& schema) {
  os << "# " << schema << "\n";
  if (records.empty()) {
    os << "t\n";
    return;
  }
  os << "t";
  for (const auto& [k, v] : records.front().values) os << ',' << k;
  os << '\n';
  for (const NormRecord& r : records) {
    os << r.t;
    for (const auto& [k, v] : r.values) os << ',' << v;
    os << '\n';
  }
}

NonlinearSummary summarize(std::vector<NormRecord> records) {
  NonlinearSummary s;
  double b0 = -1.0, bmax = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& v = records[i].values;
    auto get = [&](const char* k) {
      const auto it = v.find(k);
      return it == v.end() ? 0.0 : it->second;
    };
    if (i > 0) {
      const auto& p = records[i - 1].values;
      s.max_energy_increase = std::max(s.max_energy_increase, get("energy") - p.at("energy"));
      s.max_D_increase = std::max(s.max_D_increase, get("D") - p.at("D"));
    }
    if (b0 < 0.0) b0 = get("besov");
    bmax = std::max(bmax, get("besov"));
    s.max_divergence = std::max(s.max_divergence, get("div"));
    s.max_div_transpose = std::max(s.max_div_transpose, get("div_ET"));
    s.max_determinant = std::max(s.max_determinant, get("det"));
    s.max_compatibility = std::max(s.max_compatibility, get("compat"));
    s.max_top_band = std::max(s.max_top_band, get("top_band"));
  }
  s.besov_ratio = b0 > 0.0 ? bmax / b0 : 0.0;
  s.records = std::move(records);
  return s;
}

NonlinearSummary cmd_nonlinear_box(const RunConfig& config, const Outputs& out) {
  std::vector<NormRecord> records;
  std::string failure;
  std::optional<ViscoState> last;
  try {
    evolve(config, [&](const ViscoState& s, const NormRecord& rec) {
      records.push_back(rec);
      last = s;
    });
  } catch (const StepRejected& e) {
    failure = e.what();
  } catch (const InitialDataRejected& e) {
    failure = e.what();
  }
  NonlinearSummary s = summarize(std::move(records));
  s.failure = failure;
  {
    std::ofstream os = open_out(out.file("nonlinear_box.csv"));
    write_records_csv(os, s.records, "visco-run v1");
  }
  if (last) save_state(out.file("final_state.bin"), *last);
  const json j = {{"records", s.records.size()},
                  {"max_energy_increase", s.max_energy_increase},
                  {"max_D_increase", s.max_D_increase},
                  {"besov_ratio", s.besov_ratio},
                  {"max_divergence", s.max_divergence},
                  {"max_div_transpose", s.max_div_transpose},
                  {"max_determinant", s.max_determinant},
                  {"max_compatibility", s.max_compatibility},
                  {"under_resolved", s.max_top_band > kUnderResolvedFraction},
                  {"failure", s.failure}};
  open_out(out.file("nonlinear_box_summary.json")) << j.dump(2) << '\n';
  return s;
}

// fit

std::string cmd_fit(const FitSpec& spec, const Outputs& out) {
  std::ifstream in(spec.input);
  if (!in) throw std::runtime_error("cannot open '" + spec.input.string() + "'");
  std::string line;
  std::vector<std::string> header;
  std::vector<double> t, y;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split_csv(line);
    if (header.empty()) {
      header = cells;
      continue;
    }
    auto column = [&](const std::string& name) -> const std::string& {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw std::invalid_argument("fit: no column '" + name + "'");
      return cells.at(static_cast<std::size_t>(it - header.begin()));
    };
    bool keep = true;
    for (const auto& [col, value] : spec.filters) keep = keep && column(col) == value;
    if (!keep) continue;
    t.push_back(parse_number(column(spec.x)));
    y.push_back(parse_number(column(spec.y)));
  }
  json j;
  if (spec.exponential) {
    std::vector<double> tw, yw;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] >= spec.t_min && t[i] <= spec.t_max) {
        tw.push_back(t[i]);
        yw.push_back(y[i]);
      }
    const ExponentialFitResult f = fit_exponential(tw, yw);
    j = {{"rate", f.rate}, {"amplitude", f.amplitude}, {"r2", f.r2}, {"points", f.points}};
  } else {
    j = fit_json(fit_decay(t, y, spec.t_min, std::isinf(spec.t_max) ? 1e300 : spec.t_max));
  }
  j["input"] = spec.input.string();
  j["x"] = spec.x;
  j["y"] = spec.y;
  const std::string text = j.dump(2);
  open_out(out.file("fit.json")) << text << '\n';
  return text;
}

}  // namespace visco::lab
