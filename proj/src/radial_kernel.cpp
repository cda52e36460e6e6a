#include "visco/radial_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "visco/cutoff.hpp"
#include "visco/semigroup.hpp"

namespace visco {
namespace {

constexpr double kPi = std::numbers::pi;

// (2 pi)^{-3/2} * 4 pi
const double kRadialPrefactor = 4.0 * kPi * std::pow(2.0 * kPi, -1.5);

std::vector<double> simpson_weights(std::size_t intervals, double h) {
  std::vector<double> w(intervals + 1);
  for (std::size_t j = 0; j <= intervals; ++j)
    w[j] = (j == 0 || j == intervals) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
  for (auto& x : w) x *= h / 3.0;
  return w;
}

std::vector<double> evaluate_profile(const std::function<double(double)>& g_hat, double rho_max,
                                     std::size_t intervals, const std::vector<double>& r) {
  const double h = rho_max / static_cast<double>(intervals);
  const std::vector<double> w = simpson_weights(intervals, h);
  std::vector<double> coeff(intervals + 1);
  for (std::size_t j = 0; j <= intervals; ++j) {
    const double rho = h * static_cast<double>(j);
    coeff[j] = j == 0 ? 0.0 : w[j] * rho * g_hat(rho);
  }
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double ri = r[i];
    if (ri == 0.0) {
      double s = 0.0;
      for (std::size_t j = 0; j <= intervals; ++j) s += coeff[j] * h * static_cast<double>(j);
      out[i] = kRadialPrefactor * s;
      continue;
    }
    // sin(rho_j r) through a unit rotation, re-anchored every 256 steps.
    const std::complex<double> rot = std::polar(1.0, h * ri);
    std::complex<double> z{1.0, 0.0};
    double s = 0.0;
    for (std::size_t j = 0; j <= intervals; ++j) {
      if (j % 256 == 0) z = std::polar(1.0, h * ri * static_cast<double>(j));
      s += coeff[j] * z.imag();
      z *= rot;
    }
    out[i] = kRadialPrefactor * s / ri;
  }
  return out;
}

double integrate_run(const std::vector<double>& r, const std::vector<double>& f, std::size_t begin,
                     std::size_t end) {
  // Intervals [begin, end) of uniform spacing.
  const std::size_t m = end - begin;
  if (m == 0) return 0.0;
  const double h = r[begin + 1] - r[begin];
  if (m == 1) return 0.5 * h * (f[begin] + f[end]);
  std::size_t simpson_end = end;
  double tail = 0.0;
  if (m % 2 == 1) {
    simpson_end = end - 3;
    tail = 3.0 * h / 8.0 * (f[end - 3] + 3.0 * f[end - 2] + 3.0 * f[end - 1] + f[end]);
  }
  double s = 0.0;
  for (std::size_t j = begin; j < simpson_end; j += 2) s += f[j] + 4.0 * f[j + 1] + f[j + 2];
  return s * h / 3.0 + tail;
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::A: return "A";
    case KernelKind::B: return "B";
    case KernelKind::C: return "C";
    case KernelKind::Heat: return "heat";
  }
  return "?";
}

std::string to_string(Band band) {
  switch (band) {
    case Band::Low: return "low";
    case Band::Full: return "full";
    case Band::High: return "high";
  }
  return "?";
}

KernelKind parse_kernel_kind(const std::string& s) {
  if (s == "A" || s == "a") return KernelKind::A;
  if (s == "B" || s == "b") return KernelKind::B;
  if (s == "C" || s == "c") return KernelKind::C;
  if (s == "heat") return KernelKind::Heat;
  throw std::invalid_argument("unknown kernel kind '" + s + "'");
}

Band parse_band(const std::string& s) {
  if (s == "low") return Band::Low;
  if (s == "full") return Band::Full;
  if (s == "high") return Band::High;
  throw std::invalid_argument("unknown band '" + s + "'");
}

void validate(const KernelSpec& spec) {
  if (!(spec.mu > 0.0)) throw std::invalid_argument("kernel: viscosity must be positive");
  if (spec.alpha < 0) throw std::invalid_argument("kernel: derivative order must be >= 0");
}

double kernel_symbol(const KernelSpec& spec, double rho, double t) {
  double k = 0.0;
  const double rho2 = rho * rho;
  switch (spec.kind) {
    case KernelKind::Heat: k = std::exp(-spec.mu * rho2 * t); break;
    case KernelKind::A: k = amplitudes(rho2, spec.mu, t).A; break;
    case KernelKind::B: k = amplitudes(rho2, spec.mu, t).B; break;
    case KernelKind::C: k = amplitudes(rho2, spec.mu, t).C; break;
  }
  return spec.alpha == 0 ? k : std::pow(rho, spec.alpha) * k;
}

double kernel_multiplier(const KernelSpec& spec, double rho, double t) {
  const double k = kernel_symbol(spec, rho, t);
  if (spec.band == Band::Full) return k;
  const CutoffProfile cutoff = CutoffProfile::for_viscosity(spec.mu);
  return spec.band == Band::Low ? k * cutoff.low(rho) : k * cutoff.high(rho);
}

std::vector<double> wavefront_grid(double t, double mu, double rho_max) {
  if (t < 0.0 || !(mu > 0.0) || !(rho_max > 0.0))
    throw std::invalid_argument("wavefront_grid: bad arguments");
  const double width = std::sqrt(mu * (1.0 + t));
  const double r_max = t + 10.0 * width;
  const double h = std::min(width / 20.0, kPi / (8.0 * rho_max));
  std::size_t count = static_cast<std::size_t>(std::ceil(r_max / h));
  count += count % 2;
  std::vector<double> r(count + 1);
  const double step = r_max / static_cast<double>(count);
  for (std::size_t i = 0; i <= count; ++i) r[i] = step * static_cast<double>(i);
  return r;
}

RadialProfile radial_inverse_ft(const std::function<double(double)>& g_hat, double rho_max, double t,
                                std::vector<double> r_grid, const QuadratureOptions& options) {
  if (!(rho_max > 0.0)) throw std::invalid_argument("radial_inverse_ft: rho_max must be positive");
  if (r_grid.empty()) throw std::invalid_argument("radial_inverse_ft: empty radius grid");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("radial_inverse_ft: radii must be strictly increasing");
  const double r_max = std::max(r_grid.back(), 1.0);
  const double h0 = std::min(kPi / (8.0 * r_max), rho_max / 64.0);
  std::size_t intervals = static_cast<std::size_t>(std::ceil(rho_max / h0));
  intervals += intervals % 2;

  RadialProfile profile;
  profile.t = t;
  std::vector<double> coarse = evaluate_profile(g_hat, rho_max, intervals, r_grid);
  double residual = std::numeric_limits<double>::infinity();
  while (true) {
    if (2 * intervals > options.max_intervals)
      throw QuadratureError("radial_inverse_ft: no self-convergence within " +
                                std::to_string(options.max_intervals) + " intervals (residual " +
                                std::to_string(residual) + ")",
                            residual);
    intervals *= 2;
    std::vector<double> fine = evaluate_profile(g_hat, rho_max, intervals, r_grid);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) {
      diff = std::max(diff, std::abs(fine[i] - coarse[i]));
      scale = std::max(scale, std::abs(fine[i]));
    }
    residual = scale > 0.0 ? diff / scale : 0.0;
    coarse = std::move(fine);
    if (residual <= options.tolerance && intervals >= options.min_intervals) break;
  }
  profile.r = std::move(r_grid);
  profile.values = std::move(coarse);
  profile.residual = residual;
  profile.quadrature_intervals = intervals;
  return profile;
}

double kernel_rho_max(const KernelSpec& spec, double t) {
  validate(spec);
  if (spec.band == Band::Low) return CutoffProfile::for_viscosity(spec.mu).outer_radius();
  if (spec.kind != KernelKind::Heat)
    throw QuadratureError("kernel " + to_string(spec.kind) + " on the " + to_string(spec.band) +
                              " band is not integrable against rho^2",
                          std::numeric_limits<double>::infinity());
  if (!(t > 0.0))
    throw QuadratureError("heat kernel at t = 0 is not integrable", std::numeric_limits<double>::infinity());
  // rho^2 |g_hat| peaks near sqrt((2 + alpha) / (2 mu t)); march outward until it is negligible.
  const auto weight = [&](double rho) { return rho * rho * std::abs(kernel_multiplier(spec, rho, t)); };
  double rho = std::sqrt((2.0 + spec.alpha) / (2.0 * spec.mu * t));
  const double peak = weight(rho);
  while (weight(rho) > 1e-16 * peak) rho *= 1.05;
  return rho;
}

RadialProfile kernel_profile(const KernelSpec& spec, double t, const QuadratureOptions& options) {
  const double rho_max = kernel_rho_max(spec, t);
  return radial_inverse_ft([&](double rho) { return kernel_multiplier(spec, rho, t); }, rho_max, t,
                           wavefront_grid(t, spec.mu, rho_max), options);
}

double lp_norm_radial(const RadialProfile& profile, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_radial: p must be >= 1");
  const auto& r = profile.r;
  const auto& f = profile.values;
  if (r.size() != f.size()) throw std::invalid_argument("lp_norm_radial: size mismatch");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f) m = std::max(m, std::abs(v));
    return m;
  }
  if (r.size() < 2) return 0.0;
  std::vector<double> integrand(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) integrand[i] = std::pow(std::abs(f[i]), p) * r[i] * r[i];
  double total = 0.0;
  std::size_t begin = 0;
  while (begin + 1 < r.size()) {
    const double h = r[begin + 1] - r[begin];
    std::size_t end = begin + 1;
    while (end + 1 < r.size() && std::abs((r[end + 1] - r[end]) - h) <= 1e-9 * h) ++end;
    total += integrate_run(r, integrand, begin, end);
    begin = end;
  }
  return std::pow(4.0 * kPi * total, 1.0 / p);
}

std::vector<DecayPoint> decay_scan(const KernelSpec& spec, double p, std::span<const double> times,
                                   const QuadratureOptions& options) {
  validate(spec);
  std::vector<DecayPoint> out;
  out.reserve(times.size());
  double previous = -std::numeric_limits<double>::infinity();
  for (double t : times) {
    if (!(t > previous)) throw std::invalid_argument("decay_scan: times must be increasing");
    previous = t;
    const RadialProfile prof = kernel_profile(spec, t, options);
    out.push_back({t, lp_norm_radial(prof, p), prof.residual});
  }
  return out;
}

std::vector<SupPoint> highfreq_sup_decay(const KernelSpec& spec, std::span<const double> times,
                                         bool weight_by_cutoff) {
  validate(spec);
  if (spec.band != Band::High) throw std::invalid_argument("highfreq_sup_decay: spec must use the high band");
  const CutoffProfile cutoff = CutoffProfile::for_viscosity(spec.mu);
  const double rho0 = 0.5 * cutoff.m1();
  std::vector<SupPoint> out;
  for (double t : times) {
    if (t < 0.0) throw std::invalid_argument("highfreq_sup_decay: negative time");
    const auto value = [&](double rho) {
      const double v = std::abs(kernel_symbol(spec, rho, t));
      return weight_by_cutoff ? v * cutoff.high(rho) : v;
    };
    double rho_max = std::max(8.0 / spec.mu, 4.0 * rho0);
    const double step = std::min(0.1 / std::max(t, 1.0), (rho_max - rho0) / 4000.0);
    const std::size_t count = static_cast<std::size_t>(std::ceil((rho_max - rho0) / step));
    SupPoint best{t, -1.0, rho0};
    for (std::size_t i = 0; i <= count; ++i) {
      const double rho = rho0 + (rho_max - rho0) * static_cast<double>(i) / static_cast<double>(count);
      const double v = value(rho);
      if (v > best.sup) best = {t, v, rho};
    }
    // Tail beyond rho_max: extend while it still matters at the 1e-12 level.
    for (double rho = rho_max; rho < 1e6 / spec.mu; rho *= 1.5) {
      const double v = value(rho);
      if (v > best.sup) best = {t, v, rho};
      if (v < 1e-12 * best.sup && rho > 2.0 * rho_max) break;
    }
    // Golden-section refinement around the grid maximum.
    double lo = std::max(rho0, best.rho_at - step), hi = best.rho_at + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    for (int it = 0; it < 80; ++it) {
      if (f1 > f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = value(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = value(x2);
      }
    }
    const double xr = 0.5 * (lo + hi);
    const double fr = value(xr);
    if (fr > best.sup) best = {t, fr, xr};
    out.push_back(best);
  }
  return out;
}

std::vector<double> log_spaced(double t_min, double t_max, std::size_t count) {
  if (count < 2 || !(t_min > 0.0) || !(t_max > t_min))
    throw std::invalid_argument("log_spaced: need count >= 2 and 0 < t_min < t_max");
  std::vector<double> out(count);
  const double a = std::log(t_min), b = std::log(t_max);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  // exp(log(x)) can miss x by an ulp, which would push an endpoint out of a fit window.
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

}  // namespace visco
