#include "visco/fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace visco {
namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit: abscissae are all equal");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (f.intercept + f.slope * x[i]);
    sse += e * e;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  return f;
}

void check_series(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size()) throw std::invalid_argument("fit: series length mismatch");
}

std::pair<std::vector<double>, std::vector<double>> window_logs(std::span<const double> t,
                                                                std::span<const double> y, double lo,
                                                                double hi) {
  std::vector<double> x, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    x.push_back(std::log1p(t[i]));
    ly.push_back(std::log(y[i]));
  }
  return {x, ly};
}

}  // namespace

DecayFitResult fit_decay(std::span<const double> t, std::span<const double> y, double t_min,
                         double t_max) {
  check_series(t, y);
  if (!(t_max > t_min)) throw std::invalid_argument("fit_decay: empty window");
  std::size_t count = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max) continue;
    if (!(y[i] > 0.0))
      throw std::invalid_argument("fit_decay: non-positive value at t = " + std::to_string(t[i]));
    ++count;
  }
  if (count < 8) throw std::invalid_argument("fit_decay: need at least 8 points in the window");

  auto [x, ly] = window_logs(t, y, t_min, t_max);
  const LineFit full = least_squares(x, ly);
  DecayFitResult out;
  out.slope = full.slope;
  out.amplitude = std::exp(full.intercept);
  out.r2 = full.r2;
  out.t_min = t_min;
  out.t_max = t_max;
  out.points = count;

  const double a = std::log1p(t_min), b = std::log1p(t_max), cut = 0.25 * (b - a);
  for (auto [lo, hi] : {std::pair{a + cut, b}, std::pair{a, b - cut}}) {
    auto [xs, ys] = window_logs(t, y, std::expm1(lo), std::expm1(hi));
    if (xs.size() < 3) continue;
    out.sensitivity = std::max(out.sensitivity, std::abs(least_squares(xs, ys).slope - full.slope));
  }
  return out;
}

ExponentialFitResult fit_exponential(std::span<const double> t, std::span<const double> y) {
  check_series(t, y);
  if (t.size() < 3) throw std::invalid_argument("fit_exponential: need at least 3 points");
  std::vector<double> x(t.begin(), t.end()), ly;
  for (double v : y) {
    if (!(v > 0.0)) throw std::invalid_argument("fit_exponential: non-positive value");
    ly.push_back(std::log(v));
  }
  const LineFit f = least_squares(x, ly);
  return {-f.slope, std::exp(f.intercept), f.r2, t.size()};
}

}  // namespace visco
