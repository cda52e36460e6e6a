#include <cmath>
#include <numbers>

#include "doctest.h"
#include "visco/fit.hpp"
#include "visco/norms.hpp"
#include "visco/radial_kernel.hpp"
#include "visco/semigroup.hpp"

using namespace visco;
using doctest::Approx;

namespace {

std::vector<double> uniform(double a, double b, std::size_t count) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = a + (b - a) * i / (count - 1);
  return r;
}

const double kTwoPi32 = std::pow(2.0 * std::numbers::pi, 1.5);

}  // namespace

TEST_CASE("kernel names round trip") {
  for (KernelKind k : {KernelKind::A, KernelKind::B, KernelKind::C, KernelKind::Heat})
    CHECK(parse_kernel_kind(to_string(k)) == k);
  for (Band b : {Band::Low, Band::Full, Band::High}) CHECK(parse_band(to_string(b)) == b);
  CHECK_THROWS(parse_kernel_kind("D"));
  CHECK_THROWS(parse_band("mid"));
}

TEST_CASE("multipliers") {
  const KernelSpec a{KernelKind::A, 1.0, 1, Band::Low};
  CHECK(kernel_multiplier(a, 0.3, 2.0) == Approx(0.3 * amplitudes(0.09, 1.0, 2.0).A));
  CHECK(kernel_multiplier(a, 0.8, 2.0) == 0.0);  // beyond M1/sqrt2
  const KernelSpec heat{KernelKind::Heat, 0.5, 0, Band::Full};
  CHECK(kernel_multiplier(heat, 2.0, 3.0) == Approx(std::exp(-0.5 * 4.0 * 3.0)));
  const KernelSpec high{KernelKind::B, 1.0, 0, Band::High};
  CHECK(kernel_multiplier(high, 0.4, 1.0) == 0.0);
  CHECK(kernel_symbol(high, 0.4, 1.0) == Approx(amplitudes(0.16, 1.0, 1.0).B));
}

TEST_CASE("gaussian is self-dual") {
  const std::vector<double> r = {0.0, 0.25, 1.0, 2.0, 4.0};
  const RadialProfile p = radial_inverse_ft([](double rho) { return std::exp(-0.5 * rho * rho); }, 14.0, 0.0, r);
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(p.values[i] - std::exp(-0.5 * r[i] * r[i])) < 1e-9);
  CHECK(p.residual <= 1e-7);
  CHECK(p.quadrature_intervals > 0);
}

TEST_CASE("heat kernel profile and norms") {
  const KernelSpec heat{KernelKind::Heat, 1.0, 0, Band::Full};
  for (double t : {1.0, 4.0}) {
    const RadialProfile p = kernel_profile(heat, t);
    const double peak = std::pow(2.0 * t, -1.5);
    CHECK(p.values.front() == Approx(peak).epsilon(1e-8));
    for (std::size_t i = 0; i < p.r.size(); i += 37)
      CHECK(std::abs(p.values[i] - peak * std::exp(-p.r[i] * p.r[i] / (4.0 * t))) < 1e-8 * peak);
    // the profile integrates to (2 pi)^{3/2}; the symmetric convention carries (2 pi)^{-3/2}
    CHECK(lp_norm_radial(p, 1.0) / kTwoPi32 == Approx(1.0).epsilon(1e-8));
  }
  CHECK(lp_norm_radial(kernel_profile(heat, 1.0), kInf) == Approx(0.353553).epsilon(1e-6));
}

TEST_CASE("radial norm of an indicator") {
  RadialProfile p;
  p.r = uniform(0.0, 1.0, 201);
  p.values.assign(p.r.size(), 1.0);
  CHECK(lp_norm_radial(p, 2.0) == Approx(std::sqrt(4.0 * std::numbers::pi / 3.0)).epsilon(1e-12));
  CHECK(lp_norm_radial(p, 1.0) == Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
  CHECK(lp_norm_radial(p, kInf) == 1.0);
  CHECK_THROWS_AS(lp_norm_radial(p, 0.5), std::invalid_argument);
}

TEST_CASE("quadrature errors") {
  CHECK_THROWS_AS(kernel_rho_max({KernelKind::A, 1.0, 0, Band::Full}, 1.0), QuadratureError);
  CHECK_THROWS_AS(kernel_rho_max({KernelKind::Heat, 1.0, 0, Band::Full}, 0.0), QuadratureError);
  CHECK(kernel_rho_max({KernelKind::C, 2.0, 0, Band::Low}, 5.0) == Approx(0.5 / std::sqrt(2.0)));
  QuadratureOptions tight;
  tight.tolerance = 1e-300;
  tight.max_intervals = 256;
  CHECK_THROWS_AS(radial_inverse_ft([](double rho) { return std::sin(50.0 * rho); }, 10.0, 0.0, {0.0, 1.0}, tight),
                  QuadratureError);
  CHECK_THROWS_AS(radial_inverse_ft([](double) { return 1.0; }, 1.0, 0.0, {1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("halving the rho step leaves the norms unchanged") {
  const KernelSpec a{KernelKind::C, 1.0, 0, Band::Low};
  const RadialProfile coarse = kernel_profile(a, 30.0);
  QuadratureOptions opt;
  opt.min_intervals = 2 * coarse.quadrature_intervals;
  const RadialProfile fine = kernel_profile(a, 30.0, opt);
  CHECK(fine.quadrature_intervals == 2 * coarse.quadrature_intervals);
  for (double p : {1.0, 2.0, kInf})
    CHECK(lp_norm_radial(coarse, p) == Approx(lp_norm_radial(fine, p)).epsilon(1e-6));
}

TEST_CASE("wave kernel concentrates on the shell r ~ t") {
  const KernelSpec a{KernelKind::A, 1.0, 0, Band::Low};
  const double t = 50.0;
  const RadialProfile p = kernel_profile(a, t);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < p.values.size(); ++i)
    if (std::abs(p.values[i]) > std::abs(p.values[arg])) arg = i;
  CHECK(std::abs(p.r[arg] - t) < 3.0 * std::sqrt(t));
  // the origin is far below the shell
  CHECK(std::abs(p.values.front()) < 0.05 * std::abs(p.values[arg]));
  const std::vector<double> grid = wavefront_grid(t, 1.0, 0.8);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() >= t + 10.0 * std::sqrt(1.0 + t) - 1e-9);
}

TEST_CASE("heat decay slope at p = infinity") {
  const KernelSpec heat{KernelKind::Heat, 1.0, 0, Band::Full};
  const auto times = log_spaced(10.0, 300.0, 12);
  const auto series = decay_scan(heat, kInf, times);
  std::vector<double> t, y;
  for (const auto& pt : series) {
    t.push_back(pt.t);
    y.push_back(pt.norm);
    CHECK(pt.norm == Approx(std::pow(2.0 * pt.t, -1.5)).epsilon(1e-7));
  }
  CHECK(fit_decay(t, y, 10.0, 300.0).slope == Approx(-1.5).epsilon(0.02));
}

TEST_CASE("high-frequency sup") {
  const KernelSpec a{KernelKind::A, 1.0, 0, Band::High};
  const std::vector<double> t0 = {0.0};
  CHECK(highfreq_sup_decay(a, t0).front().sup == 0.0);

  // kind B: log-sup falls linearly in t at the rate set by rho = M1/2
  const KernelSpec b{KernelKind::B, 1.0, 0, Band::High};
  std::vector<double> times;
  for (int i = 0; i <= 25; ++i) times.push_back(40.0 + 8.0 * i);
  const auto series = highfreq_sup_decay(b, times);
  std::vector<double> t, y;
  for (const auto& pt : series) {
    t.push_back(pt.t);
    y.push_back(pt.sup);
  }
  CHECK(series.back().sup < 1e-6 * series.front().sup);
  const ExponentialFitResult f = fit_exponential(t, y);
  CHECK(f.r2 > 0.99);
  CHECK(f.rate == Approx(0.125).epsilon(0.2));
  for (const auto& pt : series) CHECK(pt.rho_at >= 0.5 - 1e-12);
}

TEST_CASE("log-spaced times") {
  const auto t = log_spaced(10.0, 1000.0, 3);
  REQUIRE(t.size() == 3);
  CHECK(t[0] == Approx(10.0));
  CHECK(t[1] == Approx(100.0));
  CHECK(t[2] == 1000.0);
  CHECK(log_spaced(10.0, 30.0, 8).back() == 30.0);
}

TEST_CASE("fit_decay examples") {
  std::vector<double> t, y1, y2, y3;
  for (int i = 0; i < 40; ++i) {
    const double x = 20.0 + 180.0 * i / 39.0;
    t.push_back(x);
    y1.push_back(4.0 * std::pow(1.0 + x, -2.0));
    y2.push_back(std::pow(1.0 + x, 0.5));
    y3.push_back(std::pow(1.0 + x, -2.0) * (1.0 + 0.01 * std::sin(x)));
  }
  const DecayFitResult f1 = fit_decay(t, y1, 0.0, 1e9);
  CHECK(f1.slope == Approx(-2.0).epsilon(1e-12));
  CHECK(f1.amplitude == Approx(4.0).epsilon(1e-10));
  CHECK(f1.r2 == Approx(1.0).epsilon(1e-12));
  CHECK(f1.points == 40);
  CHECK(f1.sensitivity < 1e-10);
  CHECK(fit_decay(t, y2, 0.0, 1e9).slope == Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(fit_decay(t, y3, 20.0, 200.0).slope + 2.0) < 0.02);
}

TEST_CASE("fit_decay errors") {
  std::vector<double> t = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> y(t.size(), 1.0);
  CHECK_NOTHROW(fit_decay(t, y, 0.0, 10.0));
  CHECK_THROWS_AS(fit_decay(t, y, 0.0, 5.0), std::invalid_argument);
  y[3] = 0.0;
  CHECK_THROWS_AS(fit_decay(t, y, 0.0, 10.0), std::invalid_argument);
  y[3] = -1.0;
  CHECK_THROWS_AS(fit_decay(t, y, 0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(t, std::vector<double>(3, 1.0), 0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(fit_decay(t, y, 5.0, 5.0), std::invalid_argument);
}

TEST_CASE("fit_exponential") {
  std::vector<double> t, y;
  for (int i = 0; i < 10; ++i) {
    t.push_back(i);
    y.push_back(3.0 * std::exp(-0.125 * i));
  }
  const ExponentialFitResult f = fit_exponential(t, y);
  CHECK(f.rate == Approx(0.125).epsilon(1e-12));
  CHECK(f.amplitude == Approx(3.0).epsilon(1e-12));
  CHECK(f.r2 == Approx(1.0));
}
