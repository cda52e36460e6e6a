#include "visco/cutoff.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace visco {
namespace {

double bump_g(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = bump_g(x), b = bump_g(1.0 - x);
  return a / (a + b);
}

}  // namespace

CutoffProfile::CutoffProfile(double m1)
    : m1_(m1), inner_(0.5 * m1), outer_(m1 / std::numbers::sqrt2) {
  if (!(m1 > 0.0) || !std::isfinite(m1))
    throw std::invalid_argument("cutoff: M1 must be positive");
}

CutoffProfile CutoffProfile::for_viscosity(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("cutoff: viscosity must be positive");
  return CutoffProfile(1.0 / mu);
}

double CutoffProfile::low(double rho) const {
  if (rho <= inner_) return 1.0;
  if (rho >= outer_) return 0.0;
  return smooth_step((outer_ - rho) / (outer_ - inner_));
}

}  // namespace visco
