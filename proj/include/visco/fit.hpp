#pragma once

#include <cstddef>
#include <span>

namespace visco {

/// Least-squares fit of log(y) = log(amplitude) + slope * log(1 + t) over t in [t_min, t_max].
struct DecayFitResult {
  double slope = 0.0;
  double amplitude = 0.0;
  double r2 = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  /// Largest |slope change| when the window is shrunk by 25% (in log(1+t)) from either end.
  double sensitivity = 0.0;
  std::size_t points = 0;
};

/// Requires at least 8 samples inside the window, all strictly positive.
DecayFitResult fit_decay(std::span<const double> t, std::span<const double> y, double t_min,
                         double t_max);

/// Least-squares fit of log(y) = log(amplitude) - rate * t.
struct ExponentialFitResult {
  double rate = 0.0;
  double amplitude = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

ExponentialFitResult fit_exponential(std::span<const double> t, std::span<const double> y);

}  // namespace visco
