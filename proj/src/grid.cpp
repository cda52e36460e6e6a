#include "visco/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace visco {

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("grid: n must be even and >= 4, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid: box length must be positive");
  xi_.resize(n);
  for (int i = 0; i < n; ++i) xi_[i] = 2.0 * std::numbers::pi * wavenumber(i) / length;
}

std::vector<double> Grid::axis_wavenumbers() const {
  std::vector<double> out = xi_;
  std::sort(out.begin(), out.end());
  return out;
}

double Grid::nyquist_wavenumber() const { return std::abs(xi_[n_ / 2]); }

Grid make_grid(int n, double length) { return Grid(n, length); }

}  // namespace visco
