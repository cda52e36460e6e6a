#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace visco {

using Complex = std::complex<double>;

/// Periodic cube [0, L)^3 sampled with n points per axis.
///
/// Spectral arrays are stored in FFT order: axis index i carries the integer
/// wavenumber i for i < n/2 and i - n otherwise, so i = n/2 is the Nyquist row
/// (wavenumber -n/2). The physical wavenumber is xi = 2*pi*k/L.
///
/// Two wavevectors are exposed per mode:
///   - wavevector(): the raw lattice vector, used for radial multipliers
///     (cutoffs, |xi|^s weights, shells);
///   - derivative_wavevector(): the same vector with Nyquist components set to
///     zero, used by every operator that multiplies by a component of i*xi
///     (derivatives, projectors, the linear propagator). This keeps real fields
///     real, since a Nyquist row is its own mirror.
class Grid {
public:
  Grid(int n, double length);

  int n() const { return n_; }
  double length() const { return length_; }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_ * n_; }
  double spacing() const { return length_ / n_; }
  double cell_volume() const { return spacing() * spacing() * spacing(); }
  double volume() const { return length_ * length_ * length_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
  bool nyquist(int i) const { return i == n_ / 2; }
  /// Axis index of -k.
  int mirror(int i) const { return i == 0 ? 0 : n_ - i; }

  double xi(int i) const { return xi_[i]; }
  double derivative_xi(int i) const { return nyquist(i) ? 0.0 : xi_[i]; }

  Eigen::Vector3d wavevector(int i, int j, int k) const {
    return {xi_[i], xi_[j], xi_[k]};
  }
  Eigen::Vector3d derivative_wavevector(int i, int j, int k) const {
    return {derivative_xi(i), derivative_xi(j), derivative_xi(k)};
  }
  double xi2(int i, int j, int k) const {
    return xi_[i] * xi_[i] + xi_[j] * xi_[j] + xi_[k] * xi_[k];
  }

  /// Per-axis physical wavenumbers sorted ascending: 2*pi*k/L, k = -n/2..n/2-1.
  std::vector<double> axis_wavenumbers() const;
  /// Smallest nonzero |xi| on the lattice.
  double fundamental() const { return xi_.size() > 1 ? xi_[1] : 0.0; }
  /// Largest |xi| along one axis (the Nyquist wavenumber magnitude).
  double nyquist_wavenumber() const;

  bool operator==(const Grid& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

private:
  int n_;
  double length_;
  std::vector<double> xi_;
};

/// Validating factory: n must be even and at least 4, L positive.
Grid make_grid(int n, double length);

/// Calls f(m, i, j, k) for every mode in storage order.
template <class F>
void for_each_mode(const Grid& grid, F&& f) {
  const int n = grid.n();
  std::size_t m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k, ++m) f(m, i, j, k);
}

}  // namespace visco
