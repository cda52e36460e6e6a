#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "visco/grid.hpp"

namespace visco {

/// Row-major index of tensor component (i, j).
constexpr std::size_t tix(int i, int j) { return static_cast<std::size_t>(3 * i + j); }

inline void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw std::invalid_argument("field grid mismatch");
}

/// Fourier coefficients of an N-component real field, one array per component.
///
/// Coefficients are the plain (unscaled) forward DFT of the grid samples:
///   F(k) = sum_x f(x) exp(-i xi.x),   f(x) = n^-3 sum_k F(k) exp(i xi.x).
/// Physical integrals therefore carry the weight (L/n)^3 / n^3 per mode.
template <std::size_t N>
struct SpectralField {
  Grid grid;
  std::array<std::vector<Complex>, N> c;

  explicit SpectralField(const Grid& g) : grid(g) {
    for (auto& comp : c) comp.assign(g.size(), Complex{});
  }

  static constexpr std::size_t components = N;

  SpectralField& operator+=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t m = 0; m < c[a].size(); ++m) c[a][m] += o.c[a][m];
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t m = 0; m < c[a].size(); ++m) c[a][m] -= o.c[a][m];
    return *this;
  }
  SpectralField& operator*=(double s) {
    for (auto& comp : c)
      for (auto& v : comp) v *= s;
    return *this;
  }
  /// this += s * o
  void axpy(double s, const SpectralField& o) {
    require_same_grid(grid, o.grid);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t m = 0; m < c[a].size(); ++m) c[a][m] += s * o.c[a][m];
  }
};

template <std::size_t N>
SpectralField<N> operator+(SpectralField<N> a, const SpectralField<N>& b) { return a += b; }
template <std::size_t N>
SpectralField<N> operator-(SpectralField<N> a, const SpectralField<N>& b) { return a -= b; }
template <std::size_t N>
SpectralField<N> operator*(double s, SpectralField<N> a) { return a *= s; }

using SpectralScalarField = SpectralField<1>;
using SpectralVectorField = SpectralField<3>;
using SpectralTensorField = SpectralField<9>;

/// Grid samples of an N-component real field at x = (i, j, k) * L / n.
template <std::size_t N>
struct PhysicalField {
  Grid grid;
  std::array<std::vector<double>, N> c;

  explicit PhysicalField(const Grid& g) : grid(g) {
    for (auto& comp : c) comp.assign(g.size(), 0.0);
  }
  static constexpr std::size_t components = N;
};

using PhysicalScalarField = PhysicalField<1>;
using PhysicalVectorField = PhysicalField<3>;
using PhysicalTensorField = PhysicalField<9>;

inline Eigen::Vector3cd vector_at(const SpectralVectorField& f, std::size_t m) {
  return {f.c[0][m], f.c[1][m], f.c[2][m]};
}
inline void set_vector(SpectralVectorField& f, std::size_t m, const Eigen::Vector3cd& v) {
  for (int a = 0; a < 3; ++a) f.c[a][m] = v(a);
}
inline Eigen::Matrix3cd tensor_at(const SpectralTensorField& f, std::size_t m) {
  Eigen::Matrix3cd t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = f.c[tix(i, j)][m];
  return t;
}
inline void set_tensor(SpectralTensorField& f, std::size_t m, const Eigen::Matrix3cd& t) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f.c[tix(i, j)][m] = t(i, j);
}

/// max_k |F(-k) - conj F(k)| / max_k |F(k)| over all components; 0 for a zero field.
/// Nyquist rows are compared with themselves, which forces them real.
template <std::size_t N>
double hermitian_defect(const SpectralField<N>& f) {
  const Grid& g = f.grid;
  double worst = 0.0, scale = 0.0;
  for (std::size_t a = 0; a < N; ++a) {
    const auto& v = f.c[a];
    for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
      const std::size_t mm = g.index(g.mirror(i), g.mirror(j), g.mirror(k));
      worst = std::max(worst, std::abs(v[mm] - std::conj(v[m])));
      scale = std::max(scale, std::abs(v[m]));
    });
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

/// Spectral state S = (u, E) of the viscoelastic system at time t.
struct ViscoState {
  SpectralVectorField u;
  SpectralTensorField E;
  double t = 0.0;

  explicit ViscoState(const Grid& g) : u(g), E(g) {}
  ViscoState(SpectralVectorField u_, SpectralTensorField E_, double t_ = 0.0)
      : u(std::move(u_)), E(std::move(E_)), t(t_) {
    require_same_grid(u.grid, E.grid);
  }
  const Grid& grid() const { return u.grid; }
};

}  // namespace visco
