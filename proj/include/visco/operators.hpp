#pragma once

#include <cmath>
#include <utility>

#include "visco/cutoff.hpp"
#include "visco/field.hpp"

namespace visco {

// Differential and projection operators act mode by mode on spectral fields.
// Convention: (grad u)_ij = d_j u_i, (div E)_i = d_j E_ij, (div E^T)_i = d_j E_ji.
// Nyquist components of xi are treated as zero (see Grid).

/// (I - xi xi^T / |xi|^2) v per mode; the zero mode is left unchanged.
SpectralVectorField leray_project(const SpectralVectorField& v);

/// E xi xi^T / |xi|^2 per mode (right multiplication); the zero mode maps to 0.
SpectralTensorField q_project(const SpectralTensorField& E);

SpectralTensorField grad(const SpectralVectorField& u);
SpectralVectorField grad(const SpectralScalarField& f);
SpectralVectorField div(const SpectralTensorField& E);
SpectralVectorField div_transpose(const SpectralTensorField& E);
SpectralScalarField div(const SpectralVectorField& u);
SpectralVectorField curl(const SpectralVectorField& u);
SpectralTensorField transpose(const SpectralTensorField& E);

/// True if the mode survives the 2/3 rule (every |k_i| <= n/3).
inline bool dealias_keeps(const Grid& g, int i, int j, int k) {
  const int n = g.n();
  return 3 * std::abs(g.wavenumber(i)) <= n && 3 * std::abs(g.wavenumber(j)) <= n &&
         3 * std::abs(g.wavenumber(k)) <= n;
}

/// Zeroes every mode with some |k_i| > n/3 (this includes the Nyquist rows).
template <std::size_t N>
SpectralField<N> dealias(SpectralField<N> f) {
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    if (!dealias_keeps(f.grid, i, j, k))
      for (auto& comp : f.c) comp[m] = Complex{};
  });
  return f;
}

/// Multiplies every mode by weight(|xi|), using the raw lattice |xi|.
template <std::size_t N, class W>
SpectralField<N> apply_radial(SpectralField<N> f, W&& weight) {
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    const double w = weight(std::sqrt(f.grid.xi2(i, j, k)));
    for (auto& comp : f.c) comp[m] *= w;
  });
  return f;
}

/// (P1 f, Pinf f) with P1 the low-band multiplier and Pinf = f - P1 f exactly.
template <std::size_t N>
std::pair<SpectralField<N>, SpectralField<N>> split_low_high(const SpectralField<N>& f,
                                                             const CutoffProfile& cutoff) {
  SpectralField<N> low = apply_radial(f, [&](double rho) { return cutoff.low(rho); });
  SpectralField<N> high = f;
  high -= low;
  return {std::move(low), std::move(high)};
}

}  // namespace visco
