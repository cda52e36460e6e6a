#pragma once

#include <span>

#include "visco/field.hpp"

namespace visco {

/// Unscaled forward 3D DFT of real samples. Throws on a size mismatch.
void fft_forward(const Grid& grid, std::span<const double> in, std::span<Complex> out);

/// Inverse 3D DFT scaled by 1/n^3; the real part is returned. Throws on a size mismatch.
void fft_inverse(const Grid& grid, std::span<const Complex> in, std::span<double> out);

template <std::size_t N>
SpectralField<N> to_spectral(const PhysicalField<N>& f) {
  SpectralField<N> out(f.grid);
  for (std::size_t a = 0; a < N; ++a) fft_forward(f.grid, f.c[a], out.c[a]);
  return out;
}

template <std::size_t N>
PhysicalField<N> to_physical(const SpectralField<N>& f) {
  PhysicalField<N> out(f.grid);
  for (std::size_t a = 0; a < N; ++a) fft_inverse(f.grid, f.c[a], out.c[a]);
  return out;
}

/// Converts a transform of the symmetric continuum convention
/// (2*pi)^-3/2 * integral f(x) exp(-i xi.x) dx into the stored DFT coefficient
/// of the same function sampled on the torus, assuming f is negligible outside
/// the box: F(k) ~ (n/L)^3 * (2*pi)^3/2 * f_hat(xi_k).
double continuum_to_dft_factor(const Grid& grid);

}  // namespace visco
