#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "visco/field.hpp"

namespace visco {

// Binary snapshot layout, all values little-endian:
//   uint64  n
//   float64 L
//   uint64  component count C
//   n^3 * C * (float64 re, float64 im)
// Modes follow storage order (row-major over FFT-ordered axis indices i, j, k);
// the C components of one mode are contiguous. A ViscoState is written with
// C = 12: u_0..u_2 followed by E_00, E_01, ..., E_22.

struct RawSnapshot {
  Grid grid;
  std::vector<std::vector<Complex>> components;
};

void write_snapshot(std::ostream& os, const Grid& grid,
                    const std::vector<const std::vector<Complex>*>& components);
RawSnapshot read_snapshot(std::istream& is);

template <std::size_t N>
void write_field(std::ostream& os, const SpectralField<N>& f) {
  std::vector<const std::vector<Complex>*> comps;
  for (const auto& c : f.c) comps.push_back(&c);
  write_snapshot(os, f.grid, comps);
}

template <std::size_t N>
SpectralField<N> read_field(std::istream& is) {
  RawSnapshot raw = read_snapshot(is);
  if (raw.components.size() != N) throw std::runtime_error("snapshot: unexpected component count");
  SpectralField<N> f(raw.grid);
  for (std::size_t a = 0; a < N; ++a) f.c[a] = std::move(raw.components[a]);
  return f;
}

void write_state(std::ostream& os, const ViscoState& s);
ViscoState read_state(std::istream& is);
void save_state(const std::filesystem::path& path, const ViscoState& s);
ViscoState load_state(const std::filesystem::path& path);

/// CSV dump for small grids: "kx,ky,kz,component,re,im" with integer wavenumbers.
void write_csv(std::ostream& os, const Grid& grid,
               const std::vector<const std::vector<Complex>*>& components);

}  // namespace visco
