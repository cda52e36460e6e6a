#include "visco/field_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace visco {
namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::big) return __builtin_bswap64(v);
  return v;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  v = to_le(v);
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw std::runtime_error("snapshot: truncated");
  return to_le(v);
}
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void write_snapshot(std::ostream& os, const Grid& grid,
                    const std::vector<const std::vector<Complex>*>& components) {
  for (const auto* c : components)
    if (c->size() != grid.size()) throw std::invalid_argument("snapshot: component size mismatch");
  put_u64(os, static_cast<std::uint64_t>(grid.n()));
  put_f64(os, grid.length());
  put_u64(os, components.size());
  for (std::size_t m = 0; m < grid.size(); ++m)
    for (const auto* c : components) {
      put_f64(os, (*c)[m].real());
      put_f64(os, (*c)[m].imag());
    }
  if (!os) throw std::runtime_error("snapshot: write failed");
}

RawSnapshot read_snapshot(std::istream& is) {
  const auto n = get_u64(is);
  const double length = get_f64(is);
  const auto count = get_u64(is);
  if (n > 4096 || count > 64) throw std::runtime_error("snapshot: implausible header");
  RawSnapshot raw{make_grid(static_cast<int>(n), length), {}};
  raw.components.assign(count, std::vector<Complex>(raw.grid.size()));
  for (std::size_t m = 0; m < raw.grid.size(); ++m)
    for (auto& c : raw.components) {
      const double re = get_f64(is);
      const double im = get_f64(is);
      c[m] = {re, im};
    }
  return raw;
}

void write_state(std::ostream& os, const ViscoState& s) {
  std::vector<const std::vector<Complex>*> comps;
  for (const auto& c : s.u.c) comps.push_back(&c);
  for (const auto& c : s.E.c) comps.push_back(&c);
  write_snapshot(os, s.grid(), comps);
}

ViscoState read_state(std::istream& is) {
  RawSnapshot raw = read_snapshot(is);
  if (raw.components.size() != 12) throw std::runtime_error("snapshot: state needs 12 components");
  ViscoState s(raw.grid);
  for (int a = 0; a < 3; ++a) s.u.c[a] = std::move(raw.components[a]);
  for (int a = 0; a < 9; ++a) s.E.c[a] = std::move(raw.components[3 + a]);
  return s;
}

void save_state(const std::filesystem::path& path, const ViscoState& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  write_state(os, s);
}

ViscoState load_state(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return read_state(is);
}

void write_csv(std::ostream& os, const Grid& grid,
               const std::vector<const std::vector<Complex>*>& components) {
  os << "# visco-field-csv v1 n=" << grid.n() << " L=" << grid.length() << '\n';
  os << "kx,ky,kz,component,re,im\n";
  os.precision(17);
  for_each_mode(grid, [&](std::size_t m, int i, int j, int k) {
    for (std::size_t a = 0; a < components.size(); ++a)
      os << grid.wavenumber(i) << ',' << grid.wavenumber(j) << ',' << grid.wavenumber(k) << ','
         << a << ',' << (*components[a])[m].real() << ',' << (*components[a])[m].imag() << '\n';
  });
}

}  // namespace visco
