#include "visco/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "visco/fft.hpp"
#include "visco/norms.hpp"
#include "visco/operators.hpp"

namespace visco {
namespace {

// Projected, zero-mean, dealiased and rescaled to max_x |u| = amplitude.
SpectralVectorField finish_velocity(SpectralVectorField u, double amplitude) {
  u = dealias(leray_project(u));
  for (auto& comp : u.c) comp[0] = Complex{};
  const double sup = lp_norm_grid(u, kInf);
  if (sup == 0.0) return u;
  u *= amplitude / sup;
  return u;
}

SpectralVectorField taylor_green(const Grid& g, int mode) {
  PhysicalVectorField u(g);
  const double k = 2.0 * std::numbers::pi * mode / g.length();
  const double h = g.spacing();
  const int n = g.n();
  std::size_t m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++m) {
        const double x = k * i * h, y = k * j * h, z = k * l * h;
        u.c[0][m] = std::sin(x) * std::cos(y) * std::cos(z);
        u.c[1][m] = -std::cos(x) * std::sin(y) * std::cos(z);
      }
  return to_spectral(u);
}

SpectralVectorField random_band(const Grid& g, std::uint64_t seed, double k0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalVectorField noise(g);
  for (auto& comp : noise.c)
    for (auto& v : comp) v = normal(rng);
  SpectralVectorField u = to_spectral(noise);
  return apply_radial(u, [k0](double rho) {
    const double r2 = rho * rho;
    return r2 * std::exp(-r2 / (k0 * k0));
  });
}

SpectralVectorField gaussian_bump(const Grid& g, double width) {
  PhysicalVectorField u(g);
  const double h = g.spacing(), c = 0.5 * g.length();
  const int n = g.n();
  std::size_t m = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l, ++m) {
        const double dx = i * h - c, dy = j * h - c, dz = l * h - c;
        u.c[0][m] = std::exp(-(dx * dx + dy * dy + dz * dz) / (2.0 * width * width));
      }
  return to_spectral(u);
}

// dE/dtau = -v.grad E + grad v + (grad v) E, with v and grad v given on the grid.
SpectralTensorField transport_rhs(const SpectralTensorField& E, const PhysicalVectorField& v,
                                  const PhysicalTensorField& gv) {
  const Grid& g = E.grid;
  const PhysicalTensorField Ep = to_physical(E);
  PhysicalTensorField out(g);
  for (int l = 0; l < 3; ++l) {
    SpectralTensorField dE(g);
    for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
      const Complex d{0.0, g.derivative_wavevector(i, j, k)(l)};
      for (std::size_t a = 0; a < 9; ++a) dE.c[a][m] = d * E.c[a][m];
    });
    const PhysicalTensorField dEp = to_physical(dE);
    for (std::size_t a = 0; a < 9; ++a)
      for (std::size_t x = 0; x < g.size(); ++x) out.c[a][x] -= v.c[l][x] * dEp.c[a][x];
  }
  for (std::size_t x = 0; x < g.size(); ++x)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = gv.c[tix(i, j)][x];
        for (int l = 0; l < 3; ++l) acc += gv.c[tix(i, l)][x] * Ep.c[tix(l, j)][x];
        out.c[tix(i, j)][x] += acc;
      }
  return dealias(to_spectral(out));
}

}  // namespace

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::Zero: return "zero";
    case InitialKind::TaylorGreen: return "taylor-green";
    case InitialKind::Random: return "random";
    case InitialKind::GaussianBump: return "gaussian-bump";
  }
  return "?";
}

InitialKind parse_initial_kind(const std::string& s) {
  if (s == "zero") return InitialKind::Zero;
  if (s == "taylor-green") return InitialKind::TaylorGreen;
  if (s == "random") return InitialKind::Random;
  if (s == "gaussian-bump") return InitialKind::GaussianBump;
  throw std::invalid_argument("unknown initial data kind '" + s + "'");
}

SpectralVectorField initial_velocity(const Grid& grid, const InitialDataSpec& spec) {
  if (spec.amplitude < 0.0) throw std::invalid_argument("initial data: negative amplitude");
  if (spec.kind == InitialKind::Zero || spec.amplitude == 0.0) return SpectralVectorField(grid);
  switch (spec.kind) {
    case InitialKind::TaylorGreen:
      if (spec.mode < 1 || 3 * spec.mode > grid.n())
        throw std::invalid_argument("initial data: Taylor-Green mode outside the dealiased band");
      return finish_velocity(taylor_green(grid, spec.mode), spec.amplitude);
    case InitialKind::Random:
      if (!(spec.k0 > 0.0)) throw std::invalid_argument("initial data: k0 must be positive");
      return finish_velocity(random_band(grid, spec.seed, spec.k0), spec.amplitude);
    case InitialKind::GaussianBump:
      if (!(spec.width > 0.0)) throw std::invalid_argument("initial data: width must be positive");
      return finish_velocity(gaussian_bump(grid, spec.width), spec.amplitude);
    case InitialKind::Zero: break;
  }
  return SpectralVectorField(grid);
}

SpectralTensorField transported_strain(const SpectralVectorField& v, double s, double max_step) {
  const Grid& g = v.grid;
  SpectralTensorField E(g);
  if (s < 0.0) throw std::invalid_argument("transport: negative flow time");
  if (s == 0.0) return E;
  if (!(max_step > 0.0)) throw std::invalid_argument("transport: step must be positive");
  const PhysicalVectorField vp = to_physical(v);
  const PhysicalTensorField gv = to_physical(grad(v));
  const auto steps = static_cast<long>(std::ceil(s / max_step - 1e-12));
  const double h = s / static_cast<double>(steps);
  for (long n = 0; n < steps; ++n) {
    const SpectralTensorField k1 = transport_rhs(E, vp, gv);
    const SpectralTensorField k2 = transport_rhs(E + (0.5 * h) * k1, vp, gv);
    const SpectralTensorField k3 = transport_rhs(E + (0.5 * h) * k2, vp, gv);
    const SpectralTensorField k4 = transport_rhs(E + h * k3, vp, gv);
    E.axpy(h / 6.0, k1);
    E.axpy(h / 3.0, k2);
    E.axpy(h / 3.0, k3);
    E.axpy(h / 6.0, k4);
  }
  return E;
}

ViscoState generate_initial_data(const Grid& grid, const InitialDataSpec& spec) {
  SpectralVectorField u = initial_velocity(grid, spec);
  SpectralTensorField E = transported_strain(u, spec.flow_time, spec.transport_step);
  ViscoState state(std::move(u), std::move(E), 0.0);
  const ConstraintResiduals r = constraint_residuals(state);
  if (r.max_strain_residual() > spec.tolerance) {
    std::ostringstream msg;
    msg << "initial data rejected: div E^T " << r.div_transpose << ", det " << r.determinant
        << ", compatibility " << r.compatibility << " (tolerance " << spec.tolerance << ")";
    throw InitialDataRejected(msg.str(), r);
  }
  return state;
}

}  // namespace visco
