#include "visco/oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "visco/operators.hpp"

namespace visco::oracle {
namespace {

ModeState mode_rhs(const Eigen::Vector3d& xi, double mu, const ModeState& s) {
  const Complex I{0.0, 1.0};
  const double q = xi.squaredNorm();
  const Eigen::Vector3cd x = xi.cast<Complex>();
  Eigen::Vector3cd Ex = I * (s.E * x);
  if (q > 0.0) Ex -= x * (x.dot(Ex) / q);
  ModeState d;
  d.u = -mu * q * s.u + Ex;
  d.E = I * s.u * x.transpose();
  return d;
}

struct Term {
  Eigen::Vector3i k;
  Complex value;
};

// Nonzero entries of one spectral component, with signed integer wavevectors.
std::vector<Term> sparse(const Grid& g, const std::vector<Complex>& c) {
  std::vector<Term> out;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    if (c[m] != Complex{}) out.push_back({{g.wavenumber(i), g.wavenumber(j), g.wavenumber(k)}, c[m]});
  });
  return out;
}

std::size_t storage_index(const Grid& g, const Eigen::Vector3i& k) {
  const int n = g.n();
  auto wrap = [n](int v) { return v < 0 ? v + n : v; };
  return g.index(wrap(k(0)), wrap(k(1)), wrap(k(2)));
}

bool in_band(const Grid& g, const Eigen::Vector3i& k) {
  return 3 * std::abs(k(0)) <= g.n() && 3 * std::abs(k(1)) <= g.n() && 3 * std::abs(k(2)) <= g.n();
}

// out += (1/n^3) (f * g) restricted to the band; DFT coefficients multiply this way.
void convolve_add(const Grid& g, const std::vector<Term>& f, const std::vector<Term>& h, double sign,
                  std::vector<Complex>& out) {
  const double scale = sign / static_cast<double>(g.size());
  for (const Term& a : f)
    for (const Term& b : h) {
      const Eigen::Vector3i k = a.k + b.k;
      if (in_band(g, k)) out[storage_index(g, k)] += scale * a.value * b.value;
    }
}

}  // namespace

ModeState integrate_mode(const Eigen::Vector3d& xi, double mu, ModeState s, double t, double h) {
  if (t <= 0.0) return s;
  const long steps = static_cast<long>(std::ceil(t / h - 1e-9));
  const double dt = t / static_cast<double>(steps);
  auto axpy = [](const ModeState& a, double c, const ModeState& b) {
    return ModeState{a.u + c * b.u, a.E + c * b.E};
  };
  for (long n = 0; n < steps; ++n) {
    const ModeState k1 = mode_rhs(xi, mu, s);
    const ModeState k2 = mode_rhs(xi, mu, axpy(s, 0.5 * dt, k1));
    const ModeState k3 = mode_rhs(xi, mu, axpy(s, 0.5 * dt, k2));
    const ModeState k4 = mode_rhs(xi, mu, axpy(s, dt, k3));
    s.u += dt / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    s.E += dt / 6.0 * (k1.E + 2.0 * k2.E + 2.0 * k3.E + k4.E);
  }
  return s;
}

std::pair<double, double> integrate_damped_wave(double xi2, double mu, double d0, double d1, double t,
                                                double h) {
  if (t <= 0.0) return {d0, d1};
  const long steps = static_cast<long>(std::ceil(t / h - 1e-9));
  const double dt = t / static_cast<double>(steps);
  auto f = [&](double d, double v) { return std::pair{v, -mu * xi2 * v - xi2 * d}; };
  double d = d0, v = d1;
  for (long n = 0; n < steps; ++n) {
    const auto [a1, b1] = f(d, v);
    const auto [a2, b2] = f(d + 0.5 * dt * a1, v + 0.5 * dt * b1);
    const auto [a3, b3] = f(d + 0.5 * dt * a2, v + 0.5 * dt * b2);
    const auto [a4, b4] = f(d + dt * a3, v + dt * b3);
    d += dt / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
    v += dt / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  return {d, v};
}

NonlinearTerms convolution_nonlinear(const ViscoState& s) {
  const Grid& g = s.grid();
  const SpectralVectorField u = dealias(s.u);
  const SpectralTensorField E = dealias(s.E);
  const Complex I{0.0, 1.0};

  // Sparse copies of u_i, E_ij and the derivatives d_l u_i, d_l E_ij.
  std::array<std::vector<Term>, 3> us;
  std::array<std::vector<Term>, 9> Es;
  std::array<std::array<std::vector<Term>, 3>, 3> dus;
  std::array<std::array<std::vector<Term>, 9>, 3> dEs;
  for (int a = 0; a < 3; ++a) us[a] = sparse(g, u.c[a]);
  for (int a = 0; a < 9; ++a) Es[a] = sparse(g, E.c[a]);
  auto derive = [&](std::vector<Term> f, int l) {
    for (Term& t : f) t.value *= I * (2.0 * std::numbers::pi * t.k(l) / g.length());
    return f;
  };
  for (int l = 0; l < 3; ++l) {
    for (int a = 0; a < 3; ++a) dus[l][a] = derive(us[a], l);
    for (int a = 0; a < 9; ++a) dEs[l][a] = derive(Es[a], l);
  }

  // G = E E^T, then (div G)_i = i xi_j G_ij on the band.
  SpectralTensorField G(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) convolve_add(g, Es[tix(i, k)], Es[tix(j, k)], 1.0, G.c[tix(i, j)]);
  SpectralVectorField n1 = div(G);
  for (int i = 0; i < 3; ++i)
    for (int l = 0; l < 3; ++l) convolve_add(g, us[l], dus[l][i], -1.0, n1.c[i]);

  SpectralTensorField n2(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < 3; ++l) {
        convolve_add(g, dus[l][i], Es[tix(l, j)], 1.0, n2.c[tix(i, j)]);
        convolve_add(g, us[l], dEs[l][tix(i, j)], -1.0, n2.c[tix(i, j)]);
      }
  return {leray_project(dealias(std::move(n1))), dealias(std::move(n2))};
}

DuhamelWeights trapezoid_duhamel(double xi2, double mu, double h, int panels) {
  std::array<double, 3> i0{}, i2{};
  const double w = h / panels;
  for (int p = 0; p <= panels; ++p) {
    const double s = p * w;
    const double wt = (p == 0 || p == panels) ? 0.5 * w : w;
    const Amplitudes a = amplitudes(xi2, mu, s);
    const std::array<double, 3> f = {a.A, a.B, a.C};
    for (int k = 0; k < 3; ++k) {
      i0[k] += wt * f[k];
      i2[k] += wt * f[k] * (h - s) / h;
    }
  }
  DuhamelWeights d;
  d.phi1 = {i0[0], i0[1], i0[2], h};
  d.phi2 = {i2[0], i2[1], i2[2], 0.5 * h};
  return d;
}

ViscoState random_state(const Grid& g, std::uint64_t seed, double k0) {
  SpectralVectorField u = leray_project(random_field<3>(g, seed, k0));
  for (auto& comp : u.c) comp[0] = Complex{};
  return ViscoState(std::move(u), random_field<9>(g, seed + 1, k0), 0.0);
}

}  // namespace visco::oracle
