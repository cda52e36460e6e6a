#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "visco/fft.hpp"
#include "visco/operators.hpp"

#include "visco/solver.hpp"

namespace visco::oracle {

// Independent reference computations used by the acceptance checks. None of them
// share code with the closed-form propagator or the pseudo-spectral products.

/// Per-mode linear system u' = -mu|xi|^2 u + P(i E xi), E' = i u xi^T integrated
/// by classical RK4 with a fixed step.
struct ModeState {
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero();
  Eigen::Matrix3cd E = Eigen::Matrix3cd::Zero();
};

ModeState integrate_mode(const Eigen::Vector3d& xi, double mu, ModeState s, double t, double h = 1e-4);

/// Damped-wave ODE d'' + mu|xi|^2 d' + |xi|^2 d = 0 with d(0) = d0, d'(0) = d1,
/// integrated by RK4. Returns (d(t), d'(t)).
std::pair<double, double> integrate_damped_wave(double xi2, double mu, double d0, double d1, double t,
                                                double h = 1e-4);

/// N1, N2 by direct convolution of the Fourier series, for sparse inputs: every
/// pair of nonzero modes is multiplied and the result is kept if the sum mode lies
/// inside the dealiased band. Inputs are dealiased first.
NonlinearTerms convolution_nonlinear(const ViscoState& s);

/// int_0^h K(s) ds and int_0^h K(s)(h - s)/h ds evaluated by composite trapezoid
/// on the closed-form amplitudes with the given number of panels.
DuhamelWeights trapezoid_duhamel(double xi2, double mu, double h, int panels);

/// Real random field: seeded white noise on the grid, smoothed by exp(-|xi|^2 / k0^2)
/// and dealiased. Test-data generator.
template <std::size_t N>
SpectralField<N> random_field(const Grid& g, std::uint64_t seed, double k0 = 4.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  PhysicalField<N> f(g);
  for (auto& comp : f.c)
    for (auto& v : comp) v = normal(rng);
  return dealias(apply_radial(to_spectral(f), [k0](double rho) { return std::exp(-rho * rho / (k0 * k0)); }));
}

/// Random state with divergence-free u and unconstrained E.
ViscoState random_state(const Grid& g, std::uint64_t seed, double k0 = 4.0);

}  // namespace visco::oracle
