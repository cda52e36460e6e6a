#pragma once

#include "visco/field.hpp"

namespace visco {

/// Roots of lambda^2 + mu |xi|^2 lambda + |xi|^2 = 0. lambda1 carries the + branch
/// of the square root of the discriminant mu^2 |xi|^4 - 4 |xi|^2.
struct EigenPair {
  Complex lambda1;
  Complex lambda2;
  double discriminant = 0.0;
};

EigenPair eigenpair(double xi2, double mu);

/// Scalar mode functions from which every block of the linear solution operator
/// is assembled:
///   A = (e^{l1 t} - e^{l2 t}) / (l1 - l2)
///   B = (l1 e^{l1 t} - l2 e^{l2 t}) / (l1 - l2)      (= dA/dt)
///   C = (l1 e^{l2 t} - l2 e^{l1 t}) / (l1 - l2)
/// All three are real for real |xi|, mu and t, so they are stored as doubles.
struct Amplitudes {
  double A = 0.0;
  double B = 1.0;
  double C = 1.0;
  /// Oscillation frequency |xi| sqrt(4 - mu^2 |xi|^2) / 2; zero outside the oscillatory regime.
  double b = 0.0;
  bool confluent = false;
};

/// |l1 - l2| below this fraction of max(1, |l1|) switches to the confluent limit
/// A = t e^{lt}, B = (1 + lt) e^{lt}, C = (1 - lt) e^{lt}, l = -mu |xi|^2 / 2.
inline constexpr double kConfluentThreshold = 1e-6;

Amplitudes amplitudes(double xi2, double mu, double t);

/// e^{-mu |xi|^2 t / 2} (cos(bt) - (mu/2) |xi|^2 sin(bt)/b), the damped-wave form of B.
/// Only defined in the oscillatory regime mu^2 |xi|^2 < 4; throws otherwise.
double wave_form_B(double xi2, double mu, double t);

/// Coefficients of one member of the linear block family acting on a mode:
///   u' = b u + a P(i E xi)
///   E' = i a u xi^T + c M + one (E - M),    M = P E xi xi^T / |xi|^2
/// with P = I - xi xi^T / |xi|^2. The exact propagator is (A, B, C, 1); time
/// integrals of the propagator use the integrated amplitudes.
struct BlockWeights {
  double a = 0.0;
  double b = 1.0;
  double c = 1.0;
  double one = 1.0;
};

/// Applies a block operator in place; xi is the derivative wavevector of the mode.
void apply_block(const Eigen::Vector3d& xi, const BlockWeights& w, Eigen::Vector3cd& u,
                 Eigen::Matrix3cd& E);

/// Weights of the integrated propagator over one step h:
///   phi1 = int_0^h K(s) ds,   phi2 = int_0^h K(s) (h - s) / h ds.
struct DuhamelWeights {
  BlockWeights phi1;
  BlockWeights phi2;
};

DuhamelWeights duhamel_weights(double xi2, double mu, double h);

/// Max over modes of |xi.u| / (|xi| max|u|), i.e. the divergence relative to the field scale.
double relative_divergence(const SpectralVectorField& u);

/// Exact linear evolution of (u, E) over dt. Rejects a velocity whose relative
/// divergence exceeds divergence_tolerance.
ViscoState propagate_exact(const ViscoState& s, double dt, double mu,
                           double divergence_tolerance = 1e-10);

}  // namespace visco
