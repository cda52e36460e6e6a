#include "visco/semigroup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace visco {
namespace {

// 2 - mu|xi| and 2 + mu|xi| separately, so the sign and size of 4 - mu^2|xi|^2
// survive near the confluent radius.
double oscillation_factor(double xi2, double mu) {
  const double s = mu * std::sqrt(xi2);
  return (2.0 - s) * (2.0 + s);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376375, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550686, 0.1826034150449236, 0.1691565193950026, 0.1495959888165768,
    0.1246289712555340, 0.0951585116824926, 0.0622535239386477, 0.0271524594117540};

struct Moments {
  std::array<double, 3> i0{};  // int A, int B, int C
  std::array<double, 3> i1{};  // int s A, int s B, int s C
};

Moments moments_by_quadrature(double xi2, double mu, double h) {
  Moments mo;
  constexpr int pieces = 4;
  const double w = h / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double mid = (p + 0.5) * w;
    for (std::size_t q = 0; q < kGlNodes.size(); ++q)
      for (double sign : {-1.0, 1.0}) {
        const double s = mid + sign * 0.5 * w * kGlNodes[q];
        const double wt = 0.5 * w * kGlWeights[q];
        const Amplitudes amp = amplitudes(xi2, mu, s);
        const std::array<double, 3> f = {amp.A, amp.B, amp.C};
        for (int k = 0; k < 3; ++k) {
          mo.i0[k] += wt * f[k];
          mo.i1[k] += wt * s * f[k];
        }
      }
  }
  return mo;
}

}  // namespace

EigenPair eigenpair(double xi2, double mu) {
  if (xi2 < 0.0 || !(mu > 0.0)) throw std::invalid_argument("eigenpair: need |xi|^2 >= 0, mu > 0");
  EigenPair ep;
  ep.discriminant = xi2 * (mu * mu * xi2 - 4.0);
  const double a = 0.5 * mu * xi2;
  const double d = oscillation_factor(xi2, mu);
  if (xi2 == 0.0) return ep;
  if (d > 0.0) {
    const double b = 0.5 * std::sqrt(xi2) * std::sqrt(d);
    ep.lambda1 = {-a, b};
    ep.lambda2 = {-a, -b};
  } else if (d < 0.0) {
    const double beta = 0.5 * std::sqrt(xi2) * std::sqrt(-d);
    const double l2 = -a - beta;
    ep.lambda1 = xi2 / l2;  // product of the roots is |xi|^2
    ep.lambda2 = l2;
  } else {
    ep.lambda1 = ep.lambda2 = -a;
  }
  return ep;
}

Amplitudes amplitudes(double xi2, double mu, double t) {
  if (t < 0.0) throw std::invalid_argument("amplitudes: t must be non-negative");
  Amplitudes out;
  if (xi2 == 0.0) {
    out.A = t;
    out.confluent = true;
    return out;
  }
  const double a = 0.5 * mu * xi2;
  const double d = oscillation_factor(xi2, mu);
  const double gap = std::sqrt(xi2) * std::sqrt(std::abs(d));  // |l1 - l2|
  const EigenPair ep = eigenpair(xi2, mu);
  if (gap < kConfluentThreshold * std::max(1.0, std::abs(ep.lambda1))) {
    const double e = std::exp(-a * t);
    out.A = t * e;
    out.B = (1.0 - a * t) * e;
    out.C = (1.0 + a * t) * e;
    out.confluent = true;
    return out;
  }
  if (d > 0.0) {
    const double b = 0.5 * gap;
    const double e = std::exp(-a * t);
    const double sinc = std::sin(b * t) / b;
    const double cosine = std::cos(b * t);
    out.A = e * sinc;
    out.B = e * (cosine - a * sinc);
    out.C = e * (cosine + a * sinc);
    out.b = b;
    return out;
  }
  const double l1 = ep.lambda1.real();
  const double l2 = ep.lambda2.real();
  const double e2 = std::exp(l2 * t);
  // e^{l1 t} - e^{l2 t} = e^{l2 t} expm1(gap t) avoids cancellation for small gap*t.
  out.A = gap * t < 1.0 ? e2 * std::expm1(gap * t) / gap : (std::exp(l1 * t) - e2) / gap;
  out.B = l1 * out.A + e2;
  out.C = -l2 * out.A + e2;
  return out;
}

double wave_form_B(double xi2, double mu, double t) {
  if (!(mu * mu * xi2 < 4.0)) throw std::invalid_argument("wave_form_B: outside the oscillatory regime");
  const double half = 0.5 * mu * xi2;
  const double b = std::sqrt(xi2) * std::sqrt(4.0 - mu * mu * xi2) / 2.0;
  const double sinc = b == 0.0 ? t : std::sin(b * t) / b;
  return std::exp(-half * t) * (std::cos(b * t) - half * sinc);
}

void apply_block(const Eigen::Vector3d& xi, const BlockWeights& w, Eigen::Vector3cd& u,
                 Eigen::Matrix3cd& E) {
  const double q = xi.squaredNorm();
  if (q == 0.0) {
    u *= w.b;
    E *= w.one;
    return;
  }
  const Complex I{0.0, 1.0};
  const Eigen::Vector3cd xc = xi.cast<Complex>();
  const Eigen::Vector3cd Ex = E * xc;
  const Eigen::Vector3cd PEx = Ex - xc * (xc.dot(Ex) / q);
  const Eigen::Matrix3cd M = PEx * xc.transpose() / q;
  const Eigen::Vector3cd u0 = u;
  u = w.b * u0 + (w.a * I) * PEx;
  E = (w.a * I) * (u0 * xc.transpose()) + w.c * M + w.one * (E - M);
}

DuhamelWeights duhamel_weights(double xi2, double mu, double h) {
  if (h < 0.0) throw std::invalid_argument("duhamel_weights: negative step");
  Moments mo;
  if (xi2 == 0.0) {
    mo.i0 = {0.5 * h * h, h, h};
    mo.i1 = {h * h * h / 3.0, 0.5 * h * h, 0.5 * h * h};
  } else {
    const Amplitudes end = amplitudes(xi2, mu, h);
    const double omc = 1.0 - end.C;
    if (omc < 1e-3) {
      // Slow modes: the closed forms below cancel; integrate the smooth amplitudes directly.
      mo = moments_by_quadrature(xi2, mu, h);
    } else {
      const double q = xi2;
      mo.i0[0] = omc / q;
      mo.i0[1] = end.A;
      mo.i0[2] = end.A + mu * omc;
      mo.i1[0] = (-h * end.C + end.A + mu * omc) / q;
      mo.i1[1] = h * end.A - omc / q;
      mo.i1[2] = mo.i1[1] + mu * q * mo.i1[0];
    }
  }
  DuhamelWeights dw;
  dw.phi1 = {mo.i0[0], mo.i0[1], mo.i0[2], h};
  if (h > 0.0)
    dw.phi2 = {mo.i0[0] - mo.i1[0] / h, mo.i0[1] - mo.i1[1] / h, mo.i0[2] - mo.i1[2] / h, 0.5 * h};
  else
    dw.phi2 = {0.0, 0.0, 0.0, 0.0};
  return dw;
}

double relative_divergence(const SpectralVectorField& u) {
  const Grid& g = u.grid;
  double worst = 0.0, scale = 0.0;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    const double norm = xi.norm();
    const Eigen::Vector3cd v = vector_at(u, m);
    scale = std::max(scale, v.norm());
    if (norm == 0.0) return;
    const Complex dot = xi(0) * v(0) + xi(1) * v(1) + xi(2) * v(2);
    worst = std::max(worst, std::abs(dot) / norm);
  });
  return scale > 0.0 ? worst / scale : 0.0;
}

ViscoState propagate_exact(const ViscoState& s, double dt, double mu, double divergence_tolerance) {
  if (dt < 0.0) throw std::invalid_argument("propagate_exact: negative time step");
  if (!(mu > 0.0)) throw std::invalid_argument("propagate_exact: viscosity must be positive");
  const double div = relative_divergence(s.u);
  if (div > divergence_tolerance)
    throw std::invalid_argument("propagate_exact: velocity is not divergence-free (relative residual " +
                                std::to_string(div) + ")");
  ViscoState out = s;
  out.t = s.t + dt;
  if (dt == 0.0) return out;
  const Grid& g = s.grid();
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    const double q = xi.squaredNorm();
    if (q == 0.0) return;
    const Amplitudes amp = amplitudes(q, mu, dt);
    Eigen::Vector3cd u = vector_at(s.u, m);
    Eigen::Matrix3cd E = tensor_at(s.E, m);
    apply_block(xi, {amp.A, amp.B, amp.C, 1.0}, u, E);
    set_vector(out.u, m, u);
    set_tensor(out.E, m, E);
  });
  return out;
}

}  // namespace visco
