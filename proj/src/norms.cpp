#include "visco/norms.hpp"

#include <stdexcept>

namespace visco {

double sobolev_sum(const ViscoState& s, int k1, int k2, double scale) {
  double total = 0.0;
  for (int l = k1; l <= k2; ++l) {
    const double nu = derivative_norm(s.u, l), ne = derivative_norm(s.E, l);
    total += nu * nu + ne * ne;
  }
  return total / scale;
}

double skew_cross_term(const ViscoState& s, int ell) {
  if (ell < 0) throw std::invalid_argument("skew_cross_term: order must be >= 0");
  const Grid& g = s.grid();
  const Complex I{0.0, 1.0};
  double acc = 0.0;
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    const double q = xi.squaredNorm();
    if (q == 0.0) return;
    double inner = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        const Complex w = I * xi(b) * s.u.c[a][m] - I * xi(a) * s.u.c[b][m];
        const Complex z = s.E.c[tix(b, a)][m] - s.E.c[tix(a, b)][m];
        inner += (w * std::conj(z)).real();
      }
    acc += std::pow(q, ell) * inner;
  });
  return -parseval_weight(g) * acc;
}

double energy_functional(const ViscoState& s, int k1, int k2, double delta, double scale) {
  if (k1 < 0 || k1 > k2 - 1) throw std::invalid_argument("energy_functional: need 0 <= k1 <= k2 - 1");
  if (!(scale > 0.0)) throw std::invalid_argument("energy_functional: scale must be positive");
  double d = sobolev_sum(s, k1, k2, scale);
  for (int l = k1; l <= k2 - 1; ++l) d += delta / scale * skew_cross_term(s, l);
  return d;
}

}  // namespace visco
