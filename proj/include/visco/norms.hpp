#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "visco/fft.hpp"
#include "visco/field.hpp"

namespace visco {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// (sum_x |f(x)|^p (L/n)^3)^{1/p}, |.| the Euclidean (Frobenius) magnitude over
/// components; p = infinity is the collocation maximum.
template <std::size_t N>
double lp_norm_grid(const PhysicalField<N>& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_grid: p must be >= 1");
  const std::size_t size = f.grid.size();
  double acc = 0.0;
  for (std::size_t m = 0; m < size; ++m) {
    double mag2 = 0.0;
    for (std::size_t a = 0; a < N; ++a) mag2 += f.c[a][m] * f.c[a][m];
    const double mag = std::sqrt(mag2);
    if (std::isinf(p))
      acc = std::max(acc, mag);
    else
      acc += std::pow(mag, p);
  }
  if (std::isinf(p)) return acc;
  return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

template <std::size_t N>
double lp_norm_grid(const SpectralField<N>& f, double p) {
  return lp_norm_grid(to_physical(f), p);
}

/// Parseval weight turning sum_k |F(k)|^2 into the box integral of |f|^2.
inline double parseval_weight(const Grid& g) {
  const double n3 = static_cast<double>(g.size());
  return g.cell_volume() / n3;
}

/// sqrt(weight * sum_k w(|xi|) |F(k)|^2) over all components.
template <std::size_t N, class W>
double weighted_l2(const SpectralField<N>& f, W&& weight) {
  double acc = 0.0;
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    const double w = weight(std::sqrt(f.grid.xi2(i, j, k)));
    if (w == 0.0) return;
    double s = 0.0;
    for (std::size_t a = 0; a < N; ++a) s += std::norm(f.c[a][m]);
    acc += w * s;
  });
  return std::sqrt(parseval_weight(f.grid) * acc);
}

template <std::size_t N>
double l2_norm(const SpectralField<N>& f) {
  return weighted_l2(f, [](double) { return 1.0; });
}

enum class NormBase { L2, H };

/// ||grad^l f||_{L2} realized as || |xi|^l f_hat ||; with NormBase::H the sum
/// over l' = 0..l of the squared seminorms, square-rooted (the H^l norm).
template <std::size_t N>
double derivative_norm(const SpectralField<N>& f, int ell, NormBase base = NormBase::L2) {
  if (ell < 0) throw std::invalid_argument("derivative_norm: order must be >= 0");
  if (base == NormBase::L2)
    return weighted_l2(f, [ell](double rho) { return std::pow(rho, 2 * ell); });
  return weighted_l2(f, [ell](double rho) {
    double s = 0.0;
    for (int l = 0; l <= ell; ++l) s += std::pow(rho, 2 * l);
    return s;
  });
}

/// || |xi|^{-s} f_hat || over xi != 0; s in [0, 3/2).
template <std::size_t N>
double negative_sobolev_norm(const SpectralField<N>& f, double s) {
  if (!(s >= 0.0 && s < 1.5)) throw std::invalid_argument("negative_sobolev_norm: s must lie in [0, 3/2)");
  return weighted_l2(f, [s](double rho) { return rho == 0.0 ? 0.0 : std::pow(rho, -2.0 * s); });
}

/// Dyadic shell index l with 2^l <= rho < 2^{l+1}.
inline int dyadic_shell(double rho) { return static_cast<int>(std::floor(std::log2(rho))); }

/// sup_l 2^{-s l} ||Delta_l f||_{L2} over sharp dyadic shells 2^l <= |xi| < 2^{l+1};
/// a proxy for the homogeneous Besov norm B^{-s}_{2,inf}. s in (0, 3/2].
template <std::size_t N>
double besov_norm(const SpectralField<N>& f, double s) {
  if (!(s > 0.0 && s <= 1.5)) throw std::invalid_argument("besov_norm: s must lie in (0, 3/2]");
  std::map<int, double> shells;
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    const double rho = std::sqrt(f.grid.xi2(i, j, k));
    if (rho == 0.0) return;
    double mass = 0.0;
    for (std::size_t a = 0; a < N; ++a) mass += std::norm(f.c[a][m]);
    shells[dyadic_shell(rho)] += mass;
  });
  const double w = parseval_weight(f.grid);
  double best = 0.0;
  for (const auto& [l, mass] : shells) best = std::max(best, std::pow(2.0, -s * l) * std::sqrt(w * mass));
  return best;
}

/// Fraction of the L2 mass carried by modes with some |k_i| > n/3.
template <std::size_t N>
double top_band_fraction(const SpectralField<N>& f) {
  const int n = f.grid.n();
  double top = 0.0, total = 0.0;
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    double mass = 0.0;
    for (std::size_t a = 0; a < N; ++a) mass += std::norm(f.c[a][m]);
    total += mass;
    if (3 * std::abs(f.grid.wavenumber(i)) > n || 3 * std::abs(f.grid.wavenumber(j)) > n ||
        3 * std::abs(f.grid.wavenumber(k)) > n)
      top += mass;
  });
  return total > 0.0 ? top / total : 0.0;
}

/// Collocation maxima are flagged as under-resolved above this top-band fraction.
inline constexpr double kUnderResolvedFraction = 0.01;

/// sum_{l=k1}^{k2} ||grad^l (u, E)||^2 / scale.
double sobolev_sum(const ViscoState& s, int k1, int k2, double scale = 1.0);

/// Skew cross term int grad^{l-1}(grad u - grad u^T) . grad^{l+1}(E^T - E) dx, in the
/// integrated-by-parts Fourier form -sum |xi|^{2l} Re <W_hat, Z_hat> with
/// W = grad u - (grad u)^T and Z = E^T - E (the pair grad^{l-1}, grad^{l+1} contracts
/// to one Laplacian). At l = 0 the grad^{-1} factor is |xi|^{-1} on xi != 0.
double skew_cross_term(const ViscoState& s, int ell);

/// The temporal energy functional
///   D = sum_{l=k1}^{k2} ||grad^l (u,E)||^2 / scale + (delta / scale) sum_{l=k1}^{k2-1} cross_l.
/// Requires 0 <= k1 <= k2 - 1.
double energy_functional(const ViscoState& s, int k1, int k2, double delta, double scale = 1.0);

/// Descriptor -> value map of one diagnostic sample.
struct NormRecord {
  double t = 0.0;
  std::map<std::string, double> values;
};

}  // namespace visco
