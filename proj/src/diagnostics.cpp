#include "visco/diagnostics.hpp"

#include <algorithm>

#include "visco/fft.hpp"
#include "visco/operators.hpp"
#include "visco/semigroup.hpp"

namespace visco {
namespace {

// d_k E_ij as component 9 * k + tix(i, j).
std::array<std::vector<double>, 27> strain_gradient(const SpectralTensorField& E) {
  const Grid& g = E.grid;
  std::array<std::vector<double>, 27> out;
  std::vector<Complex> work(g.size());
  const Complex I{0.0, 1.0};
  for (int k = 0; k < 3; ++k)
    for (std::size_t a = 0; a < 9; ++a) {
      for_each_mode(g, [&](std::size_t m, int i0, int j0, int k0) {
        work[m] = I * g.derivative_wavevector(i0, j0, k0)(k) * E.c[a][m];
      });
      out[9 * k + a].resize(g.size());
      fft_inverse(g, work, out[9 * k + a]);
    }
  return out;
}

}  // namespace

double ConstraintResiduals::max_strain_residual() const {
  return std::max({div_transpose, determinant, compatibility});
}

ConstraintResiduals constraint_residuals(const ViscoState& s) {
  ConstraintResiduals r;
  r.divergence = relative_divergence(s.u);

  const PhysicalTensorField E = to_physical(s.E);
  const PhysicalVectorField dET = to_physical(div_transpose(s.E));
  const auto dE = strain_gradient(s.E);
  const std::size_t size = s.grid().size();
  for (std::size_t x = 0; x < size; ++x) {
    for (int a = 0; a < 3; ++a) r.div_transpose = std::max(r.div_transpose, std::abs(dET.c[a][x]));

    Eigen::Matrix3d F;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) F(i, j) = (i == j ? 1.0 : 0.0) + E.c[tix(i, j)][x];
    r.determinant = std::max(r.determinant, std::abs(F.determinant() - 1.0));

    // F_lk d_l E_ij is symmetric in (j, k) for a deformation gradient.
    auto d = [&](int k, int i, int j) { return dE[9 * k + tix(i, j)][x]; };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = j + 1; k < 3; ++k) {
          double lhs = 0.0, rhs = 0.0;
          for (int l = 0; l < 3; ++l) {
            lhs += F(l, k) * d(l, i, j);
            rhs += F(l, j) * d(l, i, k);
          }
          r.compatibility = std::max(r.compatibility, std::abs(lhs - rhs));
        }
  }
  return r;
}

SpectralField<12> stack(const ViscoState& s) {
  SpectralField<12> f(s.grid());
  for (std::size_t a = 0; a < 3; ++a) f.c[a] = s.u.c[a];
  for (std::size_t a = 0; a < 9; ++a) f.c[3 + a] = s.E.c[a];
  return f;
}

NormRecord state_record(const ViscoState& s, const RecordOptions& options) {
  NormRecord rec;
  rec.t = s.t;
  auto& v = rec.values;
  const PhysicalVectorField u = to_physical(s.u);
  const PhysicalTensorField E = to_physical(s.E);
  v["u_l1"] = lp_norm_grid(u, 1.0);
  v["u_l2"] = lp_norm_grid(u, 2.0);
  v["u_linf"] = lp_norm_grid(u, kInf);
  v["E_l2"] = lp_norm_grid(E, 2.0);
  v["E_linf"] = lp_norm_grid(E, kInf);
  const double nu = l2_norm(s.u), ne = l2_norm(s.E);
  v["energy"] = nu * nu + ne * ne;
  const double gu = derivative_norm(s.u, 1);
  v["grad_u_sq"] = gu * gu;
  v["D"] = energy_functional(s, options.kappa1, options.kappa2, options.delta);
  const SpectralField<12> pair = stack(s);
  v["besov"] = besov_norm(pair, options.besov_s);
  v["hneg"] = negative_sobolev_norm(pair, options.sobolev_s);
  v["top_band"] = top_band_fraction(pair);
  if (options.residuals) {
    const ConstraintResiduals r = constraint_residuals(s);
    v["div"] = r.divergence;
    v["div_ET"] = r.div_transpose;
    v["det"] = r.determinant;
    v["compat"] = r.compatibility;
  }
  return rec;
}

}  // namespace visco
