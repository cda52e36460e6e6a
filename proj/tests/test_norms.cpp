#include <cmath>
#include <numbers>

#include "doctest.h"
#include "visco/diagnostics.hpp"
#include "visco/norms.hpp"
#include "visco/operators.hpp"
#include "visco/oracles.hpp"

using namespace visco;
using doctest::Approx;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

// Real single-mode field at integer wavenumber (k, 0, 0), scaled to unit L2 mass.
SpectralScalarField unit_mode(const Grid& g, int k) {
  SpectralScalarField f(g);
  f.c[0][g.index(k, 0, 0)] = 1.0;
  f.c[0][g.index(g.mirror(k), 0, 0)] = 1.0;
  return (1.0 / l2_norm(f)) * f;
}

}  // namespace

TEST_CASE("grid Lp norms of a constant") {
  const Grid g = make_grid(8, 3.0);
  PhysicalScalarField f(g);
  for (auto& v : f.c[0]) v = -2.0;
  const double V = 27.0;
  CHECK(lp_norm_grid(f, 1.0) == Approx(2.0 * V));
  CHECK(lp_norm_grid(f, 2.0) == Approx(2.0 * std::sqrt(V)));
  CHECK(lp_norm_grid(f, 3.0) == Approx(2.0 * std::cbrt(V)));
  CHECK(lp_norm_grid(f, kInf) == 2.0);
  CHECK_THROWS_AS(lp_norm_grid(f, 0.5), std::invalid_argument);
}

TEST_CASE("derivative norm examples") {
  const Grid g = make_grid(8, kTwoPi);
  const auto f = unit_mode(g, 2);
  CHECK(derivative_norm(f, 3) == Approx(8.0));
  CHECK(derivative_norm(f, 0) == Approx(l2_norm(f)));
  CHECK(derivative_norm(f, 2, NormBase::H) == Approx(std::sqrt(1.0 + 4.0 + 16.0)));
  CHECK_THROWS_AS(derivative_norm(f, -1), std::invalid_argument);
}

TEST_CASE("radial multiplier matches the full derivative tensor") {
  // ||grad grad f||: the radial |xi|^2 realization is exact for the ordered tensor;
  // the sum over distinct multi-indices is equivalent up to a factor.
  const Grid g = make_grid(16, 3.0);
  const auto f = oracle::random_field<1>(g, 31);
  const auto hess = grad(grad(f));
  CHECK(l2_norm(hess) == Approx(derivative_norm(f, 2)).epsilon(1e-12));
  double distinct = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      SpectralScalarField c(g);
      c.c[0] = hess.c[tix(a, b)];
      distinct += std::pow(l2_norm(c), 2);
    }
  const double ratio = std::sqrt(distinct) / derivative_norm(f, 2);
  CHECK(ratio <= 1.0);
  CHECK(ratio >= std::sqrt(2.0 / 3.0) - 1e-12);
}

TEST_CASE("negative Sobolev norm examples") {
  const Grid g = make_grid(16, kTwoPi);
  CHECK(negative_sobolev_norm(unit_mode(g, 4), 1.0) == Approx(0.25));
  // s = 0 drops the mean
  auto f = unit_mode(g, 3);
  f.c[0][0] = 5.0;
  CHECK(negative_sobolev_norm(f, 0.0) == Approx(1.0));
  // two modes: root-sum-square
  auto two = unit_mode(g, 2);
  two += unit_mode(g, 4);
  CHECK(negative_sobolev_norm(two, 1.0) == Approx(std::sqrt(0.25 + 0.0625)));
  CHECK_THROWS_AS(negative_sobolev_norm(f, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(negative_sobolev_norm(f, -0.1), std::invalid_argument);
}

TEST_CASE("Besov proxy examples") {
  const Grid g = make_grid(32, kTwoPi);
  CHECK(dyadic_shell(8.0) == 3);
  CHECK(dyadic_shell(15.9) == 3);
  CHECK(dyadic_shell(16.0) == 4);
  CHECK(besov_norm(unit_mode(g, 8), 0.5) == Approx(std::pow(2.0, -1.5)));
  CHECK(besov_norm(unit_mode(g, 8), 0.5) == Approx(0.35355).epsilon(1e-5));
  CHECK(besov_norm(SpectralScalarField(g), 1.0) == 0.0);
  // shells l = 1 and l = 3 with masses 1 and 4: max(2^{-1}, 2^{-3} 2)
  auto two = unit_mode(g, 2);
  two += 2.0 * unit_mode(g, 8);
  CHECK(besov_norm(two, 1.0) == Approx(0.5));
  CHECK(besov_norm(two, 0.25) == Approx(2.0 * std::pow(2.0, -0.75)));
  CHECK_THROWS_AS(besov_norm(two, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(besov_norm(two, 1.6), std::invalid_argument);
}

TEST_CASE("top band fraction") {
  const Grid g = make_grid(12, kTwoPi);
  CHECK(top_band_fraction(unit_mode(g, 4)) == 0.0);
  auto f = unit_mode(g, 4);
  f += unit_mode(g, 5);
  CHECK(top_band_fraction(f) == Approx(0.5));
  CHECK(top_band_fraction(SpectralScalarField(g)) == 0.0);
}

TEST_CASE("energy functional examples") {
  const Grid g = make_grid(8, kTwoPi);
  CHECK(energy_functional(ViscoState(g), 0, 3, 0.1) == 0.0);

  // symmetric E with u = 0: every cross term vanishes
  ViscoState sym = oracle::random_state(g, 4, 2.0);
  sym.E = 0.5 * (sym.E + transpose(sym.E));
  for (int l = 0; l < 3; ++l) CHECK(std::abs(skew_cross_term(sym, l)) < 1e-12 * sobolev_sum(sym, 0, 3));
  sym.u = SpectralVectorField(g);
  sym.E = oracle::random_state(g, 4, 2.0).E;
  sym.E = 0.5 * (sym.E + transpose(sym.E));
  CHECK(energy_functional(sym, 0, 3, 0.3, 2.0) == Approx(sobolev_sum(sym, 0, 3, 2.0)));

  CHECK_THROWS_AS(energy_functional(sym, 2, 2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(energy_functional(sym, 0, 3, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("cross terms obey the Cauchy-Schwarz bound") {
  const Grid g = make_grid(8, kTwoPi);
  const ViscoState s = oracle::random_state(g, 8, 3.0);
  const double delta = 1e-3;
  const double w = parseval_weight(g);
  double bound = 0.0;
  for (int l = 0; l <= 2; ++l)
    for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
      const Eigen::Vector3cd xi = g.derivative_wavevector(i, j, k).cast<Complex>();
      const Eigen::Vector3cd u = vector_at(s.u, m);
      const Eigen::Matrix3cd E = tensor_at(s.E, m);
      const Eigen::Matrix3cd W = Complex(0.0, 1.0) * (u * xi.transpose() - xi * u.transpose());
      const Eigen::Matrix3cd Z = E.transpose() - E;
      bound += w * std::pow(xi.squaredNorm(), l) * W.norm() * Z.norm();
    });
  const double gap = std::abs(energy_functional(s, 0, 3, delta) - sobolev_sum(s, 0, 3));
  CHECK(gap > 0.0);
  CHECK(gap <= delta * bound);
}

TEST_CASE("constraint residuals") {
  const Grid g = make_grid(8, kTwoPi);
  const ConstraintResiduals zero = constraint_residuals(ViscoState(g));
  CHECK(zero.divergence == 0.0);
  CHECK(zero.div_transpose == 0.0);
  CHECK(zero.determinant == 0.0);
  CHECK(zero.compatibility == 0.0);
  CHECK(zero.max_strain_residual() == 0.0);

  ViscoState s = oracle::random_state(g, 2, 3.0);
  s.E = SpectralTensorField(g);
  const ConstraintResiduals r = constraint_residuals(s);
  CHECK(r.divergence < 1e-14);
  CHECK(r.max_strain_residual() == 0.0);

  // a generic E violates all strain identities
  const ConstraintResiduals bad = constraint_residuals(oracle::random_state(g, 3, 3.0));
  CHECK(bad.div_transpose > 1e-3);
  CHECK(bad.determinant > 1e-3);
  CHECK(bad.compatibility > 1e-3);
}

TEST_CASE("state record keys") {
  const Grid g = make_grid(8, kTwoPi);
  ViscoState s = oracle::random_state(g, 5, 2.0);
  s.t = 1.25;
  const NormRecord rec = state_record(s, {});
  CHECK(rec.t == 1.25);
  for (const char* key : {"u_l1", "u_l2", "u_linf", "E_l2", "E_linf", "energy", "grad_u_sq", "D", "besov", "hneg",
                          "top_band", "div", "div_ET", "det", "compat"})
    CHECK_MESSAGE(rec.values.count(key) == 1, key);
  CHECK(rec.values.at("energy") == Approx(std::pow(l2_norm(s.u), 2) + std::pow(l2_norm(s.E), 2)));
  CHECK(rec.values.at("u_l2") == Approx(l2_norm(s.u)).epsilon(1e-10));
  CHECK(rec.values.at("grad_u_sq") == Approx(std::pow(derivative_norm(s.u, 1), 2)));
  CHECK(rec.values.at("hneg") == Approx(negative_sobolev_norm(stack(s), 0.5)));
  // interpolation on grid quantities
  CHECK(rec.values.at("u_l2") <= std::sqrt(rec.values.at("u_l1") * rec.values.at("u_linf")) * (1.0 + 1e-10));

  RecordOptions lean;
  lean.residuals = false;
  CHECK(state_record(s, lean).values.count("det") == 0);
}
