#include <cmath>
#include <numbers>

#include "doctest.h"
#include "visco/diagnostics.hpp"
#include "visco/initial_data.hpp"
#include "visco/norms.hpp"
#include "visco/operators.hpp"
#include "visco/oracles.hpp"
#include "visco/solver.hpp"

using namespace visco;
using doctest::Approx;

namespace {

const double kTwoPi = 2.0 * std::numbers::pi;

double state_norm(const ViscoState& s) { return std::sqrt(coefficient_mass(s)); }

double distance(const ViscoState& a, const ViscoState& b) {
  return std::sqrt(std::pow(l2_norm(a.u - b.u), 2) + std::pow(l2_norm(a.E - b.E), 2));
}

// Real single mode: coefficient v at k, conj(v) at -k.
void put_vector(SpectralVectorField& f, int i, int j, int k, const Eigen::Vector3cd& v) {
  const Grid& g = f.grid;
  set_vector(f, g.index(i, j, k), v);
  set_vector(f, g.index(g.mirror(i), g.mirror(j), g.mirror(k)), v.conjugate());
}
void put_tensor(SpectralTensorField& f, int i, int j, int k, const Eigen::Matrix3cd& t) {
  const Grid& g = f.grid;
  set_tensor(f, g.index(i, j, k), t);
  set_tensor(f, g.index(g.mirror(i), g.mirror(j), g.mirror(k)), t.conjugate());
}

}  // namespace

TEST_CASE("names round trip") {
  for (Integrator i : {Integrator::Etd2, Integrator::Rk4}) CHECK(parse_integrator(to_string(i)) == i);
  for (InitialKind k : {InitialKind::Zero, InitialKind::TaylorGreen, InitialKind::Random, InitialKind::GaussianBump})
    CHECK(parse_initial_kind(to_string(k)) == k);
  CHECK_THROWS(parse_integrator("euler"));
  CHECK_THROWS(parse_initial_kind("vortex"));
}

TEST_CASE("nonlinear terms vanish on trivial states") {
  const Grid g = make_grid(8, kTwoPi);
  const NonlinearTerms z = rhs_nonlinear(ViscoState(g));
  CHECK(l2_norm(z.n1) == 0.0);
  CHECK(l2_norm(z.n2) == 0.0);

  ViscoState c(g);
  for (std::size_t a = 0; a < 9; ++a) c.E.c[a][0] = 0.1 * static_cast<double>(a + 1) * static_cast<double>(g.size());
  const NonlinearTerms n = rhs_nonlinear(c);
  CHECK(l2_norm(n.n1) < 1e-12);
  CHECK(l2_norm(n.n2) < 1e-12);
}

TEST_CASE("nonlinear terms match the convolution oracle") {
  const Grid g = make_grid(16, kTwoPi);
  ViscoState s(g);
  const Eigen::Vector3cd u(Complex(0.0, 1.0), Complex(0.5, 0.0), Complex(0.0, 0.2));
  put_vector(s.u, 2, 15, 0, 40.0 * u);
  s.u = leray_project(s.u);
  Eigen::Matrix3cd E;
  E << Complex(1.0, 0.5), 0.2, Complex(0.0, -0.3), 0.1, Complex(-0.4, 0.0), 0.7, Complex(0.0, 0.9), 0.3, -0.2;
  put_tensor(s.E, 1, 3, 2, 30.0 * E);
  // a second mode pair widens the interaction set
  put_tensor(s.E, 0, 1, 15, 20.0 * E.transpose());

  const NonlinearTerms fast = rhs_nonlinear(s);
  const NonlinearTerms ref = oracle::convolution_nonlinear(s);
  CHECK(l2_norm(ref.n1) > 0.0);
  CHECK(l2_norm(ref.n2) > 0.0);
  CHECK(l2_norm(fast.n1 - ref.n1) < 1e-10 * l2_norm(ref.n1));
  CHECK(l2_norm(fast.n2 - ref.n2) < 1e-10 * l2_norm(ref.n2));
  CHECK(relative_divergence(fast.n1) < 1e-12);
}

TEST_CASE("nonlinear terms on random data match the oracle") {
  const Grid g = make_grid(8, kTwoPi);
  const ViscoState s = oracle::random_state(g, 41, 1.5);
  const NonlinearTerms fast = rhs_nonlinear(s);
  const NonlinearTerms ref = oracle::convolution_nonlinear(s);
  CHECK(l2_norm(fast.n1 - ref.n1) < 1e-10 * l2_norm(ref.n1));
  CHECK(l2_norm(fast.n2 - ref.n2) < 1e-10 * l2_norm(ref.n2));
}

TEST_CASE("linear right-hand side") {
  const Grid g = make_grid(8, kTwoPi);
  const ViscoState s = oracle::random_state(g, 6, 2.0);
  const ViscoState r = rhs_linear(s, 0.8);
  const double h = 1e-5;
  const ViscoState plus = propagate_exact(s, h, 0.8);
  ViscoState fd(g);
  fd.u = (1.0 / h) * (plus.u - s.u);
  fd.E = (1.0 / h) * (plus.E - s.E);
  CHECK(distance(fd, r) < 1e-4 * state_norm(r));
}

TEST_CASE("stepping") {
  const Grid g = make_grid(8, kTwoPi);
  const ViscoState s = oracle::random_state(g, 12, 2.0);

  for (Integrator integ : {Integrator::Etd2, Integrator::Rk4}) {
    const ViscoState same = step(s, 0.0, 1.0, integ);
    CHECK(distance(same, s) == 0.0);
  }

  // without the nonlinearity etd2 is the exact propagator
  const Stepper lin(g, 1.0, 0.1, Integrator::Etd2, false);
  ViscoState a = s;
  for (int i = 0; i < 5; ++i) a = lin.step(a);
  const ViscoState exact = propagate_exact(s, 0.5, 1.0);
  CHECK(distance(a, exact) < 1e-13 * state_norm(exact));
  CHECK(a.t == Approx(0.5));

  // rk4 on the linear part is fourth order
  const ViscoState r1 = step(s, 0.02, 1.0, Integrator::Rk4, false);
  CHECK(distance(r1, propagate_exact(s, 0.02, 1.0)) < 1e-8 * state_norm(s));

  CHECK_THROWS_AS(Stepper(g, 0.0, 0.1, Integrator::Etd2), std::invalid_argument);
  CHECK_THROWS_AS(Stepper(g, 1.0, -0.1, Integrator::Etd2), std::invalid_argument);
}

TEST_CASE("etd2 and rk4 agree on a small nonlinear step") {
  const Grid g = make_grid(8, kTwoPi);
  ViscoState s = oracle::random_state(g, 13, 1.5);
  s.u = 0.05 / state_norm(s) * s.u;
  s.E = 0.05 / state_norm(s) * s.E;
  const ViscoState e = step(s, 1e-3, 1.0, Integrator::Etd2);
  const ViscoState r = step(s, 1e-3, 1.0, Integrator::Rk4);
  CHECK(distance(e, r) < 1e-8 * state_norm(s));
}

TEST_CASE("blow-up guard") {
  const Grid g = make_grid(16, kTwoPi);
  const ViscoState s = oracle::random_state(g, 2, 4.0);
  // rk4 far outside its stability region on the viscous term
  CHECK_THROWS_AS(step(s, 1.0, 1.0, Integrator::Rk4, false), StepRejected);
}

TEST_CASE("initial velocity") {
  const Grid g = make_grid(16, kTwoPi);
  for (InitialKind kind : {InitialKind::TaylorGreen, InitialKind::Random, InitialKind::GaussianBump}) {
    InitialDataSpec spec;
    spec.kind = kind;
    spec.amplitude = 0.3;
    const SpectralVectorField u = initial_velocity(g, spec);
    CHECK(lp_norm_grid(u, kInf) == Approx(0.3));
    CHECK(relative_divergence(u) < 1e-13);
    CHECK(std::abs(u.c[0][0]) + std::abs(u.c[1][0]) + std::abs(u.c[2][0]) < 1e-12);
    CHECK(top_band_fraction(u) == 0.0);
  }
  InitialDataSpec bad;
  bad.mode = 7;
  CHECK_THROWS_AS(initial_velocity(g, bad), std::invalid_argument);
  bad = {};
  bad.amplitude = -1.0;
  CHECK_THROWS_AS(initial_velocity(g, bad), std::invalid_argument);
}

TEST_CASE("initial data examples") {
  const Grid g = make_grid(16, kTwoPi);
  InitialDataSpec spec;
  spec.kind = InitialKind::Random;
  spec.amplitude = 0.5;
  spec.flow_time = 0.0;
  const ViscoState s0 = generate_initial_data(g, spec);
  CHECK(l2_norm(s0.E) == 0.0);
  const ConstraintResiduals r0 = constraint_residuals(s0);
  CHECK(r0.max_strain_residual() == 0.0);

  spec.amplitude = 0.0;
  spec.flow_time = 0.3;
  const ViscoState z = generate_initial_data(g, spec);
  CHECK(coefficient_mass(z) == 0.0);

  InitialDataSpec zero;
  zero.kind = InitialKind::Zero;
  CHECK(coefficient_mass(generate_initial_data(g, zero)) == 0.0);
}

TEST_CASE("transported strain satisfies the identities") {
  const Grid g = make_grid(32, kTwoPi);
  InitialDataSpec spec;
  spec.kind = InitialKind::TaylorGreen;
  spec.amplitude = 1.0;
  spec.flow_time = 0.1;
  const ViscoState s = generate_initial_data(g, spec);
  CHECK(l2_norm(s.E) > 0.0);
  const ConstraintResiduals r = constraint_residuals(s);
  CHECK(r.determinant <= 1e-8);
  CHECK(r.div_transpose <= 1e-8);
  CHECK(r.compatibility <= 1e-8);

  // a transport time of zero is the identity deformation
  CHECK(l2_norm(transported_strain(s.u, 0.0, 0.01)) == 0.0);
  CHECK_THROWS_AS(transported_strain(s.u, -1.0, 0.01), std::invalid_argument);
}

TEST_CASE("rejected initial data reports residuals") {
  const Grid g = make_grid(8, kTwoPi);
  InitialDataSpec spec;
  spec.kind = InitialKind::Random;
  spec.amplitude = 2.0;
  spec.flow_time = 0.5;
  spec.tolerance = 1e-300;
  try {
    generate_initial_data(g, spec);
    FAIL("expected rejection");
  } catch (const InitialDataRejected& e) {
    CHECK(e.residuals().max_strain_residual() > 1e-300);
  }
}

TEST_CASE("run configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  c.cadence = 0.07;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.t_end = 10.25;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.mu = 0.0;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
  c = {};
  c.n = 7;
  CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("evolve") {
  RunConfig c;
  c.n = 8;
  c.t_end = 0.0;
  c.initial.flow_time = 0.1;
  const RunResult only = evolve(c);
  REQUIRE(only.records.size() == 1);
  CHECK(only.records[0].t == 0.0);

  c.t_end = 1.0;
  c.cadence = 0.25;
  c.keep_snapshots = true;
  int seen = 0;
  const RunResult run = evolve(c, [&](const ViscoState&, const NormRecord&) { ++seen; });
  REQUIRE(run.records.size() == 5);
  CHECK(seen == 5);
  CHECK(run.snapshots.size() == 5);
  CHECK(run.records.back().t == 1.0);
  CHECK(run.snapshots.back().t == 1.0);
  for (std::size_t i = 1; i < run.records.size(); ++i)
    CHECK(run.records[i].values.at("energy") <= run.records[i - 1].values.at("energy"));

  // zero data stays zero
  c.initial.amplitude = 0.0;
  for (const auto& rec : evolve(c).records) CHECK(rec.values.at("energy") == 0.0);
}
