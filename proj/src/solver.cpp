#include "visco/solver.hpp"

#include <cmath>
#include <sstream>

#include "visco/fft.hpp"
#include "visco/operators.hpp"

namespace visco {
namespace {

// i xi_l f for every component.
template <std::size_t N>
SpectralField<N> partial(const SpectralField<N>& f, int l) {
  SpectralField<N> out(f.grid);
  for_each_mode(f.grid, [&](std::size_t m, int i, int j, int k) {
    const Complex d{0.0, f.grid.derivative_wavevector(i, j, k)(l)};
    for (std::size_t a = 0; a < N; ++a) out.c[a][m] = d * f.c[a][m];
  });
  return out;
}

long whole_ratio(double a, double b, const char* what) {
  const double r = a / b;
  const double rr = std::round(r);
  if (std::abs(r - rr) > 1e-9 * std::max(1.0, r)) throw std::invalid_argument(what);
  return static_cast<long>(rr);
}

}  // namespace

NonlinearTerms rhs_nonlinear(const ViscoState& s) {
  const Grid& g = s.grid();
  const SpectralVectorField ud = dealias(s.u);
  const SpectralTensorField Ed = dealias(s.E);

  const PhysicalVectorField u = to_physical(ud);
  const PhysicalTensorField gu = to_physical(grad(ud));
  const PhysicalTensorField E = to_physical(Ed);
  std::array<PhysicalTensorField, 3> dE{to_physical(partial(Ed, 0)), to_physical(partial(Ed, 1)),
                                        to_physical(partial(Ed, 2))};

  PhysicalTensorField EEt(g);
  PhysicalVectorField adv(g);
  PhysicalTensorField n2(g);
  const std::size_t size = g.size();
  for (std::size_t x = 0; x < size; ++x) {
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) acc += E.c[tix(i, k)][x] * E.c[tix(j, k)][x];
        EEt.c[tix(i, j)][x] = acc;
        EEt.c[tix(j, i)][x] = acc;
      }
    for (int i = 0; i < 3; ++i) {
      double acc = 0.0;
      for (int l = 0; l < 3; ++l) acc += u.c[l][x] * gu.c[tix(i, l)][x];
      adv.c[i][x] = acc;
    }
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double acc = 0.0;
        for (int l = 0; l < 3; ++l)
          acc += gu.c[tix(i, l)][x] * E.c[tix(l, j)][x] - u.c[l][x] * dE[l].c[tix(i, j)][x];
        n2.c[tix(i, j)][x] = acc;
      }
  }

  // EE^T is symmetric: transform the six distinct components only.
  SpectralTensorField EEt_hat(g);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      fft_forward(g, EEt.c[tix(i, j)], EEt_hat.c[tix(i, j)]);
      if (j != i) EEt_hat.c[tix(j, i)] = EEt_hat.c[tix(i, j)];
    }
  SpectralVectorField n1 = div(EEt_hat);
  n1 -= to_spectral(adv);
  return {leray_project(dealias(std::move(n1))), dealias(to_spectral(n2))};
}

ViscoState rhs_linear(const ViscoState& s, double mu) {
  ViscoState out(s.grid());
  out.t = s.t;
  const Grid& g = s.grid();
  for_each_mode(g, [&](std::size_t m, int i, int j, int k) {
    const Eigen::Vector3d xi = g.derivative_wavevector(i, j, k);
    Eigen::Vector3cd u = vector_at(s.u, m);
    Eigen::Matrix3cd E = tensor_at(s.E, m);
    apply_block(xi, {1.0, -mu * xi.squaredNorm(), 0.0, 0.0}, u, E);
    set_vector(out.u, m, u);
    set_tensor(out.E, m, E);
  });
  return out;
}

std::string to_string(Integrator integrator) {
  return integrator == Integrator::Etd2 ? "etd2" : "rk4";
}

Integrator parse_integrator(const std::string& s) {
  if (s == "etd2") return Integrator::Etd2;
  if (s == "rk4") return Integrator::Rk4;
  throw std::invalid_argument("unknown integrator '" + s + "'");
}

double coefficient_mass(const ViscoState& s) {
  double acc = 0.0;
  for (const auto& comp : s.u.c)
    for (const auto& v : comp) acc += std::norm(v);
  for (const auto& comp : s.E.c)
    for (const auto& v : comp) acc += std::norm(v);
  return acc;
}

Stepper::Stepper(const Grid& grid, double mu, double dt, Integrator integrator, bool nonlinear)
    : grid_(grid), mu_(mu), dt_(dt), integrator_(integrator), nonlinear_(nonlinear) {
  if (!(mu > 0.0)) throw std::invalid_argument("stepper: viscosity must be positive");
  if (dt < 0.0) throw std::invalid_argument("stepper: negative time step");
  if (integrator != Integrator::Etd2 || dt == 0.0) return;
  propagator_.resize(grid.size());
  phi1_.resize(grid.size());
  phi2_.resize(grid.size());
  for_each_mode(grid, [&](std::size_t m, int i, int j, int k) {
    const double q = grid.derivative_wavevector(i, j, k).squaredNorm();
    const Amplitudes a = amplitudes(q, mu, dt);
    propagator_[m] = {a.A, a.B, a.C, 1.0};
    const DuhamelWeights d = duhamel_weights(q, mu, dt);
    phi1_[m] = d.phi1;
    phi2_[m] = d.phi2;
  });
}

ViscoState Stepper::apply(const std::vector<BlockWeights>& w, const ViscoState& s) const {
  ViscoState out(grid_);
  out.t = s.t;
  apply_add(w, s.u, s.E, 1.0, out);
  return out;
}

void Stepper::apply_add(const std::vector<BlockWeights>& w, const SpectralVectorField& uf,
                        const SpectralTensorField& Ef, double sign, ViscoState& out) const {
  for_each_mode(grid_, [&](std::size_t m, int i, int j, int k) {
    Eigen::Vector3cd u = vector_at(uf, m);
    Eigen::Matrix3cd E = tensor_at(Ef, m);
    apply_block(grid_.derivative_wavevector(i, j, k), w[m], u, E);
    for (int a = 0; a < 3; ++a) out.u.c[a][m] += sign * u(a);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) out.E.c[tix(a, b)][m] += sign * E(a, b);
  });
}

ViscoState Stepper::etd2(const ViscoState& s) const {
  ViscoState a = apply(propagator_, s);
  if (!nonlinear_) return a;
  const NonlinearTerms n0 = rhs_nonlinear(s);
  apply_add(phi1_, n0.n1, n0.n2, 1.0, a);
  a.u = leray_project(a.u);
  const NonlinearTerms na = rhs_nonlinear(a);
  ViscoState out = std::move(a);
  apply_add(phi2_, na.n1 - n0.n1, na.n2 - n0.n2, 1.0, out);
  return out;
}

ViscoState Stepper::rk4(const ViscoState& s) const {
  auto f = [&](const ViscoState& x) {
    ViscoState r = rhs_linear(x, mu_);
    if (nonlinear_) {
      const NonlinearTerms n = rhs_nonlinear(x);
      r.u += n.n1;
      r.E += n.n2;
    }
    return r;
  };
  auto shifted = [&](const ViscoState& k, double h) {
    ViscoState x = s;
    x.u.axpy(h, k.u);
    x.E.axpy(h, k.E);
    return x;
  };
  const double h = dt_;
  const ViscoState k1 = f(s);
  const ViscoState k2 = f(shifted(k1, 0.5 * h));
  const ViscoState k3 = f(shifted(k2, 0.5 * h));
  const ViscoState k4 = f(shifted(k3, h));
  ViscoState out = s;
  for (const auto& [k, w] : {std::pair{&k1, h / 6.0}, {&k2, h / 3.0}, {&k3, h / 3.0}, {&k4, h / 6.0}}) {
    out.u.axpy(w, k->u);
    out.E.axpy(w, k->E);
  }
  return out;
}

ViscoState Stepper::step(const ViscoState& s) const {
  require_same_grid(grid_, s.grid());
  if (dt_ == 0.0) return s;
  ViscoState out = integrator_ == Integrator::Etd2 ? etd2(s) : rk4(s);
  out.u = leray_project(out.u);
  out.t = s.t + dt_;
  const double before = coefficient_mass(s), after = coefficient_mass(out);
  // Masses are squared norms, hence the squared factor.
  if (!std::isfinite(after) || after > kBlowUpFactor * kBlowUpFactor * std::max(before, 1e-300)) {
    std::ostringstream msg;
    msg << "step rejected at t = " << s.t << ": norm grew by a factor "
        << std::sqrt(after / std::max(before, 1e-300));
    throw StepRejected(msg.str(), s.t);
  }
  return out;
}

ViscoState step(const ViscoState& s, double dt, double mu, Integrator integrator, bool nonlinear) {
  return Stepper(s.grid(), mu, dt, integrator, nonlinear).step(s);
}

void validate(const RunConfig& c) {
  make_grid(c.n, c.length);
  if (!(c.mu > 0.0)) throw std::invalid_argument("run config: mu must be positive");
  if (!(c.dt > 0.0)) throw std::invalid_argument("run config: dt must be positive");
  if (c.t_end < 0.0) throw std::invalid_argument("run config: t_end must be >= 0");
  if (!(c.cadence > 0.0)) throw std::invalid_argument("run config: cadence must be positive");
  whole_ratio(c.cadence, c.dt, "run config: cadence must be a multiple of dt");
  whole_ratio(c.t_end, c.cadence, "run config: cadence must divide t_end");
}

RunResult evolve_from(const RunConfig& config, ViscoState state,
                      const std::function<void(const ViscoState&, const NormRecord&)>& observer) {
  validate(config);
  const long per_output = whole_ratio(config.cadence, config.dt, "");
  const long outputs = whole_ratio(config.t_end, config.cadence, "");
  RecordOptions opts = config.record;
  opts.mu = config.mu;
  const Stepper stepper(state.grid(), config.mu, config.dt, config.integrator, config.nonlinear);
  RunResult result;
  auto emit = [&] {
    NormRecord rec = state_record(state, opts);
    if (observer) observer(state, rec);
    result.records.push_back(std::move(rec));
    if (config.keep_snapshots) result.snapshots.push_back(state);
  };
  emit();
  for (long o = 1; o <= outputs; ++o) {
    for (long s = 0; s < per_output; ++s) state = stepper.step(state);
    // Pin the clock to the nominal output time, avoiding accumulated rounding.
    state.t = static_cast<double>(o * per_output) * config.dt;
    emit();
  }
  return result;
}

RunResult evolve(const RunConfig& config,
                 const std::function<void(const ViscoState&, const NormRecord&)>& observer) {
  validate(config);
  return evolve_from(config, generate_initial_data(make_grid(config.n, config.length), config.initial),
                     observer);
}

}  // namespace visco
