#include "visco/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "visco/cutoff.hpp"
#include "visco/experiments.hpp"
#include "visco/norms.hpp"
#include "visco/operators.hpp"
#include "visco/oracles.hpp"
#include "visco/semigroup.hpp"

namespace visco::lab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Report {
public:
  explicit Report(CriterionResult& r) : r_(r) { r_.passed = true; }

  void check(const std::string& what, double value, bool ok, const std::string& bound) {
    std::ostringstream os;
    os << what << '=' << std::setprecision(4) << value << (ok ? " (" : " (VIOLATES ") << bound << ')';
    r_.details.push_back(os.str());
    r_.passed = r_.passed && ok;
  }

  void at_most(const std::string& what, double value, double limit) {
    std::ostringstream b;
    b << "<= " << limit;
    check(what, value, value <= limit, b.str());
  }

  void within(const std::string& what, double value, double target, double tol) {
    std::ostringstream b;
    b << target << " +- " << tol;
    check(what, value, std::abs(value - target) <= tol, b.str());
  }

  void between(const std::string& what, double value, double lo, double hi) {
    std::ostringstream b;
    b << "in [" << lo << ", " << hi << "]";
    check(what, value, value >= lo && value <= hi, b.str());
  }

private:
  CriterionResult& r_;
};

double rel(double err, double scale) { return scale > 0.0 ? err / scale : err; }

Eigen::Vector3d random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Vector3d v(n(rng), n(rng), n(rng));
  return v / v.norm();
}

// 1. Root and amplitude identities on random (|xi|, mu, t).
CriterionResult eigen_identities(const ReproduceOptions&) {
  CriterionResult r;
  Report rep(r);
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> uxi(1e-3, 10.0), umu(0.1, 4.0), ut(0.0, 50.0), unear(-1e-6, 1e-6);
  double root_sum = 0.0, root_prod = 0.0, amp = 0.0, amp_near = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double mu = umu(rng), t = ut(rng);
    const bool near = i % 5 == 0;
    const double xi = near ? 2.0 / mu + unear(rng) : uxi(rng);
    const double q = xi * xi;
    const EigenPair ep = eigenpair(q, mu);
    root_sum = std::max(root_sum, rel(std::abs(ep.lambda1 + ep.lambda2 + mu * q), mu * q));
    root_prod = std::max(root_prod, rel(std::abs(ep.lambda1 * ep.lambda2 - q), q));
    const Amplitudes a = amplitudes(q, mu, t);
    const double scale = std::max({std::abs(a.B), std::abs(mu * q * a.A), std::abs(a.C)});
    const double e = rel(std::abs(a.B + mu * q * a.A - a.C), scale);
    (near ? amp_near : amp) = std::max(near ? amp_near : amp, e);
  }
  rep.at_most("max_rel_root_sum", root_sum, 1e-12);
  rep.at_most("max_rel_root_product", root_prod, 1e-12);
  rep.at_most("max_rel_amplitude_identity", amp, 1e-10);
  rep.at_most("max_rel_amplitude_identity_near_confluent", amp_near, 1e-10);
  return r;
}

// 2. Closed-form propagator against RK4 integration of the per-mode system.
CriterionResult propagator_oracle(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uxi(1e-3, 10.0), umu(0.1, 4.0);
  std::normal_distribution<double> n;
  const std::vector<double> checkpoints = {0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
  constexpr int modes = 200;
  std::vector<double> worst(modes, 0.0);
  std::vector<double> radius(modes), mus(modes);
  std::vector<Eigen::Vector3d> dirs(modes);
  std::vector<oracle::ModeState> init(modes);
  for (int m = 0; m < modes; ++m) {
    mus[m] = umu(rng);
    // Every tenth mode sits on or right next to the confluent radius.
    const double offsets[] = {0.0, 1e-9, -1e-7, 1e-6, -1e-4};
    radius[m] = m % 10 == 0 ? 2.0 / mus[m] + offsets[(m / 10) % 5] : uxi(rng);
    dirs[m] = random_direction(rng);
    oracle::ModeState s;
    for (int a = 0; a < 3; ++a) s.u(a) = Complex(n(rng), n(rng));
    s.u -= dirs[m].cast<Complex>() * dirs[m].cast<Complex>().dot(s.u);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) s.E(a, b) = Complex(n(rng), n(rng));
    init[m] = s;
  }
  parallel_for(modes, opt.workers, [&](std::size_t m) {
    const Eigen::Vector3d xi = radius[m] * dirs[m];
    const double norm0 = std::sqrt(init[m].u.squaredNorm() + init[m].E.squaredNorm());
    oracle::ModeState ode = init[m];
    double t_prev = 0.0;
    for (double t : checkpoints) {
      ode = oracle::integrate_mode(xi, mus[m], ode, t - t_prev, 1e-4);
      t_prev = t;
      const Amplitudes a = amplitudes(xi.squaredNorm(), mus[m], t);
      Eigen::Vector3cd u = init[m].u;
      Eigen::Matrix3cd E = init[m].E;
      apply_block(xi, {a.A, a.B, a.C, 1.0}, u, E);
      const double err = std::sqrt((u - ode.u).squaredNorm() + (E - ode.E).squaredNorm());
      worst[m] = std::max(worst[m], err / norm0);
    }
  });
  double all = 0.0, confluent = 0.0;
  for (int m = 0; m < modes; ++m) {
    all = std::max(all, worst[m]);
    if (m % 10 == 0) confluent = std::max(confluent, worst[m]);
  }
  rep.at_most("max_rel_error", all, 1e-8);
  rep.at_most("max_rel_error_confluent_radius", confluent, 1e-8);
  return r;
}

// 3. Damped-wave form of B.
CriterionResult wave_form(const ReproduceOptions&) {
  CriterionResult r;
  Report rep(r);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> umu(0.1, 4.0), uf(0.0, 1.0), ut(0.0, 50.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double mu = umu(rng);
    const double xi = (2.0 / mu) * (1e-3 + (1.0 - 2e-3) * uf(rng));
    const double t = ut(rng);
    worst = std::max(worst, std::abs(amplitudes(xi * xi, mu, t).B - wave_form_B(xi * xi, mu, t)));
  }
  rep.at_most("max_abs_difference", worst, 1e-10);
  return r;
}

// 4. Energy balance of the exact linear flow on a 32^3 box.
CriterionResult linear_energy(const ReproduceOptions&) {
  CriterionResult r;
  Report rep(r);
  const Grid g = make_grid(32, kTwoPi);
  const double mu = 1.0;
  const ViscoState s0 = oracle::random_state(g, 404, 3.0);
  // Fine Simpson panels while the stiff modes decay, then coarser ones.
  std::vector<double> nodes;
  for (int i = 0; i <= 1000; ++i) nodes.push_back(1e-3 * i);
  for (int i = 1; i <= 1900; ++i) nodes.push_back(1.0 + 1e-2 * i);
  std::vector<double> energy(nodes.size()), dissipation(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ViscoState s = propagate_exact(s0, nodes[i], mu);
    const double nu = l2_norm(s.u), ne = l2_norm(s.E), gu = derivative_norm(s.u, 1);
    energy[i] = nu * nu + ne * ne;
    dissipation[i] = 2.0 * mu * gu * gu;
  }
  double integral = 0.0, worst = 0.0;
  for (std::size_t i = 2; i < nodes.size(); i += 2) {
    const double h = nodes[i] - nodes[i - 1];
    integral += h / 3.0 * (dissipation[i - 2] + 4.0 * dissipation[i - 1] + dissipation[i]);
    worst = std::max(worst, std::abs(energy[i] + integral - energy[0]) / energy[0]);
  }
  rep.at_most("max_rel_balance_defect", worst, 1e-6);
  rep.check("energy_fraction_dissipated", 1.0 - energy.back() / energy[0], true, "informational");
  return r;
}

KernelDecaySpec acceptance_kernel_spec(const ReproduceOptions& opt) {
  KernelDecaySpec spec;
  spec.mu = 1.0;
  spec.t_min = 10.0;
  spec.t_max = 300.0;
  spec.points = 24;
  spec.workers = opt.workers;
  return spec;
}

// 5. Kernel decay exponents at kernel level.
CriterionResult kernel_decay_exponents(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  const double inf = std::numeric_limits<double>::infinity();
  KernelDecaySpec spec = acceptance_kernel_spec(opt);
  spec.kinds = {KernelKind::A, KernelKind::C};
  spec.alphas = {0, 1};
  spec.p_list = {1.0, inf};
  const auto rows = kernel_decay(spec);
  auto slope = [&](KernelKind k, int a, double p) {
    for (const auto& row : rows)
      if (row.kind == k && row.alpha == a && row.p == p) return row.fit.slope;
    throw std::logic_error("missing kernel row");
  };
  rep.within("Linf_A_alpha0", slope(KernelKind::A, 0, inf), -1.5, 0.1);
  rep.within("Linf_A_alpha1", slope(KernelKind::A, 1, inf), -2.0, 0.1);
  rep.within("Linf_C_alpha0", slope(KernelKind::C, 0, inf), -2.0, 0.1);
  rep.within("L1_A_alpha0", slope(KernelKind::A, 0, 1.0), 1.0, 0.1);
  rep.within("L1_A_alpha1", slope(KernelKind::A, 1, 1.0), 0.5, 0.1);
  rep.within("L1_C_alpha0", slope(KernelKind::C, 0, 1.0), 0.5, 0.1);
  KernelDecaySpec heat = spec;
  heat.kinds = {KernelKind::Heat};
  heat.alphas = {0};
  const auto hrows = kernel_decay(heat);
  rep.within("Linf_heat", hrows[1].fit.slope, -1.5, 0.1);
  rep.within("L1_heat", hrows[0].fit.slope, 0.0, 0.05);
  return r;
}

// 6. L2 rate of the velocity-from-strain kernel.
CriterionResult l2_kernel_rate(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  KernelDecaySpec spec = acceptance_kernel_spec(opt);
  spec.kinds = {KernelKind::A};
  spec.alphas = {1};
  spec.p_list = {2.0};
  rep.within("L2_A_alpha1", kernel_decay(spec).front().fit.slope, -0.75, 0.05);
  return r;
}

// 7. Exponential decay of the high band.
CriterionResult highfreq_decay(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  HighfreqSpec spec;
  spec.mus = {0.5, 1.0, 2.0};
  spec.kind = KernelKind::A;
  spec.workers = opt.workers;
  for (const RateRow& row : highfreq(spec)) {
    std::ostringstream name;
    name << "rate_over_target_mu" << row.mu;
    rep.between(name.str(), row.ratio, 0.8, 1.2);
  }
  return r;
}

RunConfig acceptance_run_config() {
  RunConfig c;
  c.n = 32;
  c.length = kTwoPi;
  c.mu = 1.0;
  c.dt = 0.05;
  c.t_end = 10.0;
  c.cadence = 0.5;
  c.initial.kind = InitialKind::TaylorGreen;
  c.initial.amplitude = 1e-2;
  c.initial.flow_time = 1.0;
  c.record.kappa1 = 0;
  c.record.kappa2 = 3;
  c.record.delta = 0.1;
  c.record.besov_s = 1.5;
  return c;
}

double state_distance(const ViscoState& a, const ViscoState& b) {
  ViscoState d = a;
  d.u -= b.u;
  d.E -= b.E;
  return std::sqrt(coefficient_mass(d));
}

ViscoState integrate(ViscoState s, double mu, double dt, double t_end, Integrator integrator) {
  const Stepper stepper(s.grid(), mu, dt, integrator);
  const long steps = std::lround(t_end / dt);
  for (long i = 0; i < steps; ++i) s = stepper.step(s);
  return s;
}

// 8. Structure of small-data nonlinear runs.
CriterionResult nonlinear_structure(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  std::vector<NormRecord> records;
  evolve(acceptance_run_config(), [&](const ViscoState& s, const NormRecord& rec) {
    records.push_back(rec);
    if (opt.log) *opt.log << "  t=" << s.t << " energy=" << rec.values.at("energy") << '\n';
  });
  const NonlinearSummary s = summarize(std::move(records));
  rep.at_most("max_divergence", s.max_divergence, 1e-10);
  rep.at_most("max_det_residual", s.max_determinant, 1e-6);
  rep.at_most("max_divET_residual", s.max_div_transpose, 1e-6);
  rep.at_most("max_energy_increase", s.max_energy_increase, 1e-10);
  rep.at_most("max_D_increase", s.max_D_increase, 1e-8);
  rep.at_most("besov_max_over_initial", s.besov_ratio, 2.0);

  // Order: etd2 at dt, dt/2, dt/4 against a small-step rk4 reference.
  InitialDataSpec data;
  data.kind = InitialKind::TaylorGreen;
  data.amplitude = 1e-2;
  data.flow_time = 1.0;
  const ViscoState s0 = generate_initial_data(make_grid(16, kTwoPi), data);
  const double mu = 1.0, horizon = 1.0;
  const ViscoState ref = integrate(s0, mu, 2.5e-3, horizon, Integrator::Rk4);
  std::vector<double> errs;
  for (double dt : {0.1, 0.05, 0.025}) errs.push_back(state_distance(integrate(s0, mu, dt, horizon, Integrator::Etd2), ref));
  rep.between("etd2_order_coarse", std::log2(errs[0] / errs[1]), 1.7, 2.3);
  rep.between("etd2_order_fine", std::log2(errs[1] / errs[2]), 1.7, 2.3);
  return r;
}

// 9. L1 growth of the velocity on a large periodic box.
CriterionResult linear_box_l1(const ReproduceOptions&) {
  CriterionResult r;
  Report rep(r);
  LinearBoxSpec spec;
  spec.n = 128;
  spec.length = 100.0;
  spec.mu = 1.0;
  spec.initial.kind = InitialKind::GaussianBump;
  spec.initial.amplitude = 1.0;
  spec.initial.width = 2.0;
  spec.initial.flow_time = 0.0;
  spec.p_list = {1.0};
  spec.s_list = {};
  for (int t = 5; t <= 25; ++t) spec.times.push_back(t);
  spec.fit_t_min = 5.0;
  spec.fit_t_max = 25.0;
  const LinearBoxResult res = linear_box(spec);
  rep.within("u_L1_slope", res.u_l1_fit ? res.u_l1_fit->slope : std::nan(""), 0.5, 0.15);
  return r;
}

// 10. Module invariants on random data.
CriterionResult property_suite(const ReproduceOptions& opt) {
  CriterionResult r;
  Report rep(r);
  const Grid g = make_grid(16, 3.0);

  double idem_p = 0.0, idem_q = 0.0, parseval = 0.0, split = 0.0, div_leray = 0.0;
  double interp = -std::numeric_limits<double>::infinity();
  double support = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto v = oracle::random_field<3>(g, seed);
    const auto E = oracle::random_field<9>(g, seed + 100);
    const auto pv = leray_project(v);
    idem_p = std::max(idem_p, l2_norm(leray_project(pv) - pv) / l2_norm(pv));
    const auto qE = q_project(E);
    idem_q = std::max(idem_q, l2_norm(q_project(qE) - qE) / l2_norm(qE));
    const double grid_l2 = lp_norm_grid(to_physical(v), 2.0);
    parseval = std::max(parseval, std::abs(grid_l2 - l2_norm(v)) / l2_norm(v));
    div_leray = std::max(div_leray, l2_norm(div(pv)) / l2_norm(v));

    const CutoffProfile cutoff(8.0);
    const auto [low, high] = split_low_high(v, cutoff);
    split = std::max(split, l2_norm(low + high - v) / l2_norm(v));
    support = std::max({support,
                        weighted_l2(low, [&](double rho) { return rho >= cutoff.outer_radius() ? 1.0 : 0.0; }),
                        weighted_l2(high, [&](double rho) { return rho <= cutoff.inner_radius() ? 1.0 : 0.0; })});

    const auto u = to_physical(pv);
    const double l1 = lp_norm_grid(u, 1.0), l2 = lp_norm_grid(u, 2.0), li = lp_norm_grid(u, kInf);
    interp = std::max(interp, l2 / std::sqrt(l1 * li) - 1.0);
  }
  rep.at_most("leray_idempotence", idem_p, 1e-12);
  rep.at_most("q_idempotence", idem_q, 1e-12);
  rep.at_most("parseval_rel", parseval, 1e-10);
  rep.at_most("div_after_leray_rel", div_leray, 1e-14);
  rep.at_most("split_partition_rel", split, 1e-14);
  rep.at_most("split_support_leak", support, 0.0);
  rep.at_most("L2_over_sqrt_L1_Linf_minus_1", interp, 1e-10);

  // Single-shell field with |xi| = 2: negative Sobolev and Besov weights coincide.
  {
    const Grid unit = make_grid(8, kTwoPi);
    SpectralVectorField f(unit);
    f.c[1][unit.index(2, 0, 0)] = 1.0;
    f.c[1][unit.index(unit.mirror(2), 0, 0)] = 1.0;
    rep.at_most("single_shell_embedding_rel",
                std::abs(negative_sobolev_norm(f, 0.5) - besov_norm(f, 0.5)) / besov_norm(f, 0.5), 1e-12);
  }

  // Fit recovery on planted power laws.
  {
    std::vector<double> t;
    for (int i = 0; i < 60; ++i) t.push_back(20.0 * std::pow(10.0, i / 59.0));
    double worst = 0.0;
    for (double k : {-2.0, 0.5, -0.75, 1.0}) {
      std::vector<double> y;
      for (double x : t) y.push_back(3.0 * std::pow(1.0 + x, k) * (1.0 + 0.01 * std::sin(x)));
      worst = std::max(worst, std::abs(fit_decay(t, y, 20.0, 200.0).slope - k));
    }
    rep.at_most("fit_recovery_error", worst, 0.02);
  }

  // Semigroup property and linear-limit consistency of the stepper.
  {
    const Grid small = make_grid(8, kTwoPi);
    const ViscoState s0 = oracle::random_state(small, 9, 2.0);
    const ViscoState two = propagate_exact(propagate_exact(s0, 0.7, 1.0), 1.3, 1.0);
    const ViscoState one = propagate_exact(s0, 2.0, 1.0);
    rep.at_most("semigroup_rel", state_distance(two, one) / std::sqrt(coefficient_mass(one)), 1e-10);
    const Stepper linear(small, 1.0, 0.25, Integrator::Etd2, false);
    ViscoState lin = s0;
    for (int i = 0; i < 8; ++i) lin = linear.step(lin);
    rep.at_most("linear_limit_rel", state_distance(lin, one) / std::sqrt(coefficient_mass(one)), 1e-10);
  }

  // Kernel lab: Gaussian closed forms, self-convergence, wavefront localization, exponent ladder.
  {
    const std::vector<double> radii = {0.0, 0.5, 1.0, 2.0, 3.0};
    const RadialProfile gauss =
        radial_inverse_ft([](double rho) { return std::exp(-0.5 * rho * rho); }, 12.0, 0.0, radii);
    double err = 0.0;
    for (std::size_t i = 0; i < radii.size(); ++i)
      err = std::max(err, std::abs(gauss.values[i] - std::exp(-0.5 * radii[i] * radii[i])));
    rep.at_most("gaussian_roundtrip", err, 1e-8);

    const KernelSpec a{KernelKind::A, 1.0, 0, Band::Low};
    const RadialProfile coarse = kernel_profile(a, 40.0);
    QuadratureOptions fine;
    fine.min_intervals = 2 * coarse.quadrature_intervals;
    const RadialProfile finer = kernel_profile(a, 40.0, fine);
    double drift = 0.0;
    for (double p : {1.0, 2.0, kInf})
      drift = std::max(drift, std::abs(lp_norm_radial(coarse, p) / lp_norm_radial(finer, p) - 1.0));
    rep.at_most("quadrature_self_convergence", drift, 1e-6);

    double mass_fraction = 1.0;
    for (double t : {20.0, 60.0, 150.0}) {
      RadialProfile prof = kernel_profile(a, t);
      const double total = lp_norm_radial(prof, 1.0);
      const double width = 8.0 * std::sqrt(1.0 + t);
      for (std::size_t i = 0; i < prof.r.size(); ++i)
        if (std::abs(prof.r[i] - t) > width) prof.values[i] = 0.0;
      mass_fraction = std::min(mass_fraction, lp_norm_radial(prof, 1.0) / total);
    }
    rep.at_most("wavefront_mass_outside", 1.0 - mass_fraction, 0.01);

    KernelDecaySpec ladder = acceptance_kernel_spec(opt);
    ladder.kinds = {KernelKind::A};
    ladder.alphas = {0, 1};
    ladder.p_list = {1.0, kInf};
    const auto rows = kernel_decay(ladder);
    // rows: (alpha0, p1), (alpha0, inf), (alpha1, p1), (alpha1, inf)
    rep.within("ladder_gap_L1", rows[2].fit.slope - rows[0].fit.slope, -0.5, 0.1);
    rep.within("ladder_gap_Linf", rows[3].fit.slope - rows[1].fit.slope, -0.5, 0.1);
  }

  // Determinism of emitted tables.
  {
    KernelDecaySpec spec;
    spec.kinds = {KernelKind::A};
    spec.alphas = {0};
    spec.p_list = {2.0};
    spec.t_max = 40.0;
    spec.points = 8;
    std::ostringstream a, b;
    write_kernel_csv(a, kernel_decay(spec));
    spec.workers = 2;
    write_kernel_csv(b, kernel_decay(spec));
    rep.check("csv_bit_identical", a.str() == b.str() ? 1.0 : 0.0, a.str() == b.str(), "== 1");
  }
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "eigen-identities", false, eigen_identities},
      {2, "propagator-oracle", false, propagator_oracle},
      {3, "wave-form", false, wave_form},
      {4, "linear-energy", false, linear_energy},
      {5, "kernel-decay", false, kernel_decay_exponents},
      {6, "l2-kernel-rate", false, l2_kernel_rate},
      {7, "highfreq-decay", false, highfreq_decay},
      {8, "nonlinear-structure", false, nonlinear_structure},
      {9, "linear-box-l1", true, linear_box_l1},
      {10, "property-suite", false, property_suite},
  };
  return list;
}

std::vector<CriterionResult> reproduce(const std::string& which, const ReproduceOptions& options) {
  std::vector<const Criterion*> selected;
  for (const Criterion& c : criteria())
    if (which == "all" || which == c.name || which == std::to_string(c.number)) selected.push_back(&c);
  if (selected.empty()) {
    std::string names;
    for (const Criterion& c : criteria()) names += " " + c.name;
    throw std::invalid_argument("unknown criterion '" + which + "'; expected all or one of:" + names);
  }
  std::vector<CriterionResult> out;
  for (const Criterion* c : selected) {
    CriterionResult res;
    const auto start = std::chrono::steady_clock::now();
    if (c->slow && which == "all" && !options.include_slow) {
      res.skipped = true;
      res.passed = true;
      res.details.push_back("slow; rerun with the slow criteria enabled");
    } else {
      if (options.log) *options.log << "running [" << c->number << "] " << c->name << '\n';
      try {
        res = c->run(options);
      } catch (const std::exception& e) {
        res.passed = false;
        res.details.push_back(std::string("error: ") + e.what());
      }
    }
    res.number = c->number;
    res.name = c->name;
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(res));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.skipped ? "SKIP" : r.passed ? "PASS" : "FAIL") << " [" << r.number << "] " << r.name << " ("
     << std::fixed << std::setprecision(2) << r.seconds << " s)";
  for (std::size_t i = 0; i < r.details.size(); ++i) os << (i == 0 ? ": " : "; ") << r.details[i];
  return os.str();
}

}  // namespace visco::lab
