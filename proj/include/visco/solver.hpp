#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "visco/diagnostics.hpp"
#include "visco/initial_data.hpp"
#include "visco/semigroup.hpp"

namespace visco {

/// Nonlinear terms of the projected system
///   u_t - mu Lap u - P div E = N1,  N1 = P(div(E E^T) - u.grad u)
///   E_t - grad u             = N2,  N2 = (grad u) E - u.grad E
/// Products are formed on the grid from dealiased inputs; both results are dealiased.
struct NonlinearTerms {
  SpectralVectorField n1;
  SpectralTensorField n2;
};

NonlinearTerms rhs_nonlinear(const ViscoState& s);

/// The linear part: u' = -mu|xi|^2 u + P(i E xi), E' = i u xi^T.
ViscoState rhs_linear(const ViscoState& s, double mu);

enum class Integrator { Etd2, Rk4 };

std::string to_string(Integrator integrator);
Integrator parse_integrator(const std::string& s);

/// Thrown when a step grows the state norm by more than kBlowUpFactor.
class StepRejected : public std::runtime_error {
public:
  StepRejected(const std::string& what, double t) : std::runtime_error(what), t_(t) {}
  double time() const { return t_; }

private:
  double t_;
};

inline constexpr double kBlowUpFactor = 10.0;

/// Fixed-step integrator for one (grid, mu, dt). etd2 caches the per-mode
/// propagator and Duhamel weights; rk4 is the classical scheme on the full
/// right-hand side. The velocity is re-projected after every step.
class Stepper {
public:
  Stepper(const Grid& grid, double mu, double dt, Integrator integrator, bool nonlinear = true);

  ViscoState step(const ViscoState& s) const;

  double dt() const { return dt_; }
  double mu() const { return mu_; }
  Integrator integrator() const { return integrator_; }

private:
  ViscoState etd2(const ViscoState& s) const;
  ViscoState rk4(const ViscoState& s) const;
  ViscoState apply(const std::vector<BlockWeights>& w, const ViscoState& s) const;
  void apply_add(const std::vector<BlockWeights>& w, const SpectralVectorField& u,
                 const SpectralTensorField& E, double sign, ViscoState& out) const;

  Grid grid_;
  double mu_;
  double dt_;
  Integrator integrator_;
  bool nonlinear_;
  std::vector<BlockWeights> propagator_, phi1_, phi2_;
};

ViscoState step(const ViscoState& s, double dt, double mu, Integrator integrator, bool nonlinear = true);

/// Sum of squared coefficient magnitudes of (u, E); the blow-up guard's measure.
double coefficient_mass(const ViscoState& s);

struct RunConfig {
  int n = 32;
  double length = 6.283185307179586;
  double mu = 1.0;
  double dt = 0.05;
  double t_end = 10.0;
  /// Output interval; must be a multiple of dt and divide t_end.
  double cadence = 0.5;
  Integrator integrator = Integrator::Etd2;
  bool nonlinear = true;
  InitialDataSpec initial;
  RecordOptions record;
  /// Keep the full state at every output time.
  bool keep_snapshots = false;
};

/// Throws std::invalid_argument describing the first violated condition.
void validate(const RunConfig& config);


struct RunResult {
  std::vector<NormRecord> records;
  std::vector<ViscoState> snapshots;
};

/// Steps from 0 to t_end, recording at every cadence. observer, if set, sees each
/// recorded state.
RunResult evolve(const RunConfig& config,
                 const std::function<void(const ViscoState&, const NormRecord&)>& observer = {});

/// As above from a given initial state (config.initial is ignored).
RunResult evolve_from(const RunConfig& config, ViscoState initial,
                      const std::function<void(const ViscoState&, const NormRecord&)>& observer = {});

}  // namespace visco
