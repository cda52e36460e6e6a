#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "visco/diagnostics.hpp"
#include "visco/field.hpp"

namespace visco {

enum class InitialKind { Zero, TaylorGreen, Random, GaussianBump };

std::string to_string(InitialKind kind);
InitialKind parse_initial_kind(const std::string& s);

/// Velocity u0 plus the strain generated from it. The velocity is Leray-projected,
/// zero-mean, dealiased and scaled so that max_x |u0| = amplitude. E0 = F - I where
/// F solves dF/dtau = -u0.grad F + (grad u0) F, F(0) = I, over pseudo-time flow_time.
struct InitialDataSpec {
  InitialKind kind = InitialKind::TaylorGreen;
  double amplitude = 1e-2;
  double flow_time = 0.0;
  std::uint64_t seed = 1;
  /// Taylor-Green integer wavenumber.
  int mode = 1;
  /// Random spectra |xi|^2 exp(-|xi|^2 / k0^2), k0 in physical units.
  double k0 = 2.0;
  /// Gaussian bump standard deviation, physical length.
  double width = 2.0;
  /// Pseudo-time step bound of the RK4 transport.
  double transport_step = 0.01;
  /// Rejection threshold on the strain constraint residuals.
  double tolerance = 1e-6;
};

class InitialDataRejected : public std::runtime_error {
public:
  InitialDataRejected(const std::string& what, const ConstraintResiduals& r)
      : std::runtime_error(what), residuals_(r) {}
  const ConstraintResiduals& residuals() const { return residuals_; }

private:
  ConstraintResiduals residuals_;
};

SpectralVectorField initial_velocity(const Grid& grid, const InitialDataSpec& spec);

/// Integrates the deformation transport along the fixed field v for pseudo-time s
/// and returns E = F - I (dealiased products, RK4 with step <= max_step).
SpectralTensorField transported_strain(const SpectralVectorField& v, double s, double max_step);

/// Builds the state and checks its constraint residuals against spec.tolerance.
ViscoState generate_initial_data(const Grid& grid, const InitialDataSpec& spec);

}  // namespace visco
