#pragma once

namespace visco {

/// Smooth radial low-pass profile separating the wave-dominated low band from
/// the exponentially damped high band at scale M1 = 1/mu.
///
/// low(rho) is 1 for rho <= M1/2, 0 for rho >= M1/sqrt(2), and in between
///   h((M1/sqrt2 - rho) / (M1/sqrt2 - M1/2)),  h(x) = g(x) / (g(x) + g(1-x)),
/// with g(x) = exp(-1/x) for x > 0 and 0 otherwise. high(rho) = 1 - low(rho).
class CutoffProfile {
public:
  explicit CutoffProfile(double m1);

  static CutoffProfile for_viscosity(double mu);

  double m1() const { return m1_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  double low(double rho) const;
  double high(double rho) const { return 1.0 - low(rho); }

private:
  double m1_;
  double inner_;
  double outer_;
};

}  // namespace visco
