#pragma once

#include "visco/field.hpp"
#include "visco/norms.hpp"

namespace visco {

/// Max-norm constraint residuals of a state.
struct ConstraintResiduals {
  /// relative_divergence(u): max |xi.u| / (|xi| max|u|).
  double divergence = 0.0;
  /// max_x |div E^T|, (div E^T)_i = d_j E_ji.
  double div_transpose = 0.0;
  /// max_x |det(I + E) - 1|.
  double determinant = 0.0;
  /// max_x over (i,j,k) of |d_k E_ij + E_lk d_l E_ij - d_j E_ik - E_lj d_l E_ik|.
  double compatibility = 0.0;

  double max_strain_residual() const;
};

ConstraintResiduals constraint_residuals(const ViscoState& s);

/// The twelve components of (u, E) as one field, for norms of the pair.
SpectralField<12> stack(const ViscoState& s);

/// Which quantities go into a run record.
struct RecordOptions {
  double mu = 1.0;
  /// Order window and weight of the energy functional D.
  int kappa1 = 0;
  int kappa2 = 3;
  double delta = 0.1;
  double besov_s = 1.5;
  double sobolev_s = 0.5;
  bool residuals = true;
};

/// Norms of one state. Keys:
///   u_l1, u_l2, u_linf, E_l2, E_linf  grid quadratures
///   energy        ||u||^2 + ||E||^2
///   grad_u_sq     ||grad u||^2
///   D             energy functional over [kappa1, kappa2]
///   besov         B^{-s}_{2,inf} proxy of (u, E)
///   hneg          H^{-s} norm of (u, E)
///   top_band      top-third spectral fraction of (u, E)
///   div, div_ET, det, compat   constraint residuals (if requested)
NormRecord state_record(const ViscoState& s, const RecordOptions& options);

}  // namespace visco
