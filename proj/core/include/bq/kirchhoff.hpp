#pragma once

#include "bq/coefficient_model.hpp"
#include "bq/fields.hpp"

namespace bq {

/// Pointwise K(theta) = int_0^theta kappa.
RealField kirchhoff_hat(const RealField& theta, const CoefficientModel& model);

/// Pointwise B(theta) = int_0^theta sqrt(kappa).
RealField kirchhoff_breve(const RealField& theta, const CoefficientModel& model);

/// Relative L^2 discrepancies of
///   grad K(theta) = kappa(theta) grad theta
///   Lap K(theta)  = kappa(theta) Lap theta + kappa'(theta) |grad theta|^2
/// with the left sides differentiated spectrally and the right sides formed
/// pointwise on the mesh.
struct KirchhoffReport {
  double max_rel_err_grad = 0.0;
  double max_rel_err_lap = 0.0;
  /// Set when either discrepancy exceeds 1e-3, the signature of an
  /// under-resolved (aliased) input.
  bool aliasing_suspected = false;
};

/// theta is a sine-parity (Dirichlet) temperature perturbation.
KirchhoffReport verify_kirchhoff_identities(const RealField& theta, const CoefficientModel& model);

}  // namespace bq
