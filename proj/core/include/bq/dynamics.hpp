#pragma once

#include <utility>

#include "bq/coefficient_model.hpp"
#include "bq/fields.hpp"

namespace bq {

/// Velocity (u1 cosine, u2 sine) and temperature perturbation (sine) at time t.
struct State {
  SpectralField u1;
  SpectralField u2;
  SpectralField theta;
  double t = 0.0;

  /// Conduction state: u = 0, theta = 0.
  static State zero(const Grid& grid, double t = 0.0);

  const Grid& grid() const noexcept { return theta.grid(); }
};

/// Time derivatives with the same parities as State.
struct Tendency {
  SpectralField du1;
  SpectralField du2;
  SpectralField dtheta;

  static Tendency zero(const Grid& grid);
  Tendency& operator+=(const Tendency& o);
  Tendency& operator*=(double s);
};

/// Zero-mean cosine pressure.
struct PressureField {
  SpectralField p;
};

struct RhsOptions {
  /// Momentum buoyancy theta e2 + (1-y) e2 and the +u2 term of the temperature equation.
  bool coupling = true;
  bool advection = true;
};

/// Per-mode projection onto divergence-free fields with zero u1 mean.
/// Throws std::invalid_argument unless f1 is COSINE and f2 is SINE.
std::pair<SpectralField, SpectralField> leray_project(const SpectralField& f1,
                                                      const SpectralField& f2);

/// Coefficient-level divergence ddx(u1) + ddy(u2), a cosine field.
SpectralField divergence(const SpectralField& u1, const SpectralField& u2);

/// Sine coefficients of 1 - y (nonzero only at k = 0: 2/(n pi)).
SpectralField background_buoyancy(const Grid& grid);

/// Full semi-discrete tendency with 2/3 dealiasing after every product.
Tendency rhs(const State& s, const CoefficientModel& model, const RhsOptions& opts = {});

/// Part of the tendency integrated explicitly by the IMEX schemes, i.e.
/// rhs minus nu_min Lap u and kappa_min Lap theta.
struct SplitEvaluation {
  Tendency explicit_part;
  /// mesh max of |u|
  double max_speed = 0.0;
  /// max over the mesh of (nu(theta) - nu_min) / nu_min, likewise for kappa
  double nu_excess_ratio = 0.0;
  double kappa_excess_ratio = 0.0;
};

SplitEvaluation evaluate_split(const State& s, const CoefficientModel& model,
                               const RhsOptions& opts = {});

/// Solves Lap p = div G mode by mode, where G is the unprojected velocity forcing.
PressureField recover_pressure(const State& s, const CoefficientModel& model,
                               const RhsOptions& opts = {});

/// Unprojected velocity forcing G = div(nu grad u) - u.grad u + theta e2 + (1-y) e2.
std::pair<SpectralField, SpectralField> velocity_forcing(const State& s,
                                                         const CoefficientModel& model,
                                                         const RhsOptions& opts = {});

/// Pressure from a forcing pair: p = -(i a G1 + b G2) / (a^2 + b^2), mode (0,0) = 0.
SpectralField pressure_from_forcing(const SpectralField& g1, const SpectralField& g2);

/// Max coefficient divergence relative to max(1, max velocity coefficient).
double divergence_residual(const State& s);

/// Throws std::invalid_argument on wrong parities or grid mismatch and
/// std::domain_error on non-finite coefficients.
void validate_state(const State& s);

/// Projects velocity, pins the u1 mean and applies the 2/3 mask to all fields.
void enforce_invariants(State& s);

}  // namespace bq
