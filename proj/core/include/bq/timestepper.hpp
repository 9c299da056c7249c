#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bq/coefficient_model.hpp"
#include "bq/dynamics.hpp"
#include "bq/trajectory.hpp"

namespace bq {

enum class Scheme { ImexEuler, ImexBdf2 };

std::string to_string(Scheme s);
/// Accepts "IMEX_EULER" / "IMEX_BDF2" (case-insensitive, '-' or '_').
Scheme scheme_from_string(const std::string& name);

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::ImexBdf2;
  double cfl_safety = 0.5;
  bool adaptive = false;

  /// Throws std::invalid_argument unless dt > 0, t_end >= 0 and cfl_safety in (0, 1].
  void validate() const;
};

/// Raised when a fixed step exceeds the advective or explicit-diffusion limit.
class CflViolation : public std::runtime_error {
 public:
  CflViolation(const std::string& constraint, double dt, double limit);
  const std::string& constraint() const noexcept { return constraint_; }
  double dt() const noexcept { return dt_; }
  double limit() const noexcept { return limit_; }

 private:
  std::string constraint_;
  double dt_;
  double limit_;
};

/// Largest z = floor * lambda * dt for which the scheme, applied to
/// s' = -(1 + excess_ratio) floor lambda s with the floor part integrated
/// exactly, stays stable on all of [0, z].  Infinite when it never fails.
double stability_threshold(Scheme scheme, double excess_ratio);

struct StepLimits {
  double advective = 0.0;
  double viscous = 0.0;
  double conductive = 0.0;

  double limit() const noexcept;
  /// "advective", "viscous" or "conductive".
  std::string limiting() const;
};

StepLimits step_limits(const SplitEvaluation& eval, const Grid& grid,
                       const CoefficientModel& model, Scheme scheme, double cfl_safety);

/// Extra tendency f(t) added to the explicit part; its velocity is projected.
using ForcingFn = std::function<Tendency(double t, const Grid& grid)>;

/// Integrating-factor IMEX integrator.  Holds the BDF2 history and the
/// per-mode factors for the current step size.
class Stepper {
 public:
  Stepper(CoefficientModel model, StepperConfig cfg, RhsOptions rhs = {}, ForcingFn forcing = {});

  /// One step of size min(current_dt(), t_stop - s.t).  Returns the step taken.
  /// Throws CflViolation (non-adaptive) or std::domain_error on a non-finite state.
  double advance(State& s, double t_stop);

  double current_dt() const noexcept { return dt_; }
  const std::vector<DtChange>& dt_log() const noexcept { return log_; }
  /// Drops BDF2 history; the next step is an Euler startup step.
  void reset_history() noexcept { history_.reset(); }

 private:
  struct Factors {
    double h = 0.0;
    std::vector<double> nu1, nu2, kappa1, kappa2;
  };
  struct History {
    Tendency explicit_part;
    State state;
    double h = 0.0;
  };

  Tendency explicit_tendency(const State& s, SplitEvaluation& eval) const;
  const Factors& factors(const Grid& grid, double h);
  void change_dt(double t, double new_dt, const std::string& reason);

  CoefficientModel model_;
  StepperConfig cfg_;
  RhsOptions rhs_;
  ForcingFn forcing_;
  double dt_;
  Factors factors_;
  std::optional<History> history_;
  std::vector<DtChange> log_;
};

/// Advances s by cfg.dt with a single Euler startup step (subcycled when
/// adaptive).
State step(const State& s, const CoefficientModel& model, const StepperConfig& cfg);

struct RunOptions {
  RhsOptions rhs;
  ForcingFn forcing;
  /// Store the state every this many steps (0: never).
  int checkpoint_every = 0;
  bool time_derivatives = false;
  bool pressure = true;
  /// Called after every recorded state.
  std::function<void(const State&, const DiagnosticsRecord&)> observer;
};

/// Steps s0 to cfg.t_end, recording every record_every steps and the initial state.
/// Step errors end the run with failed set and the partial trajectory kept.
Trajectory run(const State& s0, const CoefficientModel& model, const StepperConfig& cfg,
               int record_every, const RunOptions& opts = {});

}  // namespace bq
