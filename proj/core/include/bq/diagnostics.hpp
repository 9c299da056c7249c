#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bq/coefficient_model.hpp"
#include "bq/dynamics.hpp"

namespace bq {

/// Every norm, overshoot and dissipation the estimates are stated in, at one time.
struct DiagnosticsRecord {
  double t = 0.0;
  double norm_u_l2 = 0.0;
  double norm_theta_l2 = 0.0;
  double norm_theta_l4 = 0.0;
  double norm_theta_linf = 0.0;
  double norm_grad_u = 0.0;
  double norm_grad_theta = 0.0;
  double norm_lap_u = 0.0;
  double norm_lap_theta = 0.0;
  double norm_h3_u = 0.0;
  double norm_h3_theta = 0.0;
  double norm_grad_hat_theta = 0.0;
  double overshoot_plus_2 = 0.0;
  double overshoot_minus_2 = 0.0;
  double overshoot_plus_4 = 0.0;
  double overshoot_minus_4 = 0.0;
  double dissipation_u = 0.0;
  double dissipation_theta = 0.0;
  double norm_pressure_l2 = 0.0;
  double mean_u1 = 0.0;
  double div_residual = 0.0;

  /// <theta, u2>, the buoyancy work; not part of the CSV schema.
  double buoyancy_work = 0.0;
  /// ||u_t||, ||theta_t|| from the semi-discrete right-hand side, when requested.
  std::optional<double> norm_u_t;
  std::optional<double> norm_theta_t;
};

/// CSV column names in output order.
const std::vector<std::string>& csv_columns();
/// Values in csv_columns() order.
std::vector<double> csv_values(const DiagnosticsRecord& r);

struct RecordOptions {
  bool time_derivatives = false;
  bool pressure = true;
  RhsOptions rhs;
};

DiagnosticsRecord record(const State& s, const CoefficientModel& model,
                         const RecordOptions& opts = {});

/// A (t, value) series.
using Series = std::vector<std::pair<double, double>>;

/// Extracts one record field as a series.
Series series_of(const std::vector<DiagnosticsRecord>& records, double DiagnosticsRecord::*field);

struct TimeWindow {
  double begin = 0.1;
  double end = 1e300;
};

/// Least-squares slope of log(value) against t; decay at rate lambda means
/// value ~ exp(-lambda t).
struct DecayFit {
  double lambda = 0.0;
  double r_squared = 0.0;
  int samples = 0;
  /// Set when no sample in the window rises above the 1e-14 floor.
  bool fully_decayed = false;
};

/// Throws std::invalid_argument when fewer than 10 usable samples remain
/// but the series has not fully decayed.
DecayFit fit_decay_rate(const Series& series, TimeWindow window = {});

/// Pointwise L^2 velocity envelope from the energy estimate, with the
/// t exp(-nu t) limit form when |nu_min - kappa_min| < 1e-10.
double l2_envelope(double t, double u0_norm, double overshoot0, double nu_min,
                   double kappa_min);

struct EnvelopeReport {
  /// max over records of ||u(t)|| - envelope(t)
  double max_violation = 0.0;
  /// max over records of (||u(t)|| - envelope(t)) / envelope(t)
  double max_relative_violation = 0.0;
  double worst_t = 0.0;
  bool limit_form = false;
};

EnvelopeReport check_l2_envelope(const std::vector<DiagnosticsRecord>& records,
                                 const CoefficientModel& model);

/// Absorbing-ball radius 1/nu + |Omega|^{1/2}/nu + |Omega|^{1/p} + 1 with |Omega| = 1.
double absorbing_radius(double nu_min, double p);

/// Trapezoid integral of a piecewise-linear series over [begin, begin + length].
/// Throws std::invalid_argument when the window leaves the series span.
double time_average(const Series& series, double begin, double length);

struct EnergyReport {
  /// max over interior records of (1/2 dE/dt + D) - (||theta|| ||u|| + ||u||)
  double worst_residual = 0.0;
  double worst_t = 0.0;
  /// max |1/2 dE/dt + D - <theta, u2>|, the discrete identity defect
  double identity_defect = 0.0;
  int samples = 0;
};

/// Centered differences of ||u||^2; requires record spacing <= 0.01.
EnergyReport check_energy_inequality(const std::vector<DiagnosticsRecord>& records);

}  // namespace bq
