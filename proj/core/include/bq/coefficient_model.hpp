#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bq {

using ScalarFn = std::function<double(double)>;

/// Temperature-dependent viscosity nu(tau) and diffusivity kappa(tau) with
/// the structural constants the a priori estimates are stated in.
///
/// The struct is an immutable value once built by a preset; sharing one
/// instance across threads is safe.
struct CoefficientModel {
  std::string name;

  ScalarFn nu;
  ScalarFn nu_prime;
  ScalarFn kappa;
  ScalarFn kappa_prime;
  ScalarFn kappa_double_prime;
  /// K(tau) = int_0^tau kappa.
  ScalarFn kappa_antiderivative;
  /// B(tau) = int_0^tau sqrt(kappa).
  ScalarFn sqrt_kappa_antiderivative;

  double nu_min = 1.0;
  double kappa_min = 1.0;
  double c0 = 1.0;
  double r = 0.0;
  double c0_tilde = 1.0;

  /// Set when nu (resp. kappa) does not depend on tau; lets the dynamics
  /// skip pointwise coefficient evaluation.
  bool nu_is_constant = false;
  bool kappa_is_constant = false;

  static CoefficientModel constant(double nu0 = 1.0, double kappa0 = 1.0);
  /// nu = a + b/(1+tau^2), kappa = c + d/(1+tau^2).
  static CoefficientModel bounded_rational(double a = 1.0, double b = 1.0, double c = 1.0,
                                           double d = 1.0);
  /// kappa = 1 + tau^2, nu = 2 + sin(tau); c0 defaults to 3.
  static CoefficientModel quadratic_kappa(double c0 = 3.0);

  /// Names accepted by from_preset.
  static const std::vector<std::string>& preset_names();
};

/// Parameters for from_preset; unset values fall back to the preset defaults.
struct ModelParams {
  std::optional<double> nu0, kappa0;
  std::optional<double> a, b, c, d;
  std::optional<double> c0;
};

/// Throws std::invalid_argument for an unknown preset or non-positive floors.
CoefficientModel model_from_preset(const std::string& preset, const ModelParams& params = {});

/// B(tau) by adaptive Gauss-Kronrod quadrature of sqrt(kappa) to tolerance tol.
double integrate_sqrt_kappa(const ScalarFn& kappa, double tau, double tol = 1e-10);

struct AssumptionCheck {
  std::string name;
  /// min over samples of (rhs - lhs) / max(|rhs|, 1); negative means violated.
  double worst_margin = 0.0;
  double worst_tau = 0.0;
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  bool passed = true;
};

struct AssumptionReport {
  std::string model;
  double tau_lo = 0.0;
  double tau_hi = 0.0;
  int samples = 0;
  std::vector<AssumptionCheck> checks;

  bool passed() const;
  /// First violated check formatted with assumption, tau and both sides.
  std::string failure_message() const;
  const AssumptionCheck& check(const std::string& name) const;
};

class AssumptionViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Samples every structural assumption at `samples` equispaced points of
/// [tau_lo, tau_hi] plus tau in {0, -1, 1}, and cross-checks supplied
/// derivatives and antiderivatives against centered differences (h = 1e-5,
/// relative tolerance 1e-6).
AssumptionReport audit_assumptions(const CoefficientModel& model, double tau_lo = -20.0,
                                   double tau_hi = 20.0, int samples = 10000);

/// Throws AssumptionViolation with report.failure_message() when any check fails.
void require_assumptions(const AssumptionReport& report);

}  // namespace bq
