#include "bq/coefficient_model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace bq {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("coefficient model: ") + what +
                                " must be positive and finite, got " + std::to_string(v));
  }
}

}  // namespace

double integrate_sqrt_kappa(const ScalarFn& kappa, double tau, double tol) {
  if (tau == 0.0) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [&kappa](double s) { return std::sqrt(kappa(s)); };
  return gauss_kronrod<double, 15>::integrate(integrand, 0.0, tau, 15, tol);
}

CoefficientModel CoefficientModel::constant(double nu0, double kappa0) {
  require_positive(nu0, "nu0");
  require_positive(kappa0, "kappa0");
  CoefficientModel m;
  m.name = "constant";
  m.nu = [nu0](double) { return nu0; };
  m.nu_prime = [](double) { return 0.0; };
  m.kappa = [kappa0](double) { return kappa0; };
  m.kappa_prime = [](double) { return 0.0; };
  m.kappa_double_prime = [](double) { return 0.0; };
  m.kappa_antiderivative = [kappa0](double t) { return kappa0 * t; };
  const double sk = std::sqrt(kappa0);
  m.sqrt_kappa_antiderivative = [sk](double t) { return sk * t; };
  m.nu_min = nu0;
  m.kappa_min = kappa0;
  m.c0 = std::max({nu0, kappa0, 1.0});
  m.r = 0.0;
  m.c0_tilde = 1.0;
  m.nu_is_constant = true;
  m.kappa_is_constant = true;
  return m;
}

CoefficientModel CoefficientModel::bounded_rational(double a, double b, double c, double d) {
  require_positive(a, "a");
  require_positive(c, "c");
  if (b < 0.0 || d < 0.0) throw std::invalid_argument("bounded-rational: b and d must be >= 0");
  CoefficientModel m;
  m.name = "bounded-rational";
  m.nu = [a, b](double t) { return a + b / (1.0 + t * t); };
  m.nu_prime = [b](double t) {
    const double q = 1.0 + t * t;
    return -2.0 * b * t / (q * q);
  };
  m.kappa = [c, d](double t) { return c + d / (1.0 + t * t); };
  m.kappa_prime = [d](double t) {
    const double q = 1.0 + t * t;
    return -2.0 * d * t / (q * q);
  };
  m.kappa_double_prime = [d](double t) {
    const double q = 1.0 + t * t;
    return d * (6.0 * t * t - 2.0) / (q * q * q);
  };
  m.kappa_antiderivative = [c, d](double t) { return c * t + d * std::atan(t); };
  const ScalarFn kappa = m.kappa;
  m.sqrt_kappa_antiderivative = [kappa](double t) { return integrate_sqrt_kappa(kappa, t); };
  m.nu_min = a;
  m.kappa_min = c;
  m.r = 0.0;
  // max |2t/(1+t^2)^2| = 3 sqrt(3)/8 and max |(6t^2-2)/(1+t^2)^3| = 2.
  const double slope = 3.0 * std::sqrt(3.0) / 8.0;
  m.c0 = std::max({a + b, c + d, slope * b, slope * d, 1.0});
  m.c0_tilde = std::max({slope * b, slope * d, 2.0 * d, 1.0}) / c;
  m.nu_is_constant = b == 0.0;
  m.kappa_is_constant = d == 0.0;
  return m;
}

CoefficientModel CoefficientModel::quadratic_kappa(double c0) {
  CoefficientModel m;
  m.name = "quadratic-kappa";
  m.nu = [](double t) { return 2.0 + std::sin(t); };
  m.nu_prime = [](double t) { return std::cos(t); };
  m.kappa = [](double t) { return 1.0 + t * t; };
  m.kappa_prime = [](double t) { return 2.0 * t; };
  m.kappa_double_prime = [](double) { return 2.0; };
  m.kappa_antiderivative = [](double t) { return t + t * t * t / 3.0; };
  m.sqrt_kappa_antiderivative = [](double t) {
    return 0.5 * (t * std::sqrt(1.0 + t * t) + std::asinh(t));
  };
  m.nu_min = 1.0;
  m.kappa_min = 1.0;
  m.c0 = c0;
  m.r = 1.0;
  m.c0_tilde = 2.0;
  return m;
}

const std::vector<std::string>& CoefficientModel::preset_names() {
  static const std::vector<std::string> names = {"constant", "bounded-rational",
                                                 "quadratic-kappa"};
  return names;
}

CoefficientModel model_from_preset(const std::string& preset, const ModelParams& p) {
  if (preset == "constant") return CoefficientModel::constant(p.nu0.value_or(1.0), p.kappa0.value_or(1.0));
  if (preset == "bounded-rational") {
    return CoefficientModel::bounded_rational(p.a.value_or(1.0), p.b.value_or(1.0),
                                              p.c.value_or(1.0), p.d.value_or(1.0));
  }
  if (preset == "quadratic-kappa") return CoefficientModel::quadratic_kappa(p.c0.value_or(3.0));
  throw std::invalid_argument("unknown model preset '" + preset + "'");
}

bool AssumptionReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const AssumptionCheck& AssumptionReport::check(const std::string& check_name) const {
  for (const auto& c : checks) {
    if (c.name == check_name) return c;
  }
  throw std::out_of_range("no assumption check named '" + check_name + "'");
}

std::string AssumptionReport::failure_message() const {
  for (const auto& c : checks) {
    if (c.passed) continue;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s: %s violated at tau = %.17g (lhs = %.17g, rhs = %.17g)",
                  model.c_str(), c.name.c_str(), c.worst_tau, c.worst_lhs, c.worst_rhs);
    return buf;
  }
  return {};
}

void require_assumptions(const AssumptionReport& report) {
  if (!report.passed()) throw AssumptionViolation(report.failure_message());
}

namespace {

// Tracks the tightest sample of one "lhs <= rhs" check.
class CheckAccumulator {
 public:
  explicit CheckAccumulator(std::string name) { result_.name = std::move(name); }

  void add(double tau, double lhs, double rhs) {
    const double margin = (rhs - lhs) / std::max(std::abs(rhs), 1.0);
    const bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs;
    if (first_ || margin < result_.worst_margin || (!ok && result_.passed)) {
      result_.worst_margin = std::isfinite(margin) ? margin : -std::numeric_limits<double>::infinity();
      result_.worst_tau = tau;
      result_.worst_lhs = lhs;
      result_.worst_rhs = rhs;
      first_ = false;
    }
    result_.passed = result_.passed && ok;
  }

  AssumptionCheck result() const { return result_; }

 private:
  AssumptionCheck result_;
  bool first_ = true;
};

}  // namespace

AssumptionReport audit_assumptions(const CoefficientModel& m, double tau_lo, double tau_hi,
                                   int samples) {
  if (!(tau_lo < tau_hi)) throw std::invalid_argument("audit_assumptions: need tau_lo < tau_hi");
  if (samples < 2) throw std::invalid_argument("audit_assumptions: need samples >= 2");

  std::vector<double> taus;
  taus.reserve(static_cast<std::size_t>(samples) + 3);
  for (int q = 0; q < samples; ++q) {
    taus.push_back(tau_lo + (tau_hi - tau_lo) * q / (samples - 1));
  }
  for (double t : {0.0, -1.0, 1.0}) taus.push_back(t);

  CheckAccumulator nu_lower("nu_lower_bound"), kappa_lower("kappa_lower_bound");
  CheckAccumulator nu_prime_growth("nu_prime_growth"), kappa_prime_growth("kappa_prime_growth");
  CheckAccumulator nu_growth("nu_growth"), kappa_growth("kappa_growth");
  CheckAccumulator nu_prime_ratio("nu_prime_ratio"), kappa_prime_ratio("kappa_prime_ratio");
  CheckAccumulator kappa_pp_ratio("kappa_double_prime_ratio");
  CheckAccumulator fd_nu("nu_prime_fd"), fd_kappa("kappa_prime_fd");
  CheckAccumulator fd_kappa_p("kappa_double_prime_fd");
  CheckAccumulator fd_k("kappa_antiderivative_fd"), fd_b("sqrt_kappa_antiderivative_fd");
  CheckAccumulator origin("antiderivatives_vanish_at_zero");
  CheckAccumulator monotone("antiderivatives_increasing");

  constexpr double h = 1e-5;
  constexpr double fd_tol = 1e-6;
  auto fd_check = [&](CheckAccumulator& acc, const ScalarFn& f, const ScalarFn& df, double t) {
    const double fd = (f(t + h) - f(t - h)) / (2.0 * h);
    const double exact = df(t);
    const double scale = std::max({std::abs(exact), std::abs(f(t)), 1.0});
    acc.add(t, std::abs(fd - exact), fd_tol * scale);
  };
  const ScalarFn sqrt_kappa = [&m](double t) { return std::sqrt(m.kappa(t)); };

  for (double t : taus) {
    const double nu = m.nu(t);
    const double kappa = m.kappa(t);
    const double nup = std::abs(m.nu_prime(t));
    const double kp = std::abs(m.kappa_prime(t));
    const double kpp = std::abs(m.kappa_double_prime(t));
    const double at = std::abs(t);

    nu_lower.add(t, m.nu_min, nu);
    kappa_lower.add(t, m.kappa_min, kappa);
    nu_prime_growth.add(t, nup, m.c0 * (std::pow(at, m.r) + 1.0));
    kappa_prime_growth.add(t, kp, m.c0 * (std::pow(at, m.r) + 1.0));
    nu_growth.add(t, nu, m.c0 * (std::pow(at, m.r + 1.0) + 1.0));
    kappa_growth.add(t, kappa, m.c0 * (std::pow(at, m.r + 1.0) + 1.0));
    nu_prime_ratio.add(t, nup / kappa, m.c0_tilde);
    kappa_prime_ratio.add(t, kp / kappa, m.c0_tilde);
    kappa_pp_ratio.add(t, kpp / kappa, m.c0_tilde);

    fd_check(fd_nu, m.nu, m.nu_prime, t);
    fd_check(fd_kappa, m.kappa, m.kappa_prime, t);
    fd_check(fd_kappa_p, m.kappa_prime, m.kappa_double_prime, t);
    fd_check(fd_k, m.kappa_antiderivative, m.kappa, t);
    fd_check(fd_b, m.sqrt_kappa_antiderivative, sqrt_kappa, t);
  }

  origin.add(0.0, std::abs(m.kappa_antiderivative(0.0)), 1e-14);
  origin.add(0.0, std::abs(m.sqrt_kappa_antiderivative(0.0)), 1e-14);

  // Increase between consecutive equispaced samples.
  double prev_k = m.kappa_antiderivative(taus[0]);
  double prev_b = m.sqrt_kappa_antiderivative(taus[0]);
  for (int q = 1; q < samples; ++q) {
    const double t = taus[static_cast<std::size_t>(q)];
    const double k = m.kappa_antiderivative(t);
    const double b = m.sqrt_kappa_antiderivative(t);
    monotone.add(t, prev_k, k);
    monotone.add(t, prev_b, b);
    prev_k = k;
    prev_b = b;
  }

  AssumptionReport report;
  report.model = m.name;
  report.tau_lo = tau_lo;
  report.tau_hi = tau_hi;
  report.samples = samples;
  for (const CheckAccumulator* acc :
       {&nu_lower, &kappa_lower, &nu_prime_growth, &kappa_prime_growth, &nu_growth, &kappa_growth,
        &nu_prime_ratio, &kappa_prime_ratio, &kappa_pp_ratio, &fd_nu, &fd_kappa, &fd_kappa_p, &fd_k,
        &fd_b, &origin, &monotone}) {
    report.checks.push_back(acc->result());
  }
  return report;
}

}  // namespace bq
