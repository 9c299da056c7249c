#include <cmath>
#include <numbers>

#include "bq/coefficient_model.hpp"
#include "bq/kirchhoff.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bq;
using std::numbers::pi;

namespace {

CoefficientModel exponential_kappa() {
  CoefficientModel m;
  m.name = "exp-kappa";
  m.nu = [](double) { return 1.0; };
  m.nu_prime = [](double) { return 0.0; };
  m.kappa = [](double t) { return std::exp(t); };
  m.kappa_prime = [](double t) { return std::exp(t); };
  m.kappa_double_prime = [](double t) { return std::exp(t); };
  m.kappa_antiderivative = [](double t) { return std::exp(t) - 1.0; };
  m.sqrt_kappa_antiderivative = [](double t) { return 2.0 * (std::exp(0.5 * t) - 1.0); };
  m.nu_min = 1.0;
  m.kappa_min = std::exp(-10.0);
  m.c0 = 2.0;
  m.r = 2.0;
  m.c0_tilde = 1.0;
  return m;
}

// Bisection for the first tau > 0 with e^tau = 2 (tau^3 + 1).
double exp_growth_crossing() {
  auto g = [](double t) { return std::exp(t) - 2.0 * (t * t * t + 1.0); };
  double lo = 2.0;
  double hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("constant model audit passes with zero derivative bounds") {
  const auto m = CoefficientModel::constant(1.0, 1.0);
  CHECK(m.c0 == 1.0);
  CHECK(m.c0_tilde == 1.0);
  const auto rep = audit_assumptions(m, -20.0, 20.0, 10000);
  CHECK(rep.passed());
  CHECK(rep.check("nu_prime_ratio").worst_lhs == 0.0);
  CHECK(rep.check("kappa_double_prime_ratio").worst_lhs == 0.0);
  CHECK_NOTHROW(require_assumptions(rep));
}

TEST_CASE("every shipped preset passes the audit on [-20, 20]") {
  for (const auto& name : CoefficientModel::preset_names()) {
    const auto m = model_from_preset(name);
    const auto rep = audit_assumptions(m, -20.0, 20.0, 10000);
    INFO(name << ": " << rep.failure_message());
    CHECK(rep.passed());
  }
}

TEST_CASE("quadratic-kappa ratios and the c0 = 2 growth failure") {
  const auto rep = audit_assumptions(CoefficientModel::quadratic_kappa(3.0), -10.0, 10.0, 20001);
  CHECK(rep.passed());
  // analytic maxima: kappa'/kappa = 1 at tau = 1, kappa''/kappa = 2 at 0, |nu'|/kappa = 1 at 0
  CHECK(rep.check("kappa_prime_ratio").worst_lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.check("kappa_double_prime_ratio").worst_lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rep.check("nu_prime_ratio").worst_lhs == doctest::Approx(1.0).epsilon(1e-12));

  // 2 + sin(tau) <= 2 (tau^2 + 1) breaks for small positive tau
  const auto bad = audit_assumptions(CoefficientModel::quadratic_kappa(2.0), -10.0, 10.0, 20001);
  CHECK_FALSE(bad.passed());
  const auto& g = bad.check("nu_growth");
  CHECK_FALSE(g.passed);
  CHECK(g.worst_tau > 0.0);
  CHECK(g.worst_tau < 1.0);
  CHECK(g.worst_lhs > g.worst_rhs);
  CHECK(bad.check("kappa_growth").passed);
  CHECK_THROWS_AS(require_assumptions(bad), AssumptionViolation);
  CHECK(bad.failure_message().find("nu_growth") != std::string::npos);
}

TEST_CASE("exponential kappa passes ratios but fails polynomial growth") {
  const auto rep = audit_assumptions(exponential_kappa(), -10.0, 10.0, 20001);
  CHECK(rep.check("kappa_prime_ratio").passed);
  CHECK(rep.check("kappa_double_prime_ratio").passed);
  CHECK(rep.check("nu_prime_ratio").passed);
  const auto& g = rep.check("kappa_growth");
  CHECK_FALSE(g.passed);
  // the worst sample sits at the right end; the first violation is at the crossing
  const double crossing = exp_growth_crossing();
  CHECK(crossing > 5.0);
  CHECK(crossing < 10.0);
  CHECK(g.worst_tau > crossing);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("audit argument validation") {
  const auto m = CoefficientModel::constant();
  CHECK_THROWS_AS((void)audit_assumptions(m, 1.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS((void)audit_assumptions(m, 0.0, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS((void)model_from_preset("nope"), std::invalid_argument);
  CHECK_THROWS_AS((void)CoefficientModel::constant(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("finite-difference audit catches a wrong derivative") {
  auto m = CoefficientModel::quadratic_kappa();
  m.kappa_prime = [](double t) { return 2.0 * t + 1e-3; };
  const auto rep = audit_assumptions(m, -5.0, 5.0, 101);
  CHECK_FALSE(rep.check("kappa_prime_fd").passed);
}

TEST_CASE("sqrt-kappa antiderivative") {
  const auto q = CoefficientModel::quadratic_kappa();
  const double closed = 0.5 * (std::sqrt(2.0) + std::asinh(1.0));
  CHECK(closed == doctest::Approx(1.1477935746).epsilon(1e-10));
  CHECK(std::abs(q.sqrt_kappa_antiderivative(1.0) - closed) <= 1e-15);
  CHECK(std::abs(integrate_sqrt_kappa(q.kappa, 1.0) - closed) <= 1e-8);
  CHECK(std::abs(integrate_sqrt_kappa(q.kappa, -3.0) + q.sqrt_kappa_antiderivative(3.0)) <= 1e-8);

  const auto br = CoefficientModel::bounded_rational();
  CHECK(br.sqrt_kappa_antiderivative(0.0) == 0.0);
  CHECK(br.sqrt_kappa_antiderivative(2.0) > br.sqrt_kappa_antiderivative(1.0));
}

TEST_CASE("kirchhoff transforms") {
  const Grid g(32, 64);
  const auto theta = RealField::from_function(g, [](double x, double y) {
    return std::sin(pi * y) * (0.7 + 0.2 * std::cos(2 * pi * x));
  });
  const auto c = CoefficientModel::constant(1.0, 3.0);
  CHECK(norm_lp(kirchhoff_hat(theta, c) - 3.0 * theta, kInfinity) <= 1e-15);
  const auto four = CoefficientModel::constant(1.0, 4.0);
  CHECK(norm_lp(kirchhoff_breve(theta, four) - 2.0 * theta, kInfinity) <= 1e-15);
  CHECK(norm_lp(kirchhoff_hat(RealField(g), c), kInfinity) == 0.0);
  CHECK(norm_lp(kirchhoff_breve(RealField(g), four), kInfinity) == 0.0);

  const auto q = CoefficientModel::quadratic_kappa();
  const auto s = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  const auto ref = s.map([](double v) { return v + v * v * v / 3.0; });
  CHECK(norm_lp(kirchhoff_hat(s, q) - ref, kInfinity) <= 1e-12);
}

TEST_CASE("kirchhoff identities") {
  const Grid g(128, 64);
  const auto s = RealField::from_function(g, [](double, double y) { return 0.5 * std::sin(pi * y); });
  const auto rc = verify_kirchhoff_identities(s, CoefficientModel::constant(1.0, 2.5));
  CHECK(rc.max_rel_err_grad <= 1e-12);
  CHECK(rc.max_rel_err_lap <= 1e-12);
  CHECK_FALSE(rc.aliasing_suspected);

  const auto rq = verify_kirchhoff_identities(s, CoefficientModel::quadratic_kappa());
  CHECK(rq.max_rel_err_grad <= 1e-8);
  CHECK(rq.max_rel_err_lap <= 1e-8);

  // energy near the resolution limit aliases the cubic K(theta)
  const auto rough = RealField::from_function(g, [](double x, double y) {
    return 0.8 * std::sin(pi * y) + 0.5 * std::sin(60 * pi * y) * std::cos(2 * pi * 60 * x);
  });
  const auto ra = verify_kirchhoff_identities(rough, CoefficientModel::quadratic_kappa());
  CHECK(ra.aliasing_suspected);
}

TEST_CASE("property: kirchhoff_hat is monotone") {
  const Grid g(32, 16);
  const auto q = CoefficientModel::quadratic_kappa();
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto a = to_physical(testing::random_band_limited(g, Parity::Sine, seed, 4, 4));
    const auto b = a + a.map([](double v) { return std::abs(v) * 0.3 + 0.01; });
    const auto ha = kirchhoff_hat(a, q);
    const auto hb = kirchhoff_hat(b, q);
    bool ordered = true;
    for (std::size_t p = 0; p < ha.values().size(); ++p) ordered = ordered && ha.values()[p] <= hb.values()[p];
    CHECK(ordered);
  }
}

TEST_CASE("property: Kirchhoff gradients dominate the floors") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::quadratic_kappa(), CoefficientModel::bounded_rational(),
                        CoefficientModel::constant(1.0, 2.0)}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto ts = dealiased(testing::random_band_limited(g, Parity::Sine, seed, 6, 6));
      const auto theta = to_physical(ts) * 0.2;
      const double grad = sobolev_norm(to_spectral(theta, Parity::Sine), 1);
      const double ghat = sobolev_norm(to_spectral(kirchhoff_hat(theta, m), Parity::Sine), 1);
      const double gbrv = sobolev_norm(to_spectral(kirchhoff_breve(theta, m), Parity::Sine), 1);
      CHECK(m.kappa_min * grad <= ghat * (1.0 + 1e-8));
      CHECK(std::sqrt(m.kappa_min) * grad <= gbrv * (1.0 + 1e-8));
    }
  }
}

TEST_CASE("property: K is consistent with kappa to second order") {
  const auto q = CoefficientModel::quadratic_kappa();
  const double h = 1e-3;
  // max |kappa'| on [-20, 20] is 40
  for (double t = -20.0; t <= 20.0; t += 0.37) {
    const double defect = std::abs(q.kappa_antiderivative(t + h) - q.kappa_antiderivative(t) - h * q.kappa(t));
    CHECK(defect <= h * h * 40.0);
  }
}
