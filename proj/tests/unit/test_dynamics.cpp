#include <cmath>
#include <numbers>

#include "bq/dynamics.hpp"
#include "bq/initial_data.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bq;
using std::numbers::pi;

namespace {

double vel_inner(const SpectralField& a1, const SpectralField& a2, const SpectralField& b1,
                 const SpectralField& b2) {
  return spectral_inner(a1, b1) + spectral_inner(a2, b2);
}

double mean_u1(const State& s) { return std::abs(s.u1.at(0, 0)); }

}  // namespace

TEST_CASE("leray_project fixes divergence-free fields") {
  const Grid g(32, 16);
  const State s = single_mode_state(g, 1.3, 0.0);
  CHECK(divergence_residual(s) <= 1e-15);
  const auto [p1, p2] = leray_project(s.u1, s.u2);
  CHECK(max_abs_diff(p1, s.u1) <= 1e-13);
  CHECK(max_abs_diff(p2, s.u2) <= 1e-13);
}

TEST_CASE("leray_project kills gradients") {
  const Grid g(32, 16);
  const auto phi = to_spectral(
      RealField::from_function(g, [](double x, double y) { return std::cos(2 * pi * x) * std::cos(pi * y); }),
      Parity::Cosine);
  const auto [p1, p2] = leray_project(ddx(phi), ddy(phi));
  CHECK(p1.max_abs() <= 1e-13);
  CHECK(p2.max_abs() <= 1e-13);
}

TEST_CASE("leray_project removes the (1-y) buoyancy") {
  const Grid g(128, 64);
  const auto b = background_buoyancy(g);
  // the sine series of 1 - y: 2/(n pi)
  CHECK(b.at(0, 1).real() == doctest::Approx(2.0 / pi));
  CHECK(b.at(0, 7).real() == doctest::Approx(2.0 / (7 * pi)));
  const auto [p1, p2] = leray_project(SpectralField(g, Parity::Cosine), b);
  CHECK(p1.max_abs() <= 1e-12);
  CHECK(p2.max_abs() <= 1e-12);
}

TEST_CASE("leray_project rejects wrong parities") {
  const Grid g(16, 8);
  CHECK_THROWS_AS((void)leray_project(SpectralField(g, Parity::Sine), SpectralField(g, Parity::Sine)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)leray_project(SpectralField(g, Parity::Cosine), SpectralField(g, Parity::Cosine)),
                  std::invalid_argument);
}

TEST_CASE("property: leray_project is idempotent and self-adjoint") {
  const Grid g(32, 24);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f1 = testing::random_band_limited(g, Parity::Cosine, seed);
    const auto f2 = testing::random_band_limited(g, Parity::Sine, seed + 50);
    const auto h1 = testing::random_band_limited(g, Parity::Cosine, seed + 100);
    const auto h2 = testing::random_band_limited(g, Parity::Sine, seed + 150);
    const auto [p1, p2] = leray_project(f1, f2);
    const auto [q1, q2] = leray_project(p1, p2);
    CHECK(max_abs_diff(p1, q1) <= 1e-12 * p1.max_abs());
    CHECK(max_abs_diff(p2, q2) <= 1e-12 * p2.max_abs());
    const State ps{p1, p2, SpectralField(g, Parity::Sine), 0.0};
    CHECK(divergence_residual(ps) <= 1e-14);
    CHECK(std::abs(p1.at(0, 0)) == 0.0);

    const auto [r1, r2] = leray_project(h1, h2);
    const double lhs = vel_inner(p1, p2, h1, h2);
    const double rhs = vel_inner(f1, f2, r1, r2);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    // same pairing through the mesh quadrature
    const double mesh_l = inner_product(to_physical(p1), to_physical(h1)) + inner_product(to_physical(p2), to_physical(h2));
    const double mesh_r = inner_product(to_physical(f1), to_physical(r1)) + inner_product(to_physical(f2), to_physical(r2));
    CHECK(std::abs(mesh_l - mesh_r) <= 1e-12 * (std::abs(mesh_l) + 1.0));
  }
}

TEST_CASE("rhs of the conduction state vanishes") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::constant(), CoefficientModel::quadratic_kappa(),
                        CoefficientModel::bounded_rational()}) {
    const auto t = rhs(State::zero(g), m);
    CHECK(t.du1.max_abs() <= 1e-12);
    CHECK(t.du2.max_abs() <= 1e-12);
    CHECK(t.dtheta.max_abs() <= 1e-12);
  }
}

TEST_CASE("rhs with constant coefficients and a pure temperature mode") {
  const Grid g(64, 32);
  const auto m = CoefficientModel::constant(1.0, 1.0);
  State s = State::zero(g);
  s.theta.at(0, 1) = 1.0;
  const auto t = rhs(s, m);
  CHECK(std::abs(t.dtheta.at(0, 1) + pi * pi) <= 1e-12);
  CHECK((t.dtheta - s.theta * (-pi * pi)).max_abs() <= 1e-12);
  // x-independent buoyancy is a gradient
  CHECK(t.du1.max_abs() <= 1e-13);
  CHECK(t.du2.max_abs() <= 1e-13);

  // theta = cos(2 pi x) sin(pi y): P(theta e2) keeps a^2/(a^2+b^2) of the vertical part
  State s2 = State::zero(g);
  s2.theta.set_real_mode(1, 1, 0.5);
  const auto t2 = rhs(s2, m);
  const double a = 2 * pi;
  const double b = pi;
  CHECK(std::abs(t2.du2.at(1, 1) - Complex(0.5 * a * a / (a * a + b * b), 0.0)) <= 1e-14);
  CHECK(std::abs(t2.du1.at(1, 1) - Complex(0.0, 0.5 * a * b / (a * a + b * b))) <= 1e-14);
  CHECK(std::abs(t2.dtheta.at(1, 1) + 0.5 * (a * a + b * b)) <= 1e-12);
}

TEST_CASE("rhs option switches") {
  const Grid g(32, 16);
  const State s = random_smooth_state(g, 3, 0.5, 0.5);
  const auto m = CoefficientModel::constant();
  const auto off = rhs(s, m, RhsOptions{false, false});
  // pure diffusion: tendency = Laplacian
  CHECK(max_abs_diff(off.du1, laplacian(s.u1)) <= 1e-12);
  CHECK(max_abs_diff(off.dtheta, laplacian(s.theta)) <= 1e-12);
}

TEST_CASE("recover_pressure of the conduction state is hydrostatic") {
  const Grid g(128, 64);
  for (const auto& m : {CoefficientModel::constant(), CoefficientModel::quadratic_kappa()}) {
    const auto p = recover_pressure(State::zero(g), m).p;
    CHECK(p.at(0, 0) == Complex{});
    double worst = 0.0;
    for (int n = 1; n < g.ny(); ++n) {
      worst = std::max(worst, std::abs(p.at(0, n) - Complex(-2.0 / (n * n * pi * pi), 0.0)));
    }
    CHECK(worst <= 1e-15);
    for (int k = 1; k <= g.kmax(); ++k) CHECK(std::abs(p.at(k, 3)) == 0.0);
  }
}

TEST_CASE("pressure gradient equals the non-solenoidal part of the forcing") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::constant(), CoefficientModel::quadratic_kappa()}) {
    const State s = random_smooth_state(g, 7, 1.0, 0.8);
    const auto [g1, g2] = velocity_forcing(s, m);
    const auto p = recover_pressure(s, m).p;
    const auto [pg1, pg2] = leray_project(g1, g2);
    const auto r1 = ddx(p) - (g1 - pg1);
    const auto r2 = ddy(p) - (g2 - pg2);
    const double res = std::hypot(sobolev_norm(r1, 0), sobolev_norm(r2, 0));
    const double gn = std::hypot(sobolev_norm(g1, 0), sobolev_norm(g2, 0));
    CHECK(res <= 1e-8 * gn);
  }
}

TEST_CASE("pressure gradient is orthogonal to the Laplacian of a solenoidal field") {
  const Grid g(64, 32);
  const auto m = CoefficientModel::constant();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const State s = random_smooth_state(g, seed, 2.0, 0.5);
    const auto p = recover_pressure(s, m).p;
    const auto px = ddx(p);
    const auto py = ddy(p);
    const auto l1 = laplacian(s.u1);
    const auto l2 = laplacian(s.u2);
    const double pair = vel_inner(px, py, l1, l2);
    const double scale = std::hypot(sobolev_norm(px, 0), sobolev_norm(py, 0)) *
                         std::hypot(sobolev_norm(l1, 0), sobolev_norm(l2, 0));
    CHECK(std::abs(pair) <= 1e-10 * scale);
  }
}

TEST_CASE("property: rhs preserves the state invariants") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::constant(), CoefficientModel::quadratic_kappa(),
                        CoefficientModel::bounded_rational()}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const State s = random_smooth_state(g, seed, 1.5, 0.9);
      CHECK(divergence_residual(s) <= 1e-14);
      CHECK(mean_u1(s) == 0.0);
      const auto t = rhs(s, m);
      const State ts{t.du1, t.du2, t.dtheta, 0.0};
      CHECK(divergence_residual(ts) <= 1e-12);
      CHECK(mean_u1(ts) <= 1e-12);
      CHECK(is_dealiased(t.du1));
      CHECK(is_dealiased(t.dtheta));
    }
  }
}

TEST_CASE("property: discrete energy identity and temperature weak form") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::constant(), CoefficientModel::quadratic_kappa(),
                        CoefficientModel::bounded_rational()}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const State s = random_smooth_state(g, seed, 1.0, 0.8);
      const auto t = rhs(s, m);
      const RealField th = to_physical(s.theta);
      const RealField u1x = to_physical(ddx(s.u1));
      const RealField u1y = to_physical(ddy(s.u1));
      const RealField u2x = to_physical(ddx(s.u2));
      const RealField u2y = to_physical(ddy(s.u2));
      const RealField tx = to_physical(ddx(s.theta));
      const RealField ty = to_physical(ddy(s.theta));
      const RealField nu = th.map([&](double v) { return m.nu(v); });
      const RealField kap = th.map([&](double v) { return m.kappa(v); });
      const RealField kp = th.map([&](double v) { return m.kappa_prime(v); });

      const double diss_u = integral(nu * (u1x * u1x + u1y * u1y + u2x * u2x + u2y * u2y));
      const double buoy = inner_product(th, to_physical(s.u2));
      const double lhs = vel_inner(t.du1, t.du2, s.u1, s.u2);
      const double expect = -diss_u + buoy;
      CHECK(std::abs(lhs - expect) <= 1e-8 * (std::abs(diss_u) + std::abs(buoy)));

      const double diss_t = integral(kap * (tx * tx + ty * ty));
      const double weak = spectral_inner(t.dtheta, s.theta) + diss_t -
                          inner_product(to_physical(s.u2), th) + inner_product(kp * ty, th);
      CHECK(std::abs(weak) <= 1e-8 * (diss_t + std::abs(buoy)));
    }
  }
}

TEST_CASE("evaluate_split plus the floor Laplacians equals rhs") {
  const Grid g(64, 32);
  for (const auto& m : {CoefficientModel::constant(2.0, 3.0), CoefficientModel::quadratic_kappa()}) {
    const State s = random_smooth_state(g, 5, 1.0, 0.7);
    const auto full = rhs(s, m);
    const auto split = evaluate_split(s, m);
    const auto r1 = split.explicit_part.du1 + m.nu_min * laplacian(s.u1);
    const auto rt = split.explicit_part.dtheta + m.kappa_min * laplacian(s.theta);
    CHECK(max_abs_diff(r1, full.du1) <= 1e-11 * full.du1.max_abs());
    CHECK(max_abs_diff(rt, full.dtheta) <= 1e-11 * full.dtheta.max_abs());
    CHECK(split.max_speed > 0.0);
    if (m.name == "constant") CHECK(split.nu_excess_ratio == doctest::Approx(0.0));
    if (m.name == "quadratic-kappa") {
      CHECK(split.kappa_excess_ratio > 0.0);
      CHECK(split.kappa_excess_ratio <= 0.7 * 0.7 + 1e-12);
    }
  }
}

TEST_CASE("validation and non-finite diagnostics") {
  const Grid g(16, 8);
  State bad = State::zero(g);
  bad.u1 = SpectralField(g, Parity::Sine);
  CHECK_THROWS_AS(validate_state(bad), std::invalid_argument);

  auto m = CoefficientModel::quadratic_kappa();
  m.nu = [](double) { return std::nan(""); };
  const State s = random_smooth_state(g, 1, 0.5, 0.5);
  try {
    (void)rhs(s, m);
    FAIL("expected rejection");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("viscous") != std::string::npos);
  }
}

TEST_CASE("initial data presets") {
  const Grid g(64, 32);
  const State sm = single_mode_state(g, 2.0, 0.3);
  CHECK(std::hypot(sobolev_norm(sm.u1, 0), sobolev_norm(sm.u2, 0)) == doctest::Approx(2.0));
  CHECK(sm.theta.at(0, 1).real() == 0.3);
  const auto u1 = to_physical(sm.u1);
  // shape pi sin(2 pi x) cos(pi y) up to normalisation
  CHECK(u1.at(g.nx() / 4, 0) > 0.0);

  const State rs = random_smooth_state(g, 42, 1.5, 0.9);
  CHECK(std::hypot(sobolev_norm(rs.u1, 0), sobolev_norm(rs.u2, 0)) == doctest::Approx(1.5));
  CHECK(norm_lp(to_physical(rs.theta), kInfinity) == doctest::Approx(0.9));
  CHECK(divergence_residual(rs) <= 1e-14);
  CHECK(is_dealiased(rs.u1));
  CHECK(rs.u1.hermitian_defect() == 0.0);
  const State rs2 = random_smooth_state(g, 42, 1.5, 0.9);
  CHECK(rs2.u1 == rs.u1);
  CHECK(rs2.theta == rs.theta);
  CHECK_FALSE(random_smooth_state(g, 43, 1.5, 0.9).u1 == rs.u1);

  const State ov = overshoot_state(g, 20.0, 0.1, 1);
  CHECK(norm_lp(to_physical(ov.theta), kInfinity) == doctest::Approx(25.0).epsilon(1e-12));

  const State base = random_smooth_state(g, 1, 1.0, 0.5);
  const State pert = perturbed_state(base, 1e-6, 99);
  const double y1 = std::pow(sobolev_norm(pert.u1 - base.u1, 1), 2) +
                    std::pow(sobolev_norm(pert.u2 - base.u2, 1), 2) +
                    std::pow(sobolev_norm(pert.theta - base.theta, 1), 2);
  CHECK(std::sqrt(y1) == doctest::Approx(1e-6).epsilon(1e-9));
  CHECK(divergence_residual(pert) <= 1e-14);

  InitialSpec spec;
  spec.preset = "bogus";
  CHECK_THROWS_AS((void)make_initial_state(g, spec), std::invalid_argument);
  spec.preset = "conduction";
  CHECK(make_initial_state(g, spec).u1.max_abs() == 0.0);
}
