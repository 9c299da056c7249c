#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "bq/inequality_audit.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bq;
using bq::testing::random_band_limited;
using std::numbers::pi;

namespace {

double max_abs(const RealField& f) { return norm_lp(f, kInfinity); }

double max_coeff_except(const SpectralField& f, int k0, int n0) {
  double worst = 0.0;
  const Grid& g = f.grid();
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 0; n <= g.ny(); ++n) {
      if ((k == k0 || k == -k0) && n == n0) continue;
      worst = std::max(worst, std::abs(f.at(k, n)));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_NOTHROW(Grid(4, 4));
  CHECK_THROWS_AS(Grid(5, 8), std::invalid_argument);
  CHECK_THROWS_AS(Grid(2, 8), std::invalid_argument);
  CHECK_THROWS_AS(Grid(8, 3), std::invalid_argument);
  CHECK(Grid::measure() == 1.0);
  const Grid g(128, 64);
  CHECK(g.min_spacing() == doctest::Approx(1.0 / 128));
  CHECK(g.in_dealiased_band(42, 42));
  CHECK_FALSE(g.in_dealiased_band(43, 0));
  CHECK_FALSE(g.in_dealiased_band(0, 43));
  CHECK(g.in_dealiased_band(-42, 0));
}

TEST_CASE("to_spectral of sin(pi y) is a single sine coefficient") {
  const Grid g(32, 16);
  const auto f = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  const auto s = to_spectral(f, Parity::Sine);
  CHECK(std::abs(s.at(0, 1) - Complex(1.0, 0.0)) <= 1e-14);
  CHECK(max_coeff_except(s, 0, 1) <= 1e-14);
}

TEST_CASE("to_spectral of zero is zero") {
  const Grid g(16, 8);
  for (Parity p : {Parity::Sine, Parity::Cosine}) {
    CHECK(to_spectral(RealField(g), p).max_abs() == 0.0);
  }
}

TEST_CASE("cos(2 pi x) cos(3 pi y) lives on the (+-1, 3) pair") {
  const Grid g(32, 16);
  const auto f = RealField::from_function(
      g, [](double x, double y) { return std::cos(2 * pi * x) * std::cos(3 * pi * y); });
  const auto s = to_spectral(f, Parity::Cosine);
  CHECK(std::abs(s.at(1, 3) - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(std::abs(s.at(-1, 3) - Complex(0.5, 0.0)) <= 1e-14);
  CHECK(max_coeff_except(s, 1, 3) <= 1e-14);
  CHECK(max_abs(to_physical(s) - f) <= 1e-12);
}

TEST_CASE("to_physical of a single sine mode") {
  const Grid g(16, 32);
  SpectralField s(g, Parity::Sine);
  s.at(0, 1) = 1.0;
  const auto f = to_physical(s);
  const auto ref = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  CHECK(max_abs(f - ref) <= 1e-14);
  CHECK(max_abs(to_physical(SpectralField(g, Parity::Cosine))) == 0.0);
}

TEST_CASE("random band-limited round trip") {
  for (Parity p : {Parity::Sine, Parity::Cosine}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const Grid g(64, 32);
      const auto s = random_band_limited(g, p, seed);
      const auto back = to_spectral(to_physical(s), p);
      CHECK(max_abs_diff(back, s) <= 1e-12 * s.max_abs());
      const auto f = to_physical(s);
      CHECK(max_abs(to_physical(to_spectral(f, p)) - f) <= 1e-12 * max_abs(f));
    }
  }
}

TEST_CASE("mixed-radix grid round trip") {
  const Grid g(48, 20);
  const auto s = random_band_limited(g, Parity::Cosine, 11);
  CHECK(max_abs_diff(to_spectral(to_physical(s), Parity::Cosine), s) <= 1e-12 * s.max_abs());
}

TEST_CASE("non-finite input is rejected with its index") {
  const Grid g(8, 8);
  RealField f(g);
  f.at(3, 5) = std::nan("");
  try {
    (void)to_spectral(f, Parity::Sine);
    FAIL("expected rejection");
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("i=3, j=5") != std::string::npos);
  }
  SpectralField s(g, Parity::Sine);
  s.at(1, 2) = Complex(INFINITY, 0.0);
  CHECK_THROWS_AS((void)to_physical(s), std::domain_error);
}

TEST_CASE("ddx examples") {
  const Grid g(32, 16);
  const auto f = to_spectral(
      RealField::from_function(g, [](double x, double y) { return std::sin(2 * pi * x) * std::sin(pi * y); }),
      Parity::Sine);
  const auto ref = RealField::from_function(
      g, [](double x, double y) { return 2 * pi * std::cos(2 * pi * x) * std::sin(pi * y); });
  CHECK(max_abs(to_physical(ddx(f)) - ref) <= 1e-12);

  const auto c = to_spectral(RealField(g, 3.0), Parity::Cosine);
  CHECK(ddx(c).max_abs() == 0.0);
  const auto yonly = to_spectral(
      RealField::from_function(g, [](double, double y) { return std::sin(3 * pi * y); }), Parity::Sine);
  CHECK(ddx(yonly).max_abs() <= 1e-14);
}

TEST_CASE("ddy examples and parity flip") {
  const Grid g(16, 32);
  SpectralField s(g, Parity::Sine);
  s.at(0, 1) = 1.0;
  const auto ds = ddy(s);
  CHECK(ds.parity() == Parity::Cosine);
  CHECK(std::abs(ds.at(0, 1) - Complex(pi, 0.0)) <= 1e-15);
  CHECK(max_coeff_except(ds, 0, 1) == 0.0);

  SpectralField c(g, Parity::Cosine);
  c.at(0, 1) = 1.0;
  const auto dc = ddy(c);
  CHECK(dc.parity() == Parity::Sine);
  CHECK(std::abs(dc.at(0, 1) - Complex(-pi, 0.0)) <= 1e-15);

  SpectralField k(g, Parity::Cosine);
  k.at(0, 0) = 5.0;
  CHECK(ddy(k).max_abs() == 0.0);

  const auto ref = RealField::from_function(g, [](double, double y) { return pi * std::cos(pi * y); });
  CHECK(max_abs(to_physical(ds) - ref) <= 1e-12);
}

TEST_CASE("laplacian examples") {
  const Grid g(32, 16);
  SpectralField s(g, Parity::Sine);
  s.at(0, 1) = 1.0;
  CHECK(std::abs(laplacian(s).at(0, 1) + pi * pi) <= 1e-13);

  const auto f = to_spectral(
      RealField::from_function(g, [](double x, double y) { return std::cos(2 * pi * x) * std::sin(pi * y); }),
      Parity::Sine);
  const auto lf = laplacian(f);
  const double lam = 4 * pi * pi + pi * pi;
  CHECK(max_abs_diff(lf, f * (-lam)) <= 1e-12);
  CHECK(laplacian(SpectralField(g, Parity::Sine)).max_abs() == 0.0);
}

TEST_CASE("norm_lp") {
  const Grid g(16, 64);
  const RealField two(g, 2.0);
  for (double p : {1.0, 2.0, 3.0, 4.0, 7.5}) CHECK(norm_lp(two, p) == doctest::Approx(2.0).epsilon(1e-14));
  const auto s = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  CHECK(std::abs(norm_lp(s, 2.0) - std::sqrt(0.5)) <= 1e-10);
  CHECK(norm_lp(s, kInfinity) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS((void)norm_lp(s, 0.5), std::invalid_argument);

  // sup over an odd mesh approaches 1 from below as ny grows
  double prev = 0.0;
  for (int ny : {5, 11, 23, 47}) {
    const Grid gg(4, ny);
    const double m =
        norm_lp(RealField::from_function(gg, [](double, double y) { return std::sin(pi * y); }), kInfinity);
    CHECK(m <= 1.0);
    CHECK(m >= prev);
    prev = m;
  }
  CHECK(prev > 0.999);
}

TEST_CASE("norm_lp is monotone under pointwise domination") {
  const Grid g(32, 16);
  const auto f = to_physical(random_band_limited(g, Parity::Sine, 3, 5, 5));
  const auto bigger = f.map([](double v) { return std::abs(v) * 1.5 + 0.1; });
  for (double p : {1.0, 2.0, 4.0, kInfinity}) CHECK(norm_lp(f, p) <= norm_lp(bigger, p));
}

TEST_CASE("sobolev_norm") {
  const Grid g(16, 32);
  SpectralField s(g, Parity::Sine);
  s.at(0, 1) = 1.0;
  CHECK(std::abs(sobolev_norm(s, 0) - std::sqrt(0.5)) <= 1e-12);
  CHECK(std::abs(sobolev_norm(s, 1) - pi * std::sqrt(0.5)) <= 1e-10);
  CHECK(std::abs(sobolev_norm(s, 2) - pi * pi * std::sqrt(0.5)) <= 1e-10);
  for (int order = 0; order <= 3; ++order) CHECK(sobolev_norm(SpectralField(g, Parity::Sine), order) == 0.0);
  CHECK_THROWS_AS((void)sobolev_norm(s, 4), std::invalid_argument);
  CHECK_THROWS_AS((void)sobolev_norm(s, -1), std::invalid_argument);
}

TEST_CASE("inner_product") {
  const Grid g(16, 32);
  const auto s1 = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  const auto s2 = RealField::from_function(g, [](double, double y) { return std::sin(2 * pi * y); });
  CHECK(std::abs(inner_product(s1, s2)) <= 1e-12);
  const double n2 = norm_lp(s1, 2.0);
  CHECK(std::abs(inner_product(s1, s1) - n2 * n2) <= 1e-12);
  CHECK_THROWS_AS((void)inner_product(s1, RealField(Grid(16, 16))), std::invalid_argument);

  // trapezoid error is pi/(6 ny^2); ny = 8192 puts it below 1e-8
  const Grid fine(4, 8192);
  const auto sf = RealField::from_function(fine, [](double, double y) { return std::sin(pi * y); });
  CHECK(std::abs(inner_product(RealField(fine, 1.0), sf) - 2.0 / pi) <= 1e-8);
}

TEST_CASE("inner_product is symmetric and bilinear") {
  const Grid g(32, 16);
  const auto f = to_physical(random_band_limited(g, Parity::Cosine, 5));
  const auto h = to_physical(random_band_limited(g, Parity::Cosine, 6));
  const auto w = to_physical(random_band_limited(g, Parity::Cosine, 7));
  CHECK(inner_product(f, h) == doctest::Approx(inner_product(h, f)).epsilon(1e-14));
  const double lhs = inner_product(2.0 * f + (-3.0) * h, w);
  const double rhs = 2.0 * inner_product(f, w) - 3.0 * inner_product(h, w);
  CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
}

TEST_CASE("inequality audit examples") {
  const Grid g(32, 64);
  const auto s = RealField::from_function(g, [](double, double y) { return std::sin(pi * y); });
  const auto r = inequality_audit(s, Parity::Sine, Inequality::Poincare);
  CHECK(r.ratio == doctest::Approx(1.0 / pi).epsilon(1e-10));
  CHECK(r.constant_used.value() == 1.0);
  CHECK(r.holds());

  for (Inequality w : all_inequalities()) {
    const auto z = inequality_audit(RealField(g), Parity::Sine, w);
    CHECK(z.ratio == 0.0);
    CHECK(z.holds());
  }
  CHECK_THROWS_AS((void)inequality_audit(s, Parity::Cosine, Inequality::Poincare), std::invalid_argument);
  CHECK_THROWS_AS((void)inequality_audit(s, Parity::Cosine, Inequality::Agmon), std::invalid_argument);
  CHECK_NOTHROW((void)inequality_audit(s, Parity::Cosine, Inequality::SobolevL4));
  CHECK(inequality_from_string("agmon") == Inequality::Agmon);
  CHECK_FALSE(inequality_from_string("nope").has_value());
}

TEST_CASE("empirical Ladyzhenskaya constant c3 over 100 seeded sine fields") {
  const Grid g(64, 32);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto f = to_physical(random_band_limited(g, Parity::Sine, seed, 8, 8));
    const auto r = inequality_audit(f, Parity::Sine, Inequality::LadyzhenskayaH01);
    CHECK(r.holds());
    worst = std::max(worst, r.ratio);
  }
  MESSAGE("empirical c3 lower bound: " << worst);
  CHECK(worst <= 2.0);
}

TEST_CASE("Holder product audits hold with constant 1") {
  const Grid g(32, 16);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto f = to_physical(random_band_limited(g, Parity::Sine, seed));
    const auto h = to_physical(random_band_limited(g, Parity::Cosine, seed + 100));
    const auto w = to_physical(random_band_limited(g, Parity::Sine, seed + 200));
    const auto a = product_audit(f, h, w);
    CHECK(a.trilinear_ratio <= 1.0 + 1e-12);
    CHECK(a.product_ratio <= 1.0 + 1e-12);
  }
}

TEST_CASE("property: Parseval") {
  for (Parity p : {Parity::Sine, Parity::Cosine}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Grid g(32, 24);
      const auto s = random_band_limited(g, p, seed);
      const double spec = sobolev_norm(s, 0);
      CHECK(std::abs(norm_lp(to_physical(s), 2.0) - spec) <= 1e-10 * spec);
    }
  }
}

TEST_CASE("property: derivatives commute and the Laplacian splits") {
  for (Parity p : {Parity::Sine, Parity::Cosine}) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const Grid g(32, 16);
      SpectralField s = random_band_limited(g, p, seed);
      // include the Nyquist row and column too
      s.at(g.kmin(), 3) = 0.7;
      if (p == Parity::Cosine) s.at(2, g.ny()) = 0.4;
      const double scale = sobolev_norm(s, 2) + 1.0;
      CHECK(max_abs_diff(ddx(ddy(s)), ddy(ddx(s))) <= 1e-13 * scale);
      const auto split = ddx(ddx(s)) + ddy(ddy(s));
      CHECK(max_abs_diff(laplacian(s), split) <= 1e-14 * laplacian(s).max_abs());
    }
  }
}

TEST_CASE("property: Poincare with constant 1 on sine fields") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Grid g(16, 16);
    auto s = random_band_limited(g, Parity::Sine, seed);
    s.at(g.kmin(), 1) = 2.0;
    CHECK(norm_lp(to_physical(s), 2.0) <= sobolev_norm(s, 1) * (1.0 + 1e-10));
  }
}

TEST_CASE("property: to_spectral is linear") {
  const Grid g(32, 16);
  for (Parity p : {Parity::Sine, Parity::Cosine}) {
    const auto f = to_physical(random_band_limited(g, p, 1));
    const auto h = to_physical(random_band_limited(g, p, 2));
    const double a = 0.3;
    const double b = -1.7;
    const auto lhs = to_spectral(a * f + b * h, p);
    const auto rhs = a * to_spectral(f, p) + b * to_spectral(h, p);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * (lhs.max_abs() + 1.0));
  }
}

TEST_CASE("property: concurrent transforms match serial ones") {
  const Grid g(64, 48);
  std::vector<SpectralField> inputs;
  for (std::uint64_t seed = 0; seed < 8; ++seed) inputs.push_back(random_band_limited(g, Parity::Sine, seed));
  std::vector<SpectralField> serial;
  for (const auto& s : inputs) serial.push_back(to_spectral(to_physical(s), Parity::Sine));
  std::vector<SpectralField> parallel(inputs.size());
  std::vector<std::thread> workers;
  for (std::size_t q = 0; q < inputs.size(); ++q) {
    workers.emplace_back([&, q] { parallel[q] = to_spectral(to_physical(inputs[q]), Parity::Sine); });
  }
  for (auto& w : workers) w.join();
  for (std::size_t q = 0; q < inputs.size(); ++q) CHECK(parallel[q] == serial[q]);
}

TEST_CASE("dealias keeps the 2/3 band") {
  const Grid g(128, 64);
  auto s = random_band_limited(g, Parity::Cosine, 9);
  CHECK_FALSE(is_dealiased(s));
  dealias(s);
  CHECK(is_dealiased(s));
  CHECK(s.at(42, 42) != Complex{});
  CHECK(s.at(43, 0) == Complex{});
  CHECK(s.at(0, 43) == Complex{});
}
