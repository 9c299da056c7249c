#include "bq/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

State State::zero(const Grid& grid, double t) {
  return State{SpectralField(grid, Parity::Cosine), SpectralField(grid, Parity::Sine),
               SpectralField(grid, Parity::Sine), t};
}

Tendency Tendency::zero(const Grid& grid) {
  return Tendency{SpectralField(grid, Parity::Cosine), SpectralField(grid, Parity::Sine),
                  SpectralField(grid, Parity::Sine)};
}

Tendency& Tendency::operator+=(const Tendency& o) {
  du1 += o.du1;
  du2 += o.du2;
  dtheta += o.dtheta;
  return *this;
}

Tendency& Tendency::operator*=(double s) {
  du1 *= s;
  du2 *= s;
  dtheta *= s;
  return *this;
}

std::pair<SpectralField, SpectralField> leray_project(const SpectralField& f1,
                                                      const SpectralField& f2) {
  if (f1.parity() != Parity::Cosine || f2.parity() != Parity::Sine) {
    throw std::invalid_argument("leray_project: expected (COSINE, SINE), got (" +
                                to_string(f1.parity()) + ", " + to_string(f2.parity()) + ")");
  }
  if (!(f1.grid() == f2.grid())) throw std::invalid_argument("leray_project: grid mismatch");
  const Grid& g = f1.grid();
  SpectralField p1(g, Parity::Cosine);
  SpectralField p2(g, Parity::Sine);
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    const double a = g.wave_x(k);
    for (int n = 0; n <= g.ny(); ++n) {
      const double b = g.wave_y(n);
      const Complex c1 = f1.at(k, n);
      const Complex c2 = f2.at(k, n);
      if (a == 0.0 && b == 0.0) continue;
      if (a == 0.0) {
        // x-independent: only the horizontal shear survives
        p1.at(k, n) = c1;
        continue;
      }
      if (b == 0.0) {
        p2.at(k, n) = c2;
        continue;
      }
      const Complex ia(0.0, a);
      const Complex div = ia * c1 + b * c2;
      const double den = a * a + b * b;
      p1.at(k, n) = c1 + ia * div / den;
      p2.at(k, n) = c2 - b * div / den;
    }
  }
  // sine n = 0 and n = ny carry no content
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    p2.at(k, 0) = 0.0;
    p2.at(k, g.ny()) = 0.0;
  }
  return {std::move(p1), std::move(p2)};
}

SpectralField divergence(const SpectralField& u1, const SpectralField& u2) {
  return ddx(u1) + ddy(u2);
}

SpectralField background_buoyancy(const Grid& grid) {
  SpectralField f(grid, Parity::Sine);
  for (int n = 1; n < grid.ny(); ++n) f.at(0, n) = 2.0 / (n * std::numbers::pi);
  return f;
}

namespace {

SpectralField product(const RealField& a, const RealField& b, Parity parity) {
  return dealiased(to_spectral(a * b, parity));
}

struct Forcing {
  SpectralField g1;
  SpectralField g2;
  SpectralField dtheta;
  double max_speed = 0.0;
  double nu_excess = 0.0;
  double kappa_excess = 0.0;
};

void check_finite(const SpectralField& f, const char* term) { f.require_finite(term); }

// Unprojected velocity forcing and temperature tendency.  With split set,
// the floor diffusion nu_min Lap u and kappa_min Lap theta is left out.
Forcing compute_forcing(const State& s, const CoefficientModel& m, const RhsOptions& opts,
                        bool split, bool with_background) {
  validate_state(s);
  const Grid& g = s.grid();
  Forcing out{SpectralField(g, Parity::Cosine), SpectralField(g, Parity::Sine),
              SpectralField(g, Parity::Sine)};

  const RealField u1 = to_physical(s.u1);
  const RealField u2 = to_physical(s.u2);
  const RealField th = to_physical(s.theta);
  const SpectralField thx_s = ddx(s.theta);
  const SpectralField thy_s = ddy(s.theta);
  const RealField thx = to_physical(thx_s);
  const RealField thy = to_physical(thy_s);

  for (std::size_t q = 0; q < u1.values().size(); ++q) {
    out.max_speed = std::max(out.max_speed, std::hypot(u1.values()[q], u2.values()[q]));
  }

  const bool need_u_grad = opts.advection || !m.nu_is_constant;
  RealField u1x, u1y, u2x, u2y;
  SpectralField u1x_s, u1y_s, u2x_s, u2y_s;
  if (need_u_grad) {
    u1x_s = ddx(s.u1);
    u1y_s = ddy(s.u1);
    u2x_s = ddx(s.u2);
    u2y_s = ddy(s.u2);
    u1x = to_physical(u1x_s);
    u1y = to_physical(u1y_s);
    u2x = to_physical(u2x_s);
    u2y = to_physical(u2y_s);
  }

  // viscous term div(nu grad u), shifted by the floor when splitting
  const double nu_shift = split ? m.nu_min : 0.0;
  if (m.nu_is_constant) {
    const double c = m.nu(0.0) - nu_shift;
    out.nu_excess = (m.nu(0.0) - m.nu_min) / m.nu_min;
    if (c != 0.0) {
      out.g1.axpy(c, laplacian(s.u1));
      out.g2.axpy(c, laplacian(s.u2));
    }
  } else {
    const RealField nu = th.map([&](double v) { return m.nu(v); });
    nu.require_finite("rhs: viscous term, nu(theta)");
    for (double v : nu.values()) out.nu_excess = std::max(out.nu_excess, (v - m.nu_min) / m.nu_min);
    const RealField e = nu.map([&](double v) { return v - nu_shift; });
    out.g1 += ddx(product(e, u1x, Parity::Cosine));
    out.g1 += ddy(product(e, u1y, Parity::Sine));
    out.g2 += ddx(product(e, u2x, Parity::Sine));
    out.g2 += ddy(product(e, u2y, Parity::Cosine));
  }
  check_finite(out.g1, "rhs: viscous term (u1)");
  check_finite(out.g2, "rhs: viscous term (u2)");

  // conductive term div(kappa grad theta) and the -kappa'(theta) theta_y term
  const double kappa_shift = split ? m.kappa_min : 0.0;
  if (m.kappa_is_constant) {
    const double c = m.kappa(0.0) - kappa_shift;
    out.kappa_excess = (m.kappa(0.0) - m.kappa_min) / m.kappa_min;
    if (c != 0.0) out.dtheta.axpy(c, laplacian(s.theta));
  } else {
    const RealField kap = th.map([&](double v) { return m.kappa(v); });
    kap.require_finite("rhs: conductive term, kappa(theta)");
    for (double v : kap.values()) {
      out.kappa_excess = std::max(out.kappa_excess, (v - m.kappa_min) / m.kappa_min);
    }
    const RealField e = kap.map([&](double v) { return v - kappa_shift; });
    out.dtheta += ddx(product(e, thx, Parity::Sine));
    out.dtheta += ddy(product(e, thy, Parity::Cosine));
    const RealField kp = th.map([&](double v) { return m.kappa_prime(v); });
    kp.require_finite("rhs: kappa'(theta) theta_y term");
    out.dtheta -= product(kp, thy, Parity::Sine);
  }
  check_finite(out.dtheta, "rhs: conductive term (theta)");

  if (opts.advection) {
    out.g1 -= dealiased(to_spectral(u1 * u1x + u2 * u1y, Parity::Cosine));
    out.g2 -= dealiased(to_spectral(u1 * u2x + u2 * u2y, Parity::Sine));
    out.dtheta -= dealiased(to_spectral(u1 * thx + u2 * thy, Parity::Sine));
    check_finite(out.g1, "rhs: advection (u1)");
    check_finite(out.g2, "rhs: advection (u2)");
    check_finite(out.dtheta, "rhs: advection (theta)");
  }

  if (opts.coupling) {
    out.g2 += s.theta;
    if (with_background) out.g2 += background_buoyancy(g);
    out.dtheta += s.u2;
  }
  return out;
}

}  // namespace

std::pair<SpectralField, SpectralField> velocity_forcing(const State& s,
                                                         const CoefficientModel& model,
                                                         const RhsOptions& opts) {
  Forcing f = compute_forcing(s, model, opts, false, true);
  return {std::move(f.g1), std::move(f.g2)};
}

Tendency rhs(const State& s, const CoefficientModel& model, const RhsOptions& opts) {
  // (1-y) e2 is a gradient and is removed exactly by the projection
  Forcing f = compute_forcing(s, model, opts, false, false);
  auto [p1, p2] = leray_project(f.g1, f.g2);
  return Tendency{std::move(p1), std::move(p2), std::move(f.dtheta)};
}

SplitEvaluation evaluate_split(const State& s, const CoefficientModel& model,
                               const RhsOptions& opts) {
  Forcing f = compute_forcing(s, model, opts, true, false);
  auto [p1, p2] = leray_project(f.g1, f.g2);
  SplitEvaluation out;
  out.explicit_part = Tendency{std::move(p1), std::move(p2), std::move(f.dtheta)};
  out.max_speed = f.max_speed;
  out.nu_excess_ratio = f.nu_excess;
  out.kappa_excess_ratio = f.kappa_excess;
  return out;
}

SpectralField pressure_from_forcing(const SpectralField& g1, const SpectralField& g2) {
  if (g1.parity() != Parity::Cosine || g2.parity() != Parity::Sine) {
    throw std::invalid_argument("pressure_from_forcing: expected (COSINE, SINE)");
  }
  const Grid& g = g1.grid();
  SpectralField p(g, Parity::Cosine);
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    const double a = g.wave_x(k);
    for (int n = 0; n <= g.ny(); ++n) {
      const double b = g.wave_y(n);
      const double den = a * a + b * b;
      if (den == 0.0) continue;
      p.at(k, n) = -(Complex(0.0, a) * g1.at(k, n) + b * g2.at(k, n)) / den;
    }
  }
  return p;
}

PressureField recover_pressure(const State& s, const CoefficientModel& model,
                               const RhsOptions& opts) {
  auto [g1, g2] = velocity_forcing(s, model, opts);
  return PressureField{pressure_from_forcing(g1, g2)};
}

double divergence_residual(const State& s) {
  const Grid& g = s.grid();
  double worst = 0.0;
  double scale = 0.0;
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    const double a = g.wave_x(k);
    for (int n = 0; n <= g.ny(); ++n) {
      const double b = g.wave_y(n);
      const Complex t1 = Complex(0.0, a) * s.u1.at(k, n);
      const Complex t2 = b * s.u2.at(k, n);
      worst = std::max(worst, std::abs(t1 + t2));
      scale = std::max(scale, std::abs(t1) + std::abs(t2));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

void validate_state(const State& s) {
  if (s.u1.parity() != Parity::Cosine || s.u2.parity() != Parity::Sine ||
      s.theta.parity() != Parity::Sine) {
    throw std::invalid_argument("state: expected parities (COSINE, SINE, SINE)");
  }
  if (!(s.u1.grid() == s.theta.grid()) || !(s.u2.grid() == s.theta.grid())) {
    throw std::invalid_argument("state: components live on different grids");
  }
  if (!std::isfinite(s.t)) throw std::domain_error("state: non-finite time");
  s.u1.require_finite("state u1");
  s.u2.require_finite("state u2");
  s.theta.require_finite("state theta");
}

void enforce_invariants(State& s) {
  dealias(s.u1);
  dealias(s.u2);
  dealias(s.theta);
  auto [p1, p2] = leray_project(s.u1, s.u2);
  s.u1 = std::move(p1);
  s.u2 = std::move(p2);
}

}  // namespace bq
