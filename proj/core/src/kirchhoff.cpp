#include "bq/kirchhoff.hpp"

#include <algorithm>
#include <cmath>

#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

RealField kirchhoff_hat(const RealField& theta, const CoefficientModel& model) {
  return theta.map([&](double v) { return model.kappa_antiderivative(v); });
}

RealField kirchhoff_breve(const RealField& theta, const CoefficientModel& model) {
  return theta.map([&](double v) { return model.sqrt_kappa_antiderivative(v); });
}

namespace {

double relative(double err, double ref) {
  if (ref > 0.0) return err / ref;
  return err;
}

}  // namespace

KirchhoffReport verify_kirchhoff_identities(const RealField& theta, const CoefficientModel& model) {
  const SpectralField th = to_spectral(theta, Parity::Sine);
  const SpectralField hat = to_spectral(kirchhoff_hat(theta, model), Parity::Sine);

  const RealField tx = to_physical(ddx(th));
  const RealField ty = to_physical(ddy(th));
  const RealField lap = to_physical(laplacian(th));
  const RealField kap = theta.map([&](double v) { return model.kappa(v); });
  const RealField kp = theta.map([&](double v) { return model.kappa_prime(v); });

  const RealField hx = to_physical(ddx(hat));
  const RealField hy = to_physical(ddy(hat));
  const RealField hlap = to_physical(laplacian(hat));

  const RealField rx = kap * tx;
  const RealField ry = kap * ty;
  const RealField rlap = kap * lap + kp * (tx * tx + ty * ty);

  const double ex = norm_lp(hx - rx, 2.0);
  const double ey = norm_lp(hy - ry, 2.0);
  const double gx = norm_lp(rx, 2.0);
  const double gy = norm_lp(ry, 2.0);

  KirchhoffReport report;
  report.max_rel_err_grad = relative(std::hypot(ex, ey), std::hypot(gx, gy));
  report.max_rel_err_lap = relative(norm_lp(hlap - rlap, 2.0), norm_lp(rlap, 2.0));
  report.aliasing_suspected =
      std::max(report.max_rel_err_grad, report.max_rel_err_lap) > 1e-3;
  return report;
}

}  // namespace bq
