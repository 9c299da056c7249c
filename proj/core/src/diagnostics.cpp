#include "bq/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>

#include "bq/kirchhoff.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

constexpr double kFloor = 1e-14;

double pair_norm(const SpectralField& a, const SpectralField& b, int s) {
  return std::hypot(sobolev_norm(a, s), sobolev_norm(b, s));
}

double positive_part_norm(const RealField& f, double shift, double sign, double p) {
  const RealField g = f.map([&](double v) { return std::max(0.0, sign * (v - shift)); });
  return norm_lp(g, p);
}

// Quadrature of c(theta) |grad f|^2 summed over the given gradient components.
double weighted_dissipation(const RealField& coeff, std::initializer_list<const RealField*> grads) {
  RealField sq(coeff.grid());
  for (const RealField* g : grads) sq = sq + (*g) * (*g);
  return integral(coeff * sq);
}

}  // namespace

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> columns = {
      "t",
      "norm_u_l2",
      "norm_theta_l2",
      "norm_theta_l4",
      "norm_theta_linf",
      "norm_grad_u",
      "norm_grad_theta",
      "norm_lap_u",
      "norm_lap_theta",
      "norm_h3_u",
      "norm_h3_theta",
      "norm_grad_hat_theta",
      "overshoot_plus_2",
      "overshoot_minus_2",
      "overshoot_plus_4",
      "overshoot_minus_4",
      "dissipation_u",
      "dissipation_theta",
      "norm_pressure_l2",
      "mean_u1",
      "div_residual",
  };
  return columns;
}

std::vector<double> csv_values(const DiagnosticsRecord& r) {
  return {r.t,
          r.norm_u_l2,
          r.norm_theta_l2,
          r.norm_theta_l4,
          r.norm_theta_linf,
          r.norm_grad_u,
          r.norm_grad_theta,
          r.norm_lap_u,
          r.norm_lap_theta,
          r.norm_h3_u,
          r.norm_h3_theta,
          r.norm_grad_hat_theta,
          r.overshoot_plus_2,
          r.overshoot_minus_2,
          r.overshoot_plus_4,
          r.overshoot_minus_4,
          r.dissipation_u,
          r.dissipation_theta,
          r.norm_pressure_l2,
          r.mean_u1,
          r.div_residual};
}

DiagnosticsRecord record(const State& s, const CoefficientModel& model,
                         const RecordOptions& opts) {
  validate_state(s);
  DiagnosticsRecord r;
  r.t = s.t;

  r.norm_u_l2 = pair_norm(s.u1, s.u2, 0);
  r.norm_grad_u = pair_norm(s.u1, s.u2, 1);
  r.norm_lap_u = pair_norm(s.u1, s.u2, 2);
  r.norm_h3_u = pair_norm(s.u1, s.u2, 3);
  r.norm_grad_theta = sobolev_norm(s.theta, 1);
  r.norm_lap_theta = sobolev_norm(s.theta, 2);
  r.norm_h3_theta = sobolev_norm(s.theta, 3);

  const RealField th = to_physical(s.theta);
  r.norm_theta_l2 = norm_lp(th, 2.0);
  r.norm_theta_l4 = norm_lp(th, 4.0);
  r.norm_theta_linf = norm_lp(th, kInfinity);

  r.overshoot_plus_2 = positive_part_norm(th, 1.0, 1.0, 2.0);
  r.overshoot_minus_2 = positive_part_norm(th, -1.0, -1.0, 2.0);
  r.overshoot_plus_4 = positive_part_norm(th, 1.0, 1.0, 4.0);
  r.overshoot_minus_4 = positive_part_norm(th, -1.0, -1.0, 4.0);

  r.norm_grad_hat_theta =
      sobolev_norm(to_spectral(kirchhoff_hat(th, model), Parity::Sine), 1);

  const RealField u1x = to_physical(ddx(s.u1));
  const RealField u1y = to_physical(ddy(s.u1));
  const RealField u2x = to_physical(ddx(s.u2));
  const RealField u2y = to_physical(ddy(s.u2));
  const RealField thx = to_physical(ddx(s.theta));
  const RealField thy = to_physical(ddy(s.theta));
  const RealField nu = th.map([&](double v) { return model.nu(v); });
  const RealField kappa = th.map([&](double v) { return model.kappa(v); });
  r.dissipation_u = weighted_dissipation(nu, {&u1x, &u1y, &u2x, &u2y});
  r.dissipation_theta = weighted_dissipation(kappa, {&thx, &thy});

  if (opts.pressure) {
    r.norm_pressure_l2 = sobolev_norm(recover_pressure(s, model, opts.rhs).p, 0);
  }
  r.mean_u1 = s.u1.at(0, 0).real();
  r.div_residual = divergence_residual(s);
  r.buoyancy_work = spectral_inner(s.theta, s.u2);

  if (opts.time_derivatives) {
    const Tendency d = rhs(s, model, opts.rhs);
    r.norm_u_t = pair_norm(d.du1, d.du2, 0);
    r.norm_theta_t = sobolev_norm(d.dtheta, 0);
  }
  return r;
}

Series series_of(const std::vector<DiagnosticsRecord>& records,
                 double DiagnosticsRecord::*field) {
  Series out;
  out.reserve(records.size());
  for (const auto& r : records) out.emplace_back(r.t, r.*field);
  return out;
}

DecayFit fit_decay_rate(const Series& series, TimeWindow window) {
  std::vector<double> ts;
  std::vector<double> logs;
  for (const auto& [t, v] : series) {
    if (t < window.begin || t > window.end) continue;
    if (!std::isfinite(v) || v < kFloor) continue;
    ts.push_back(t);
    logs.push_back(std::log(v));
  }
  DecayFit fit;
  fit.samples = static_cast<int>(ts.size());
  if (ts.empty()) {
    fit.fully_decayed = true;
    return fit;
  }
  if (ts.size() < 10) {
    throw std::invalid_argument("fit_decay_rate: " + std::to_string(ts.size()) +
                                " samples above the floor in the window, need at least 10");
  }
  const double n = static_cast<double>(ts.size());
  double mt = 0.0;
  double ml = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    mt += ts[i];
    ml += logs[i];
  }
  mt /= n;
  ml /= n;
  double stt = 0.0;
  double stl = 0.0;
  double sll = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    stt += (ts[i] - mt) * (ts[i] - mt);
    stl += (ts[i] - mt) * (logs[i] - ml);
    sll += (logs[i] - ml) * (logs[i] - ml);
  }
  if (stt == 0.0) throw std::invalid_argument("fit_decay_rate: all samples share one time");
  const double slope = stl / stt;
  fit.lambda = -slope;
  // a flat series is fitted perfectly by a zero slope
  fit.r_squared = sll == 0.0 ? 1.0 : (stl * stl) / (stt * sll);
  return fit;
}

double absorbing_radius(double nu_min, double p) {
  if (!(nu_min > 0.0) || !(p >= 1.0)) {
    throw std::invalid_argument("absorbing_radius: need nu_min > 0 and p >= 1");
  }
  constexpr double measure = 1.0;
  return 1.0 / nu_min + std::sqrt(measure) / nu_min + std::pow(measure, 1.0 / p) + 1.0;
}

double l2_envelope(double t, double u0_norm, double overshoot0, double nu_min,
                   double kappa_min) {
  const double decay = std::exp(-nu_min * t);
  const double forcing = (1.0 + 1.0) / nu_min * (1.0 - decay);
  const double factor = std::abs(nu_min - kappa_min) < 1e-10
                            ? t * decay
                            : (std::exp(-kappa_min * t) - decay) / (nu_min - kappa_min);
  return decay * u0_norm + forcing + overshoot0 * factor;
}

EnvelopeReport check_l2_envelope(const std::vector<DiagnosticsRecord>& records,
                                 const CoefficientModel& model) {
  EnvelopeReport rep;
  rep.limit_form = std::abs(model.nu_min - model.kappa_min) < 1e-10;
  if (records.empty()) return rep;
  const DiagnosticsRecord& first = records.front();
  const double u0 = first.norm_u_l2;
  const double ov0 = first.overshoot_plus_2 + first.overshoot_minus_2;
  rep.max_violation = -std::numeric_limits<double>::infinity();
  rep.max_relative_violation = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    const double env = l2_envelope(r.t - first.t, u0, ov0, model.nu_min, model.kappa_min);
    const double v = r.norm_u_l2 - env;
    if (v > rep.max_violation) {
      rep.max_violation = v;
      rep.worst_t = r.t;
    }
    const double rel = env > 0.0 ? v / env : (v > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    rep.max_relative_violation = std::max(rep.max_relative_violation, rel);
  }
  return rep;
}

double time_average(const Series& series, double begin, double length) {
  if (!(length > 0.0)) throw std::invalid_argument("time_average: window length must be positive");
  if (series.size() < 2) throw std::invalid_argument("time_average: series has fewer than two samples");
  const double end = begin + length;
  const double t0 = series.front().first;
  const double t1 = series.back().first;
  const double slack = 1e-9 * std::max(1.0, std::abs(t1));
  if (begin < t0 - slack || end > t1 + slack) {
    throw std::invalid_argument("time_average: window [" + std::to_string(begin) + ", " +
                                std::to_string(end) + "] leaves the series span [" +
                                std::to_string(t0) + ", " + std::to_string(t1) + "]");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < series.size(); ++i) {
    const auto [ta, va] = series[i];
    const auto [tb, vb] = series[i + 1];
    if (tb <= ta) throw std::invalid_argument("time_average: times must increase");
    const double lo = std::max(ta, begin);
    const double hi = std::min(tb, end);
    if (hi <= lo) continue;
    auto lerp = [&](double t) { return va + (vb - va) * (t - ta) / (tb - ta); };
    acc += 0.5 * (lerp(lo) + lerp(hi)) * (hi - lo);
  }
  return acc / length;
}

EnergyReport check_energy_inequality(const std::vector<DiagnosticsRecord>& records) {
  EnergyReport rep;
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const double gap = records[i + 1].t - records[i].t;
    if (gap > 0.01 * (1.0 + 1e-9)) {
      throw std::invalid_argument("check_energy_inequality: record spacing " +
                                  std::to_string(gap) + " exceeds 0.01");
    }
  }
  if (records.size() < 3) return rep;
  rep.worst_residual = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& m = records[i];
    const auto& b = records[i + 1];
    const double energy_rate =
        0.5 * (b.norm_u_l2 * b.norm_u_l2 - a.norm_u_l2 * a.norm_u_l2) / (b.t - a.t);
    const double lhs = energy_rate + m.dissipation_u;
    const double bound = m.norm_theta_l2 * m.norm_u_l2 + m.norm_u_l2;
    if (lhs - bound > rep.worst_residual) {
      rep.worst_residual = lhs - bound;
      rep.worst_t = m.t;
    }
    rep.identity_defect = std::max(rep.identity_defect, std::abs(lhs - m.buoyancy_work));
    ++rep.samples;
  }
  return rep;
}

}  // namespace bq
