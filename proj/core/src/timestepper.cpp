#include "bq/timestepper.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "bq/diagnostics.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double amplification(Scheme scheme, double a, double z) {
  const double e = std::exp(-z);
  if (scheme == Scheme::ImexEuler) return e * std::abs(1.0 - a * z);
  using C = std::complex<double>;
  const C b = -(4.0 / 3.0) * e * (1.0 - a * z);
  const C c = (1.0 / 3.0) * e * e * (1.0 - 2.0 * a * z);
  const C disc = std::sqrt(b * b - 4.0 * c);
  return std::max(std::abs((-b + disc) / 2.0), std::abs((-b - disc) / 2.0));
}

double compute_threshold(Scheme scheme, double a) {
  if (a <= 0.0) return kInf;
  auto unstable = [&](double z) { return amplification(scheme, a, z) > 1.0 + 1e-12; };
  double prev = 0.0;
  double z = 0.0;
  double dz = 1e-3;
  while (z < 1e3) {
    z += dz;
    if (unstable(z)) {
      double lo = prev;
      double hi = z;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (unstable(mid) ? hi : lo) = mid;
      }
      return lo;
    }
    prev = z;
    dz = std::max(1e-3, 1e-3 * z);
  }
  return kInf;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::ImexEuler ? "IMEX_EULER" : "IMEX_BDF2"; }

Scheme scheme_from_string(const std::string& name) {
  std::string key;
  for (char c : name) key += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (key == "IMEX_EULER" || key == "EULER") return Scheme::ImexEuler;
  if (key == "IMEX_BDF2" || key == "BDF2") return Scheme::ImexBdf2;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected IMEX_EULER or IMEX_BDF2)");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("stepper: dt must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw std::invalid_argument("stepper: t_end must be non-negative");
  }
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) {
    throw std::invalid_argument("stepper: cfl_safety must lie in (0, 1]");
  }
}

CflViolation::CflViolation(const std::string& constraint, double dt, double limit)
    : std::runtime_error("CFL violation: " + constraint + " limit dt <= " + fmt(limit) +
                         ", requested dt = " + fmt(dt)),
      constraint_(constraint),
      dt_(dt),
      limit_(limit) {}

double stability_threshold(Scheme scheme, double excess_ratio) {
  // memoized on the ratio rounded up to a multiple of 1/64
  const long key = static_cast<long>(std::ceil(std::max(0.0, excess_ratio) * 64.0));
  static std::mutex mu;
  static std::map<std::pair<int, long>, double> memo;
  const std::pair<int, long> id{static_cast<int>(scheme), key};
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find(id); it != memo.end()) return it->second;
  }
  const double z = compute_threshold(scheme, static_cast<double>(key) / 64.0);
  std::lock_guard lock(mu);
  memo.emplace(id, z);
  return z;
}

double StepLimits::limit() const noexcept { return std::min({advective, viscous, conductive}); }

std::string StepLimits::limiting() const {
  const double m = limit();
  if (m == advective) return "advective";
  if (m == viscous) return "viscous";
  return "conductive";
}

StepLimits step_limits(const SplitEvaluation& eval, const Grid& grid,
                       const CoefficientModel& model, Scheme scheme, double cfl_safety) {
  StepLimits lim;
  lim.advective = eval.max_speed > 0.0 ? cfl_safety * grid.min_spacing() / eval.max_speed : kInf;
  const double lam = grid.max_dealiased_eigenvalue();
  auto diffusive = [&](double ratio, double floor) {
    const double z = stability_threshold(scheme, ratio);
    return std::isinf(z) ? kInf : cfl_safety * z / (floor * lam);
  };
  lim.viscous = diffusive(eval.nu_excess_ratio, model.nu_min);
  lim.conductive = diffusive(eval.kappa_excess_ratio, model.kappa_min);
  return lim;
}

Stepper::Stepper(CoefficientModel model, StepperConfig cfg, RhsOptions rhs, ForcingFn forcing)
    : model_(std::move(model)),
      cfg_(cfg),
      rhs_(rhs),
      forcing_(std::move(forcing)),
      dt_(cfg.dt) {
  cfg_.validate();
}

void Stepper::change_dt(double t, double new_dt, const std::string& reason) {
  if (new_dt == dt_) return;
  log_.push_back(DtChange{t, dt_, new_dt, reason});
  dt_ = new_dt;
}

const Stepper::Factors& Stepper::factors(const Grid& grid, double h) {
  if (factors_.h == h && factors_.nu1.size() == grid.size()) return factors_;
  factors_.h = h;
  for (auto* v : {&factors_.nu1, &factors_.nu2, &factors_.kappa1, &factors_.kappa2}) {
    v->assign(grid.size(), 0.0);
  }
  for (int k = grid.kmin(); k <= grid.kmax(); ++k) {
    for (int n = 0; n <= grid.ny(); ++n) {
      const std::size_t i = grid.mode_index(k, n);
      const double lam = laplacian_symbol(grid, k, n);
      factors_.nu1[i] = std::exp(-model_.nu_min * lam * h);
      factors_.nu2[i] = factors_.nu1[i] * factors_.nu1[i];
      factors_.kappa1[i] = std::exp(-model_.kappa_min * lam * h);
      factors_.kappa2[i] = factors_.kappa1[i] * factors_.kappa1[i];
    }
  }
  return factors_;
}

Tendency Stepper::explicit_tendency(const State& s, SplitEvaluation& eval) const {
  eval = evaluate_split(s, model_, rhs_);
  Tendency n = std::move(eval.explicit_part);
  if (forcing_) {
    Tendency f = forcing_(s.t, s.grid());
    dealias(f.du1);
    dealias(f.du2);
    dealias(f.dtheta);
    auto [p1, p2] = leray_project(f.du1, f.du2);
    n.du1 += p1;
    n.du2 += p2;
    n.dtheta += f.dtheta;
  }
  return n;
}

double Stepper::advance(State& s, double t_stop) {
  const double remaining = t_stop - s.t;
  if (!(remaining > 0.0)) return 0.0;
  const Grid& grid = s.grid();

  SplitEvaluation eval;
  Tendency n = explicit_tendency(s, eval);
  const StepLimits lim = step_limits(eval, grid, model_, cfg_.scheme, cfg_.cfl_safety);

  if (dt_ > lim.limit()) {
    if (!cfg_.adaptive) throw CflViolation(lim.limiting(), dt_, lim.limit());
    double h = dt_;
    while (h > lim.limit()) h *= 0.5;
    change_dt(s.t, h, lim.limiting() + " limit " + fmt(lim.limit()));
  }

  const bool partial = remaining < dt_ * (1.0 - 1e-9);
  const double h = partial ? remaining : dt_;
  const Factors& f = factors(grid, h);

  const bool bdf2 = cfg_.scheme == Scheme::ImexBdf2 && !partial && history_ && history_->h == h;
  State next = s;
  auto euler = [&](SpectralField& c, const SpectralField& nn, const std::vector<double>& e1) {
    auto cc = c.coeffs();
    auto nv = nn.coeffs();
    for (std::size_t i = 0; i < cc.size(); ++i) cc[i] = e1[i] * (cc[i] + h * nv[i]);
  };
  auto bdf = [&](SpectralField& c, const SpectralField& prev, const SpectralField& nn,
                 const SpectralField& nprev, const std::vector<double>& e1,
                 const std::vector<double>& e2) {
    auto cc = c.coeffs();
    auto pv = prev.coeffs();
    auto nv = nn.coeffs();
    auto np = nprev.coeffs();
    for (std::size_t i = 0; i < cc.size(); ++i) {
      cc[i] = (4.0 / 3.0) * e1[i] * cc[i] - (1.0 / 3.0) * e2[i] * pv[i] +
              (2.0 / 3.0) * h * (2.0 * e1[i] * nv[i] - e2[i] * np[i]);
    }
  };
  if (bdf2) {
    const History& hist = *history_;
    bdf(next.u1, hist.state.u1, n.du1, hist.explicit_part.du1, f.nu1, f.nu2);
    bdf(next.u2, hist.state.u2, n.du2, hist.explicit_part.du2, f.nu1, f.nu2);
    bdf(next.theta, hist.state.theta, n.dtheta, hist.explicit_part.dtheta, f.kappa1, f.kappa2);
  } else {
    euler(next.u1, n.du1, f.nu1);
    euler(next.u2, n.du2, f.nu1);
    euler(next.theta, n.dtheta, f.kappa1);
  }
  auto [p1, p2] = leray_project(next.u1, next.u2);
  next.u1 = std::move(p1);
  next.u2 = std::move(p2);
  next.t = s.t + h;
  next.u1.require_finite("step: u1");
  next.u2.require_finite("step: u2");
  next.theta.require_finite("step: theta");

  if (cfg_.scheme == Scheme::ImexBdf2 && !partial) {
    history_ = History{std::move(n), std::move(s), h};
  } else {
    history_.reset();
  }
  s = std::move(next);

  if (cfg_.adaptive && !partial && dt_ < cfg_.dt) {
    const double grown = std::min(cfg_.dt, 1.1 * dt_);
    if (grown <= lim.limit()) change_dt(s.t, grown, "growth");
  }
  return h;
}

State step(const State& s, const CoefficientModel& model, const StepperConfig& cfg) {
  validate_state(s);
  StepperConfig euler = cfg;
  euler.scheme = Scheme::ImexEuler;
  Stepper stepper(model, euler);
  State out = s;
  const double target = s.t + cfg.dt;
  while (target - out.t > 1e-9 * cfg.dt) stepper.advance(out, target);
  out.t = target;
  return out;
}

Trajectory run(const State& s0, const CoefficientModel& model, const StepperConfig& cfg,
               int record_every, const RunOptions& opts) {
  cfg.validate();
  if (record_every < 1) throw std::invalid_argument("run: record_every must be positive");
  validate_state(s0);

  Trajectory tr;
  State s = s0;
  const RecordOptions ro{opts.time_derivatives, opts.pressure, opts.rhs};
  auto keep = [&] {
    tr.records.push_back(record(s, model, ro));
    if (opts.observer) opts.observer(s, tr.records.back());
  };

  Stepper stepper(model, cfg, opts.rhs, opts.forcing);
  const double t0 = s.t;
  const double t_end = std::max(cfg.t_end, t0);
  long steps = 0;
  try {
    keep();
    while (t_end - s.t > 1e-9 * cfg.dt) {
      stepper.advance(s, t_end);
      ++steps;
      if (!cfg.adaptive) s.t = std::min(t_end, t0 + static_cast<double>(steps) * cfg.dt);
      if (steps % record_every == 0) keep();
      if (opts.checkpoint_every > 0 && steps % opts.checkpoint_every == 0) {
        tr.checkpoints.push_back(s);
      }
    }
  } catch (const std::exception& e) {
    tr.failed = true;
    tr.failure = std::string(e.what()) + " (t = " + fmt(s.t) + ", step " + std::to_string(steps) + ")";
  }
  tr.steps = steps;
  tr.dt_changes = stepper.dt_log();
  tr.final_state = std::move(s);
  return tr;
}

}  // namespace bq
