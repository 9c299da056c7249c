#include "bq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>

#include "bq/diagnostics.hpp"
#include "bq/initial_data.hpp"
#include "bq/io.hpp"
#include "bq/manifest.hpp"
#include "bq/mms.hpp"
#include "bq/spectral_ops.hpp"
#include "bq/timestepper.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Check make_check(std::string name, bool passed, double value, double bound, std::string detail = {}) {
  return Check{std::move(name), passed, value, bound, std::move(detail)};
}

double mesh_max_abs_theta(const State& s) { return norm_lp(to_physical(s.theta), kInfinity); }

bool writes_files(const ScenarioConfig& cfg) { return !cfg.output.dir.empty(); }

std::filesystem::path artifact(const ScenarioConfig& cfg, const std::string& stem, const char* ext) {
  return cfg.output.dir / (cfg.scenario + (stem.empty() ? "" : "_" + stem) + ext);
}

void ensure_output_dir(const ScenarioConfig& cfg) {
  if (!writes_files(cfg)) return;
  std::error_code ec;
  std::filesystem::create_directories(cfg.output.dir, ec);
  if (ec) throw IoError(cfg.output.dir, "cannot create output directory: " + ec.message());
}

double plateau_begin(const ScenarioConfig& cfg) {
  return cfg.params.plateau_begin >= 0.0 ? cfg.params.plateau_begin : 0.75 * cfg.stepper.t_end;
}

bool plateaus_agree(double a, double b, double rel_tol, double floor) {
  const double hi = std::max(std::abs(a), std::abs(b));
  return hi <= floor || std::abs(a - b) <= rel_tol * hi;
}

std::string floor_note(double a, double b, double floor) {
  return std::max(std::abs(a), std::abs(b)) <= floor ? ", both below plateau_floor " + fmt(floor) : "";
}

double relative_gap(double a, double b) {
  const double hi = std::max(std::abs(a), std::abs(b));
  return hi > 0.0 ? std::abs(a - b) / hi : 0.0;
}

/// Runs one trajectory, writes its CSV and checkpoints, and records a
/// completion check.
Trajectory run_case(const ScenarioConfig& cfg, const State& s0, const CoefficientModel& model,
                    const std::string& label, RunOptions opts, ScenarioReport& rep) {
  opts.checkpoint_every = writes_files(cfg) ? cfg.output.checkpoint_every : 0;
  Trajectory tr = run(s0, model, cfg.stepper, cfg.record_every, opts);
  if (writes_files(cfg) && cfg.output.csv) {
    const auto path = artifact(cfg, label, ".csv");
    write_csv(path, tr.records);
    rep.artifacts.push_back(path);
  }
  for (std::size_t i = 0; i < tr.checkpoints.size(); ++i) {
    const long step = static_cast<long>(i + 1) * cfg.output.checkpoint_every;
    const auto path = artifact(cfg, label + "_step" + std::to_string(step), ".chk");
    save_checkpoint(tr.checkpoints[i], path);
    rep.artifacts.push_back(path);
  }
  tr.checkpoints.clear();
  rep.checks.push_back(make_check("run " + label + " completes", !tr.failed,
                                  static_cast<double>(tr.steps), kNaN, tr.failure));
  if (!tr.dt_changes.empty()) {
    rep.metrics["dt_changes_" + label] = static_cast<double>(tr.dt_changes.size());
    double smallest = cfg.stepper.dt;
    for (const auto& c : tr.dt_changes) smallest = std::min(smallest, c.new_dt);
    rep.metrics["min_dt_" + label] = smallest;
  }
  return tr;
}

/// Members advanced in lockstep to common times t0 + i dt.
class Ensemble {
 public:
  Ensemble(std::vector<State> states, const CoefficientModel& model, const StepperConfig& cfg)
      : states_(std::move(states)), cfg_(cfg), t0_(states_.front().t) {
    for (std::size_t i = 0; i < states_.size(); ++i) steppers_.emplace_back(model, cfg);
  }

  bool done() const { return cfg_.t_end - states_.front().t <= 1e-9 * cfg_.dt; }

  void step() {
    ++steps_;
    const double target = std::min(cfg_.t_end, t0_ + static_cast<double>(steps_) * cfg_.dt);
    for (std::size_t i = 0; i < states_.size(); ++i) {
      State& s = states_[i];
      while (target - s.t > 1e-9 * cfg_.dt) steppers_[i].advance(s, target);
      s.t = target;
    }
  }

  long steps() const { return steps_; }
  const std::vector<State>& states() const { return states_; }

 private:
  std::vector<State> states_;
  std::vector<Stepper> steppers_;
  StepperConfig cfg_;
  double t0_;
  long steps_ = 0;
};

// least-squares slope of y against x
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

bool ScenarioReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ScenarioReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

State prolong(const State& s, const Grid& fine) {
  const Grid& g = s.grid();
  if (fine.nx() < g.nx() || fine.ny() < g.ny()) throw std::invalid_argument("prolong: target grid is coarser");
  auto copy = [&](const SpectralField& f) {
    SpectralField out(fine, f.parity());
    // the coarse Nyquist row and column have no counterpart on the finer grid
    for (int k = g.kmin() + 1; k <= g.kmax(); ++k) {
      for (int n = 0; n < g.ny(); ++n) out.at(k, n) = f.at(k, n);
    }
    return out;
  };
  return State{copy(s.u1), copy(s.u2), copy(s.theta), s.t};
}

double h2_norm(const State& s) {
  return std::sqrt(std::pow(sobolev_full_norm(s.u1, 2), 2) + std::pow(sobolev_full_norm(s.u2, 2), 2) +
                   std::pow(sobolev_full_norm(s.theta, 2), 2));
}

double h2_distance(const State& a, const State& b) {
  return h2_norm(State{a.u1 - b.u1, a.u2 - b.u2, a.theta - b.theta, a.t});
}

double gradient_separation(const State& a, const State& b) {
  return std::pow(sobolev_norm(a.u1 - b.u1, 1), 2) + std::pow(sobolev_norm(a.u2 - b.u2, 1), 2) +
         std::pow(sobolev_norm(a.theta - b.theta, 1), 2);
}

ScenarioReport scenario_max_principle(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "max_principle";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const State s0 = make_initial_state(cfg.grid(), cfg.initial);
  const double start_max = mesh_max_abs_theta(s0);
  if (start_max > 1.0 + 1e-12) {
    throw ConfigError("max_principle needs initial theta within [-1, 1]; mesh max is " + fmt(start_max));
  }

  struct Probe {
    double worst = 0.0;
    bool completed = false;
    std::string detail;
  };
  auto probe = [&](const ScenarioConfig& run_cfg, const State& init, const std::string& label) {
    RunOptions opts;
    opts.pressure = false;
    Probe out;
    double first_violation = kNaN;
    opts.observer = [&](const State& s, const DiagnosticsRecord& r) {
      const double over = std::max(0.0, r.norm_theta_linf - 1.0);
      out.worst = std::max(out.worst, over);
      if (over > cfg.params.tol_mp && std::isnan(first_violation)) {
        first_violation = r.t;
        if (writes_files(cfg)) {
          const auto path = artifact(cfg, label + "_violation", ".chk");
          save_checkpoint(s, path);
          rep.artifacts.push_back(path);
        }
      }
    };
    out.completed = !run_case(run_cfg, init, model, label, opts, rep).failed;
    out.detail = "resolution " + std::to_string(init.grid().nx()) + "x" + std::to_string(init.grid().ny()) +
                 ", dt " + fmt(run_cfg.stepper.dt);
    if (!std::isnan(first_violation)) out.detail += ", first violation at t = " + fmt(first_violation);
    rep.metrics["max_overshoot_" + label] = out.worst;
    return out;
  };

  const Probe base = probe(cfg, s0, "base");
  rep.checks.push_back(make_check("mesh overshoot <= tol_mp", base.completed && base.worst <= cfg.params.tol_mp,
                                  base.worst, cfg.params.tol_mp, base.detail));
  if (cfg.params.refine) {
    // halve dt with the mesh width so the advective limit keeps its margin
    ScenarioConfig fine_cfg = cfg;
    fine_cfg.stepper.dt = 0.5 * cfg.stepper.dt;
    fine_cfg.record_every = 2 * cfg.record_every;
    const Probe refined = probe(fine_cfg, prolong(s0, Grid(2 * cfg.nx, 2 * cfg.ny)), "refined");
    const bool decreases = base.worst > 0.0 ? refined.worst < base.worst : refined.worst == 0.0;
    rep.checks.push_back(make_check("overshoot decreases under refinement",
                                    base.completed && refined.completed && decreases, refined.worst, base.worst,
                                    refined.detail));
  }
  return rep;
}

ScenarioReport scenario_overshoot_decay(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "overshoot_decay";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const State s0 = make_initial_state(cfg.grid(), cfg.initial);
  if (mesh_max_abs_theta(s0) <= 1.0) {
    throw ConfigError("overshoot_decay needs initial theta leaving [-1, 1]");
  }
  RunOptions opts;
  opts.pressure = false;
  const Trajectory tr = run_case(cfg, s0, model, "run", opts, rep);

  for (int p : {2, 4}) {
    Series g;
    for (const auto& r : tr.records) {
      g.emplace_back(r.t, p == 2 ? r.overshoot_plus_2 + r.overshoot_minus_2
                                 : r.overshoot_plus_4 + r.overshoot_minus_4);
    }
    const double bound = 4.0 * (p - 1) / (p * p) * model.kappa_min;
    const double required = (1.0 - cfg.params.decay_margin) * bound;
    const std::string name = "decay rate p=" + std::to_string(p);
    rep.metrics["bound_p" + std::to_string(p)] = bound;
    try {
      const DecayFit fit = fit_decay_rate(g, TimeWindow{cfg.params.window_begin, cfg.stepper.t_end});
      if (fit.fully_decayed) {
        rep.checks.push_back(make_check(name, true, kNaN, required,
                                        "overshoot below 1e-14 throughout the fit window"));
        continue;
      }
      rep.metrics["lambda_p" + std::to_string(p)] = fit.lambda;
      rep.metrics["r_squared_p" + std::to_string(p)] = fit.r_squared;
      rep.checks.push_back(make_check(name, fit.lambda >= required, fit.lambda, required,
                                      "fitted over " + std::to_string(fit.samples) + " samples, r^2 = " +
                                          fmt(fit.r_squared)));
    } catch (const std::invalid_argument& e) {
      rep.checks.push_back(make_check(name, false, kNaN, required, e.what()));
    }
  }
  return rep;
}

ScenarioReport scenario_absorbing_ball(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "absorbing_ball";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const double c0 = absorbing_radius(model.nu_min, 2.0);
  rep.metrics["C0"] = c0;
  const std::vector<double> amplitudes =
      cfg.params.amplitudes.empty() ? std::vector<double>{cfg.initial.amplitude} : cfg.params.amplitudes;

  for (double a : amplitudes) {
    InitialSpec spec = cfg.initial;
    spec.amplitude = a;
    const std::string label = "u0_" + fmt(a);
    RunOptions opts;
    opts.pressure = false;
    const Trajectory tr = run_case(cfg, make_initial_state(cfg.grid(), spec), model, label, opts, rep);
    if (tr.records.empty()) continue;

    const EnvelopeReport env = check_l2_envelope(tr.records, model);
    rep.metrics["envelope_rel_violation_" + label] = env.max_relative_violation;
    rep.checks.push_back(make_check("envelope holds for ||u0|| = " + fmt(a),
                                    env.max_relative_violation <= cfg.params.envelope_tol,
                                    env.max_relative_violation, cfg.params.envelope_tol,
                                    "worst at t = " + fmt(env.worst_t) +
                                        (env.limit_form ? " (limit form)" : "")));

    auto outside = [&](const DiagnosticsRecord& r) {
      return r.norm_u_l2 > c0 || r.norm_theta_l2 > c0 || r.norm_theta_l4 > c0;
    };
    std::size_t entry = tr.records.size();
    while (entry > 0 && !outside(tr.records[entry - 1])) --entry;
    const bool entered = entry < tr.records.size();
    const double entry_t = entered ? tr.records[entry].t : kNaN;
    rep.metrics["entry_time_" + label] = entry_t;
    double late_max = 0.0;
    for (std::size_t i = entry; i < tr.records.size(); ++i) late_max = std::max(late_max, tr.records[i].norm_u_l2);
    rep.checks.push_back(make_check("||u||, ||theta||_p <= C0 after entry for ||u0|| = " + fmt(a), entered,
                                    late_max, c0,
                                    entered ? "entry time " + fmt(entry_t) : "never entered the ball"));
  }
  return rep;
}

ScenarioReport scenario_uniform_bounds(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "uniform_bounds";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const double begin = plateau_begin(cfg);
  const double t_end = cfg.stepper.t_end;
  if (!(begin < t_end)) throw ConfigError("uniform_bounds: plateau window is empty");

  using Field = double DiagnosticsRecord::*;
  const std::vector<std::pair<std::string, Field>> norms = {
      {"norm_grad_theta", &DiagnosticsRecord::norm_grad_theta},
      {"norm_grad_u", &DiagnosticsRecord::norm_grad_u},
      {"norm_lap_theta", &DiagnosticsRecord::norm_lap_theta},
      {"norm_lap_u", &DiagnosticsRecord::norm_lap_u},
      {"norm_pressure_l2", &DiagnosticsRecord::norm_pressure_l2},
      {"norm_grad_hat_theta", &DiagnosticsRecord::norm_grad_hat_theta},
  };

  std::vector<std::map<std::string, double>> plateaus;
  for (double a : {cfg.initial.amplitude, 2.0 * cfg.initial.amplitude}) {
    InitialSpec spec = cfg.initial;
    spec.amplitude = a;
    const std::string label = "u0_" + fmt(a);
    RunOptions opts;
    opts.time_derivatives = true;
    const Trajectory tr = run_case(cfg, make_initial_state(cfg.grid(), spec), model, label, opts, rep);

    bool finite = true;
    for (const auto& r : tr.records) {
      for (double v : csv_values(r)) finite = finite && std::isfinite(v);
      finite = finite && std::isfinite(r.norm_u_t.value_or(0.0)) && std::isfinite(r.norm_theta_t.value_or(0.0));
    }
    rep.checks.push_back(make_check("all norms finite for ||u0|| = " + fmt(a), finite, kNaN, kNaN));
    if (tr.failed || tr.records.back().t < t_end - 1e-9) {
      plateaus.emplace_back();
      continue;
    }

    std::map<std::string, Series> series;
    for (const auto& [name, field] : norms) series[name] = series_of(tr.records, field);
    for (const auto& r : tr.records) {
      series["norm_u_t"].emplace_back(r.t, r.norm_u_t.value_or(kNaN));
      series["norm_theta_t"].emplace_back(r.t, r.norm_theta_t.value_or(kNaN));
      series["h3_u_sq"].emplace_back(r.t, r.norm_h3_u * r.norm_h3_u);
      series["h3_theta_sq"].emplace_back(r.t, r.norm_h3_theta * r.norm_h3_theta);
      series["dissipation"].emplace_back(r.t, r.dissipation_u + r.dissipation_theta);
    }
    std::map<std::string, double> plateau;
    for (const auto& [name, s] : series) {
      if (name.rfind("norm_", 0) == 0) plateau[name] = time_average(s, begin, t_end - begin);
    }
    // unit-window averages of the H^3 and dissipation series, from t = 1 on
    const double t0 = tr.records.front().t;
    for (const std::string name : {"h3_u_sq", "h3_theta_sq", "dissipation"}) {
      double worst = 0.0;
      for (double w = t0 + 1.0; w + 1.0 <= t_end + 1e-9; w += 1.0) {
        worst = std::max(worst, time_average(series[name], w, std::min(1.0, t_end - w)));
      }
      rep.metrics["max_unit_average_" + name + "_" + label] = worst;
      rep.checks.push_back(make_check("unit-window averages of " + name + " bounded for ||u0|| = " + fmt(a),
                                      std::isfinite(worst), worst, kNaN));
    }
    for (const auto& [name, v] : plateau) rep.metrics["plateau_" + name + "_" + label] = v;
    plateaus.push_back(std::move(plateau));
  }

  if (plateaus.size() == 2 && !plateaus[0].empty() && !plateaus[1].empty()) {
    for (const auto& [name, a] : plateaus[0]) {
      const double b = plateaus[1].at(name);
      rep.checks.push_back(make_check("plateau of " + name + " independent of ||u0||",
                                      plateaus_agree(a, b, cfg.params.plateau_tol, cfg.params.plateau_floor),
                                      relative_gap(a, b), cfg.params.plateau_tol,
                                      "plateaus " + fmt(a) + " and " + fmt(b) + " over [" + fmt(begin) +
                                          ", " + fmt(t_end) + "]" + floor_note(a, b, cfg.params.plateau_floor)));
    }
  }
  return rep;
}

ScenarioReport scenario_continuity_lipschitz(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "continuity_lipschitz";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const State base = make_initial_state(cfg.grid(), cfg.initial);

  std::vector<State> members{base};
  for (double d : cfg.params.deltas) members.push_back(perturbed_state(base, d, cfg.params.perturbation_seed));
  const std::size_t m = cfg.params.deltas.size();

  std::vector<double> times;
  std::vector<std::vector<double>> y1(m), h2(m);
  auto sample = [&](const std::vector<State>& states) {
    times.push_back(states.front().t);
    for (std::size_t i = 0; i < m; ++i) {
      y1[i].push_back(gradient_separation(states[i + 1], states[0]));
      h2[i].push_back(h2_distance(states[i + 1], states[0]));
    }
  };

  Ensemble ens(std::move(members), model, cfg.stepper);
  std::string failure;
  try {
    sample(ens.states());
    while (!ens.done()) {
      ens.step();
      if (ens.steps() % cfg.record_every == 0) sample(ens.states());
    }
  } catch (const std::exception& e) {
    failure = std::string(e.what()) + " (step " + std::to_string(ens.steps()) + ")";
  }
  rep.checks.push_back(make_check("runs complete", failure.empty(), static_cast<double>(ens.steps()), kNaN, failure));

  if (writes_files(cfg) && cfg.output.csv) {
    std::vector<std::string> header{"t"};
    for (double d : cfg.params.deltas) {
      header.push_back("y1_delta_" + fmt(d));
      header.push_back("h2_distance_delta_" + fmt(d));
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t j = 0; j < times.size(); ++j) {
      std::vector<double> row{times[j]};
      for (std::size_t i = 0; i < m; ++i) {
        row.push_back(y1[i][j]);
        row.push_back(h2[i][j]);
      }
      rows.push_back(std::move(row));
    }
    const auto path = artifact(cfg, "separation", ".csv");
    write_table(path, header, rows);
    rep.artifacts.push_back(path);
  }

  // amplification ratios y1(t) / y1(0) for the non-degenerate perturbations
  std::vector<std::vector<double>> ratios;
  for (std::size_t i = 0; i < m; ++i) {
    if (y1[i].front() == 0.0) {
      double largest = 0.0;
      for (double v : y1[i]) largest = std::max(largest, v);
      rep.notes.push_back("delta = " + fmt(cfg.params.deltas[i]) + ": zero separation");
      rep.checks.push_back(make_check("zero perturbation stays at zero separation", largest == 0.0, largest, 0.0));
      continue;
    }
    std::vector<double> r;
    for (double v : y1[i]) r.push_back(v / y1[i].front());
    ratios.push_back(std::move(r));

    std::vector<double> logs;
    bool finite = true;
    for (double v : ratios.back()) {
      logs.push_back(std::log(v));
      finite = finite && std::isfinite(logs.back());
    }
    const double c_rate = slope(times, logs);
    double intercept = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < times.size(); ++j) intercept = std::max(intercept, logs[j] - c_rate * times[j]);
    const std::string tag = "delta_" + fmt(cfg.params.deltas[i]);
    rep.metrics["growth_rate_" + tag] = c_rate;
    rep.metrics["growth_offset_" + tag] = intercept;
    double max_ratio = 0.0;
    for (double v : ratios.back()) max_ratio = std::max(max_ratio, v);
    rep.metrics["max_amplification_" + tag] = max_ratio;
    rep.checks.push_back(make_check("log y1 growth bounded by C t + c for delta = " + fmt(cfg.params.deltas[i]),
                                    finite && std::isfinite(c_rate) && std::isfinite(intercept), c_rate, kNaN,
                                    "C = " + fmt(c_rate) + ", c = " + fmt(intercept)));
  }
  if (ratios.size() >= 2) {
    double worst = 0.0;
    for (std::size_t i = 1; i < ratios.size(); ++i) {
      for (std::size_t j = 0; j < times.size(); ++j) worst = std::max(worst, relative_gap(ratios[0][j], ratios[i][j]));
    }
    rep.metrics["ratio_spread"] = worst;
    rep.checks.push_back(make_check("amplification ratio independent of delta", worst <= cfg.params.ratio_tol,
                                    worst, cfg.params.ratio_tol));
  }
  return rep;
}

ScenarioReport scenario_attractor_probe(const ScenarioConfig& cfg) {
  ScenarioReport rep;
  rep.scenario = "attractor_probe";
  ensure_output_dir(cfg);
  const CoefficientModel model = cfg.model();
  const int n = cfg.params.seeds;
  std::vector<State> members;
  for (int i = 0; i < n; ++i) {
    InitialSpec spec = cfg.initial;
    spec.seed = cfg.initial.seed + static_cast<std::uint64_t>(i);
    members.push_back(make_initial_state(cfg.grid(), spec));
  }

  const RecordOptions ro{false, false, {}};
  std::vector<std::vector<DiagnosticsRecord>> records(n);
  std::vector<double> times;
  std::vector<std::vector<double>> norms(n);
  std::vector<std::vector<double>> distances;
  auto sample = [&](const std::vector<State>& states) {
    times.push_back(states.front().t);
    std::vector<double> row;
    for (int i = 0; i < n; ++i) {
      records[i].push_back(record(states[i], model, ro));
      norms[i].push_back(h2_norm(states[i]));
      for (int j = i + 1; j < n; ++j) row.push_back(h2_distance(states[i], states[j]));
    }
    distances.push_back(std::move(row));
  };

  Ensemble ens(std::move(members), model, cfg.stepper);
  std::string failure;
  try {
    sample(ens.states());
    while (!ens.done()) {
      ens.step();
      if (ens.steps() % cfg.record_every == 0) sample(ens.states());
    }
  } catch (const std::exception& e) {
    failure = std::string(e.what()) + " (step " + std::to_string(ens.steps()) + ")";
  }
  rep.checks.push_back(make_check("ensemble completes", failure.empty(), static_cast<double>(ens.steps()), kNaN, failure));

  if (writes_files(cfg) && cfg.output.csv) {
    for (int i = 0; i < n; ++i) {
      const auto path = artifact(cfg, "seed" + std::to_string(cfg.initial.seed + i), ".csv");
      write_csv(path, records[i]);
      rep.artifacts.push_back(path);
    }
    std::vector<std::string> header{"t"};
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) header.push_back("h2_distance_" + std::to_string(i) + "_" + std::to_string(j));
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < times.size(); ++k) {
      std::vector<double> row{times[k]};
      row.insert(row.end(), distances[k].begin(), distances[k].end());
      rows.push_back(std::move(row));
    }
    const auto path = artifact(cfg, "distances", ".csv");
    write_table(path, header, rows);
    rep.artifacts.push_back(path);
  }

  bool finite = true;
  for (const auto& v : norms) {
    for (double x : v) finite = finite && std::isfinite(x);
  }
  rep.checks.push_back(make_check("no norm blow-up", finite, kNaN, kNaN));
  if (!failure.empty() || !finite) return rep;

  const double begin = plateau_begin(cfg);
  std::vector<double> plateau(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (times[k] >= begin - 1e-12) plateau[i] = std::max(plateau[i], norms[i][k]);
    }
    rep.metrics["plateau_h2_seed" + std::to_string(cfg.initial.seed + i)] = plateau[i];
  }
  const double hi = *std::max_element(plateau.begin(), plateau.end());
  const double lo = *std::min_element(plateau.begin(), plateau.end());
  rep.checks.push_back(make_check("late-time H2 plateaus agree across seeds",
                                  plateaus_agree(hi, lo, cfg.params.plateau_tol, cfg.params.plateau_floor),
                                  relative_gap(hi, lo), cfg.params.plateau_tol,
                                  "max " + fmt(hi) + ", min " + fmt(lo) + " over t >= " + fmt(begin) +
                                      floor_note(hi, lo, cfg.params.plateau_floor)));

  // every member enters the ball of the late-time maximum before the plateau window
  const double radius = (1.0 + cfg.params.plateau_tol) * hi + cfg.params.plateau_floor;
  rep.metrics["ball_radius"] = radius;
  double latest_entry = times.front();
  for (int i = 0; i < n; ++i) {
    std::size_t k = times.size();
    while (k > 0 && norms[i][k - 1] <= radius) --k;
    const double entry = k < times.size() ? times[k] : kNaN;
    rep.metrics["entry_time_seed" + std::to_string(cfg.initial.seed + i)] = entry;
    latest_entry = std::isnan(entry) || std::isnan(latest_entry) ? kNaN : std::max(latest_entry, entry);
  }
  rep.checks.push_back(make_check("all members enter and remain in the empirical ball",
                                  !std::isnan(latest_entry) && latest_entry <= begin, latest_entry, begin,
                                  "radius " + fmt(radius)));
  double last = 0.0;
  for (double d : distances.back()) last = std::max(last, d);
  rep.metrics["final_max_pairwise_h2_distance"] = last;
  return rep;
}

ScenarioReport scenario_mms_convergence(const ScenarioConfig&) {
  ScenarioReport rep;
  rep.scenario = "mms_convergence";
  const MmsConfig mc;
  const MmsReport r = mms_convergence(mc);
  auto table = [&](const char* title, const std::vector<MmsRun>& runs) {
    for (const auto& run : runs) {
      rep.notes.push_back(std::string(title) + " " + std::to_string(run.nx) + "x" + std::to_string(run.ny) +
                          " dt=" + fmt(run.dt) + " error=" + fmt(run.error) +
                          (run.temporal_floor > 0.0 ? " floor=" + fmt(run.temporal_floor) : ""));
    }
  };
  table("bdf2", r.temporal_bdf2);
  table("euler", r.temporal_euler);
  table("spatial", r.spatial);
  for (std::size_t i = 0; i < r.orders_bdf2.size(); ++i) {
    rep.checks.push_back(make_check("IMEX_BDF2 order, dt " + fmt(mc.dts[i]) + " -> " + fmt(mc.dts[i + 1]),
                                    r.orders_bdf2[i] >= mc.min_order, r.orders_bdf2[i], mc.min_order));
    rep.metrics["order_euler_" + std::to_string(i)] = r.orders_euler[i];
  }
  for (std::size_t i = 0; i < r.spatial_drops.size(); ++i) {
    const MmsRun& fine = r.spatial[i + 1];
    const bool at_floor = fine.error <= 3.0 * fine.temporal_floor;
    rep.checks.push_back(make_check("spatial drop, nx " + std::to_string(r.spatial[i].nx) + " -> " +
                                        std::to_string(fine.nx),
                                    r.spatial_drops[i] >= mc.min_spatial_drop || at_floor, r.spatial_drops[i],
                                    mc.min_spatial_drop, at_floor ? "at the temporal floor" : ""));
  }
  rep.metrics["bdf2_error_constant"] = r.bdf2_error_constant;
  return rep;
}

ScenarioReport run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::string started = utc_timestamp();
  ScenarioReport rep;
  if (cfg.scenario == "max_principle") rep = scenario_max_principle(cfg);
  else if (cfg.scenario == "overshoot_decay") rep = scenario_overshoot_decay(cfg);
  else if (cfg.scenario == "absorbing_ball") rep = scenario_absorbing_ball(cfg);
  else if (cfg.scenario == "uniform_bounds") rep = scenario_uniform_bounds(cfg);
  else if (cfg.scenario == "continuity_lipschitz") rep = scenario_continuity_lipschitz(cfg);
  else if (cfg.scenario == "attractor_probe") rep = scenario_attractor_probe(cfg);
  else rep = scenario_mms_convergence(cfg);

  if (writes_files(cfg) && cfg.output.manifest) {
    ensure_output_dir(cfg);
    const auto path = cfg.output.dir / "manifest.json";
    RunManifest m{cfg.echo(), code_version(), started, utc_timestamp(), rep};
    write_manifest(m, path);
    rep.artifacts.push_back(path);
  }
  return rep;
}

}  // namespace bq
