#include "bq/mms.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

constexpr double pi = std::numbers::pi;

struct Point {
  double u1, u1x, u1y;
  double u2, u2x, u2y;
  double th, thy;
};

Point evaluate(double amplitude, double t, double x, double y) {
  const double g = amplitude * std::exp(-t);
  const double sx = std::sin(2 * pi * x);
  const double cx = std::cos(2 * pi * x);
  const double sy = std::sin(pi * y);
  const double cy = std::cos(pi * y);
  return Point{pi * sx * cy * g,        2 * pi * pi * cx * cy * g, -pi * pi * sx * sy * g,
               -2 * pi * cx * sy * g,   4 * pi * pi * sx * sy * g, -2 * pi * pi * cx * cy * g,
               sy * g,                  pi * cy * g};
}

}  // namespace

ManufacturedSolution::ManufacturedSolution(CoefficientModel model, double amplitude, int oversample)
    : model_(std::move(model)), amplitude_(amplitude), oversample_(oversample) {
  if (!std::isfinite(amplitude)) throw std::invalid_argument("mms: amplitude must be finite");
  if (oversample < 1) throw std::invalid_argument("mms: oversample must be at least 1");
}

State ManufacturedSolution::exact(const Grid& grid, double t) const {
  auto field = [&](auto pick, Parity parity) {
    return to_spectral(RealField::from_function(grid, [&](double x, double y) {
                         return pick(evaluate(amplitude_, t, x, y));
                       }),
                       parity);
  };
  State s{field([](const Point& p) { return p.u1; }, Parity::Cosine),
          field([](const Point& p) { return p.u2; }, Parity::Sine),
          field([](const Point& p) { return p.th; }, Parity::Sine), t};
  return s;
}

Tendency ManufacturedSolution::forcing(double t, const Grid& grid) const {
  if (oversample_ == 1) return sampled_forcing(t, grid);
  const Tendency fine = sampled_forcing(t, Grid(grid.nx(), oversample_ * grid.ny()));
  auto restrict_to = [&](const SpectralField& f) {
    SpectralField out(grid, f.parity());
    for (int k = grid.kmin(); k <= grid.kmax(); ++k) {
      for (int n = 0; n < grid.ny(); ++n) out.at(k, n) = f.at(k, n);
    }
    return out;
  };
  return Tendency{restrict_to(fine.du1), restrict_to(fine.du2), restrict_to(fine.dtheta)};
}

Tendency ManufacturedSolution::sampled_forcing(double t, const Grid& grid) const {
  const double lap_u = -5.0 * pi * pi;
  const double lap_th = -pi * pi;
  const CoefficientModel& m = model_;
  // u_t = -u for the e^{-t} profile; forcing = u_t minus the right-hand side at the exact solution
  auto f_u1 = [&](double x, double y) {
    const Point p = evaluate(amplitude_, t, x, y);
    const double visc = m.nu(p.th) * lap_u * p.u1 + m.nu_prime(p.th) * p.thy * p.u1y;
    const double adv = p.u1 * p.u1x + p.u2 * p.u1y;
    return -p.u1 - (visc - adv);
  };
  auto f_u2 = [&](double x, double y) {
    const Point p = evaluate(amplitude_, t, x, y);
    const double visc = m.nu(p.th) * lap_u * p.u2 + m.nu_prime(p.th) * p.thy * p.u2y;
    const double adv = p.u1 * p.u2x + p.u2 * p.u2y;
    return -p.u2 - (visc - adv + p.th);
  };
  auto f_th = [&](double x, double y) {
    const Point p = evaluate(amplitude_, t, x, y);
    const double kp = m.kappa_prime(p.th);
    const double cond = m.kappa(p.th) * lap_th * p.th + kp * p.thy * p.thy - kp * p.thy;
    const double adv = p.u2 * p.thy;
    return -p.th - (cond - adv + p.u2);
  };
  return Tendency{to_spectral(RealField::from_function(grid, f_u1), Parity::Cosine),
                  to_spectral(RealField::from_function(grid, f_u2), Parity::Sine),
                  to_spectral(RealField::from_function(grid, f_th), Parity::Sine)};
}

double ManufacturedSolution::error(const State& s) const {
  const State ref = exact(s.grid(), s.t);
  const double e1 = sobolev_norm(s.u1 - ref.u1, 0);
  const double e2 = sobolev_norm(s.u2 - ref.u2, 0);
  const double e3 = sobolev_norm(s.theta - ref.theta, 0);
  return std::sqrt(e1 * e1 + e2 * e2 + e3 * e3);
}

namespace {

struct Integration {
  State state;
  MmsRun run;
};

Integration integrate(const ManufacturedSolution& mms, const Grid& grid, double dt, Scheme scheme,
                      double t_end) {
  StepperConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.scheme = scheme;
  cfg.cfl_safety = 1.0;
  Stepper stepper(mms.model(), cfg, RhsOptions{},
                  [&mms](double t, const Grid& g) { return mms.forcing(t, g); });

  const auto start = std::chrono::steady_clock::now();
  State s = mms.exact(grid, 0.0);
  long steps = 0;
  while (t_end - s.t > 1e-9 * dt) {
    stepper.advance(s, t_end);
    ++steps;
    s.t = std::min(t_end, static_cast<double>(steps) * dt);
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  MmsRun run{grid.nx(), grid.ny(), dt, scheme, mms.error(s), steps, elapsed.count(), 0.0};
  return {std::move(s), run};
}

// (4 fine - coarse) / 3 per component
State richardson(const State& coarse, const State& fine) {
  State r = fine;
  r.u1 = (4.0 / 3.0) * fine.u1 - (1.0 / 3.0) * coarse.u1;
  r.u2 = (4.0 / 3.0) * fine.u2 - (1.0 / 3.0) * coarse.u2;
  r.theta = (4.0 / 3.0) * fine.theta - (1.0 / 3.0) * coarse.theta;
  return r;
}

double distance(const State& a, const State& b) {
  const double e1 = sobolev_norm(a.u1 - b.u1, 0);
  const double e2 = sobolev_norm(a.u2 - b.u2, 0);
  const double e3 = sobolev_norm(a.theta - b.theta, 0);
  return std::sqrt(e1 * e1 + e2 * e2 + e3 * e3);
}

}  // namespace

MmsRun run_mms(const ManufacturedSolution& mms, const Grid& grid, double dt, Scheme scheme,
               double t_end) {
  return integrate(mms, grid, dt, scheme, t_end).run;
}

MmsRun run_mms_spatial(const ManufacturedSolution& mms, const Grid& grid, double dt,
                       double t_end) {
  const auto start = std::chrono::steady_clock::now();
  Integration a = integrate(mms, grid, dt, Scheme::ImexBdf2, t_end);
  Integration b = integrate(mms, grid, dt / 2, Scheme::ImexBdf2, t_end);
  Integration c = integrate(mms, grid, dt / 4, Scheme::ImexBdf2, t_end);
  const State r1 = richardson(a.state, b.state);
  const State r2 = richardson(b.state, c.state);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  MmsRun run{grid.nx(), grid.ny(), dt, Scheme::ImexBdf2, mms.error(r2),
             a.run.steps + b.run.steps + c.run.steps, elapsed.count(), 0.0};
  // the extrapolated error is third order in dt, so r1 - r2 is about 7 times that of r2
  run.temporal_floor = distance(r1, r2) / 7.0;
  return run;
}

MmsReport mms_convergence(const MmsConfig& cfg) {
  if (cfg.dts.size() < 2 || cfg.spatial_nx.size() < 2) {
    throw std::invalid_argument("mms: need at least two step sizes and two grids");
  }
  const CoefficientModel model = CoefficientModel::bounded_rational();
  MmsReport rep;

  const ManufacturedSolution temporal(model, cfg.amplitude);
  const Grid coarse(cfg.temporal_nx, cfg.temporal_nx / 2);
  for (double dt : cfg.dts) {
    rep.temporal_bdf2.push_back(run_mms(temporal, coarse, dt, Scheme::ImexBdf2, cfg.t_end));
    rep.temporal_euler.push_back(run_mms(temporal, coarse, dt, Scheme::ImexEuler, cfg.t_end));
  }
  auto orders = [](const std::vector<MmsRun>& runs) {
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
      out.push_back(std::log(runs[i].error / runs[i + 1].error) /
                    std::log(runs[i].dt / runs[i + 1].dt));
    }
    return out;
  };
  rep.orders_bdf2 = orders(rep.temporal_bdf2);
  rep.orders_euler = orders(rep.temporal_euler);
  rep.temporal_ok = true;
  for (double p : rep.orders_bdf2) rep.temporal_ok = rep.temporal_ok && p >= cfg.min_order;
  const MmsRun& finest = rep.temporal_bdf2.back();
  rep.bdf2_error_constant = finest.error / (finest.dt * finest.dt);

  const ManufacturedSolution spatial(model, cfg.spatial_amplitude);
  for (int nx : cfg.spatial_nx) {
    rep.spatial.push_back(run_mms_spatial(spatial, Grid(nx, nx / 2), cfg.spatial_dt, cfg.spatial_t_end));
  }
  rep.spatial_ok = true;
  for (std::size_t i = 0; i + 1 < rep.spatial.size(); ++i) {
    const MmsRun& fine = rep.spatial[i + 1];
    const double drop = rep.spatial[i].error / fine.error;
    rep.spatial_drops.push_back(drop);
    const bool at_floor = fine.error <= 3.0 * fine.temporal_floor;
    rep.spatial_ok = rep.spatial_ok && (drop >= cfg.min_spatial_drop || at_floor);
  }
  return rep;
}

}  // namespace bq
