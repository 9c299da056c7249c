#pragma once

#include <vector>

#include "bq/coefficient_model.hpp"
#include "bq/dynamics.hpp"
#include "bq/grid.hpp"
#include "bq/timestepper.hpp"

namespace bq {

/// Exact solution built from the stream function
///   psi = A sin(2 pi x) sin(pi y) e^{-t},  theta = A sin(pi y) e^{-t}
/// with the forcing that makes it solve the full system.
///
/// The forcing depends on y through nu(theta) and kappa(theta) and is not
/// band-limited; it is sampled on a grid refined by `oversample` in y and
/// truncated, so its coefficients are the series coefficients rather than
/// values aliased the same way as the solver's own products.
class ManufacturedSolution {
 public:
  explicit ManufacturedSolution(CoefficientModel model, double amplitude = 1.0,
                                int oversample = 4);

  const CoefficientModel& model() const noexcept { return model_; }
  double amplitude() const noexcept { return amplitude_; }

  State exact(const Grid& grid, double t) const;
  /// Forcing coefficients on `grid` from the analytic derivatives.
  Tendency forcing(double t, const Grid& grid) const;
  /// Forcing sampled on the mesh of `grid` itself.
  Tendency sampled_forcing(double t, const Grid& grid) const;
  /// Spectral L^2 distance sqrt(||u - u*||^2 + ||theta - theta*||^2) at s.t.
  double error(const State& s) const;

 private:
  CoefficientModel model_;
  double amplitude_;
  int oversample_;
};

struct MmsRun {
  int nx = 0;
  int ny = 0;
  double dt = 0.0;
  Scheme scheme = Scheme::ImexBdf2;
  double error = 0.0;
  long steps = 0;
  double seconds = 0.0;
  /// Estimated time-discretization part of `error` (spatial runs only).
  double temporal_floor = 0.0;
};

MmsRun run_mms(const ManufacturedSolution& mms, const Grid& grid, double dt, Scheme scheme,
               double t_end = 1.0);

/// BDF2 at dt, dt/2 and dt/4 with two Richardson extrapolations in time;
/// error is that of the finer extrapolation.
MmsRun run_mms_spatial(const ManufacturedSolution& mms, const Grid& grid, double dt,
                       double t_end);

struct MmsConfig {
  double amplitude = 1.0;
  double t_end = 1.0;
  int temporal_nx = 32;
  std::vector<double> dts{4e-3, 2e-3, 1e-3};
  std::vector<int> spatial_nx{32, 64, 128};
  /// Larger data so the y-spectrum of nu(theta) is still resolving at nx = 64.
  double spatial_amplitude = 3.0;
  double spatial_t_end = 0.1;
  double spatial_dt = 4e-4;
  double min_order = 1.8;
  double min_spatial_drop = 10.0;
};

struct MmsReport {
  std::vector<MmsRun> temporal_bdf2;
  std::vector<MmsRun> temporal_euler;
  std::vector<MmsRun> spatial;
  /// log2 of successive error ratios under dt halving
  std::vector<double> orders_bdf2;
  std::vector<double> orders_euler;
  /// coarse/fine error ratio per grid doubling
  std::vector<double> spatial_drops;
  /// error / dt^2 of the finest BDF2 temporal run
  double bdf2_error_constant = 0.0;
  bool temporal_ok = false;
  bool spatial_ok = false;

  bool passed() const noexcept { return temporal_ok && spatial_ok; }
};

/// Temporal study on a temporal_nx x temporal_nx/2 grid and Richardson-corrected
/// spatial study, both with the bounded-rational model.  A grid doubling passes
/// when the error drops by min_spatial_drop or the finer error is within 3x of
/// its temporal floor.
MmsReport mms_convergence(const MmsConfig& cfg = {});

}  // namespace bq
