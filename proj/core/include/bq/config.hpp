#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bq/coefficient_model.hpp"
#include "bq/grid.hpp"
#include "bq/initial_data.hpp"
#include "bq/timestepper.hpp"

namespace bq {

/// Malformed, unknown or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& scenario_names();

/// Scenario-specific knobs; each scenario reads only the ones it needs.
struct ScenarioParams {
  /// max_principle: allowed max(0, ||theta||_inf - 1)
  double tol_mp = 1e-3;
  /// max_principle: also run at twice the resolution
  bool refine = true;
  /// overshoot_decay: allowed relative shortfall of the fitted rate
  double decay_margin = 0.05;
  /// overshoot_decay, uniform_bounds: start of the fit or plateau window
  double window_begin = 0.1;
  /// absorbing_ball: relative envelope tolerance
  double envelope_tol = 1e-2;
  /// absorbing_ball: ||u0|| values; empty means initial.amplitude only
  std::vector<double> amplitudes;
  /// uniform_bounds, attractor_probe: relative plateau agreement
  double plateau_tol = 0.1;
  /// uniform_bounds, attractor_probe: plateau window start; negative means 3/4 of t_end
  double plateau_begin = -1.0;
  /// plateaus below this absolute value count as agreeing
  double plateau_floor = 1e-8;
  /// continuity_lipschitz: H^1 perturbation sizes
  std::vector<double> deltas{1e-6, 1e-7};
  /// continuity_lipschitz: relative agreement of the amplification ratios
  double ratio_tol = 0.1;
  std::uint64_t perturbation_seed = 1000;
  /// attractor_probe: ensemble size, seeds initial.seed + 0 .. seeds - 1
  int seeds = 4;
};

struct OutputParams {
  /// empty: keep everything in memory
  std::filesystem::path dir;
  bool csv = true;
  /// write manifest.json next to the CSV files
  bool manifest = true;
  /// write a checkpoint file every this many steps (0: never)
  int checkpoint_every = 0;
};

struct ScenarioConfig {
  std::string scenario = "max_principle";
  int nx = 128;
  int ny = 64;
  std::string model_preset = "constant";
  ModelParams model_params;
  StepperConfig stepper;
  int record_every = 10;
  InitialSpec initial;
  ScenarioParams params;
  OutputParams output;

  Grid grid() const { return Grid(nx, ny); }
  CoefficientModel model() const;
  /// Presets exist, the grid is valid, the stepper validates and the model
  /// passes its assumption audit.  Throws ConfigError.
  void validate() const;
  /// Every key with its effective value, in section.key form.
  std::map<std::string, std::string> echo() const;
};

/// Parses `section.key = value` lines; '#' starts a comment.  Unknown keys,
/// duplicates and unparsable values are ConfigError naming the line.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Recognised keys in section.key form.
const std::vector<std::string>& config_keys();

}  // namespace bq
