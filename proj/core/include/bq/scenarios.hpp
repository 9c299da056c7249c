#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "bq/config.hpp"
#include "bq/dynamics.hpp"

namespace bq {

/// One asserted property of a scenario.
struct Check {
  std::string name;
  bool passed = false;
  /// measured quantity and the bound it was held to (NaN when not numeric)
  double value = 0.0;
  double bound = 0.0;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<Check> checks;
  /// named scalar results (fitted rates, entry times, plateaus)
  std::map<std::string, double> metrics;
  std::vector<std::filesystem::path> artifacts;
  std::vector<std::string> notes;

  bool passed() const;
  const Check* find(const std::string& name) const;
};

ScenarioReport scenario_max_principle(const ScenarioConfig& cfg);
ScenarioReport scenario_overshoot_decay(const ScenarioConfig& cfg);
ScenarioReport scenario_absorbing_ball(const ScenarioConfig& cfg);
ScenarioReport scenario_uniform_bounds(const ScenarioConfig& cfg);
ScenarioReport scenario_continuity_lipschitz(const ScenarioConfig& cfg);
ScenarioReport scenario_attractor_probe(const ScenarioConfig& cfg);
ScenarioReport scenario_mms_convergence(const ScenarioConfig& cfg);

/// Dispatches on cfg.scenario after validation and, when cfg.output.dir is
/// set, writes manifest.json there.  Throws ConfigError for invalid configs.
ScenarioReport run_scenario(const ScenarioConfig& cfg);

/// Copies every coefficient of s onto the finer grid (zero padding).
State prolong(const State& s, const Grid& fine);

/// sqrt of the summed full H^2 norms of u1, u2 and theta.
double h2_norm(const State& s);
/// h2_norm of the difference a - b.
double h2_distance(const State& a, const State& b);
/// ||grad (u_a - u_b)||^2 + ||grad (theta_a - theta_b)||^2
double gradient_separation(const State& a, const State& b);

}  // namespace bq
