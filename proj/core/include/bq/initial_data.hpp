#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bq/dynamics.hpp"

namespace bq {

/// Parameters shared by the initial-data presets.
struct InitialSpec {
  std::string preset = "random-smooth";
  /// ||u0|| for single-mode, random-smooth and overshoot
  double amplitude = 1.0;
  /// theta scale: b of b sin(pi y) for single-mode and overshoot,
  /// mesh max |theta0| for random-smooth
  double theta_amplitude = 0.5;
  std::uint64_t seed = 1;
  /// spectral width of random-smooth data
  double sigma = 3.0;
};

const std::vector<std::string>& initial_preset_names();

/// Dispatches on spec.preset; throws std::invalid_argument for unknown names.
State make_initial_state(const Grid& grid, const InitialSpec& spec);

State conduction_state(const Grid& grid);

/// Stream function sin(2 pi x) sin(pi y) scaled to ||u|| = amplitude, theta = b sin(pi y).
State single_mode_state(const Grid& grid, double amplitude, double b);

/// Seeded Gaussian-spectrum data, projected, mean-pinned and dealiased.
/// ||u|| = amplitude; theta rescaled to mesh max |theta| = theta_amplitude.
State random_smooth_state(const Grid& grid, std::uint64_t seed, double amplitude,
                          double theta_amplitude, double sigma = 3.0);

/// theta0 = b sin(pi y) (1 + cos(2 pi x) / 4) leaving [-1, 1], plus random-smooth
/// velocity of size amplitude.
State overshoot_state(const Grid& grid, double b, double amplitude, std::uint64_t seed);

/// Adds a seeded smooth perturbation (v, eta) with ||grad v||^2 + ||grad eta||^2 = delta^2.
State perturbed_state(const State& base, double delta, std::uint64_t seed);

}  // namespace bq
