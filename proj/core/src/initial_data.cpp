#include "bq/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

double velocity_norm(const State& s) {
  return std::hypot(sobolev_norm(s.u1, 0), sobolev_norm(s.u2, 0));
}

}  // namespace

const std::vector<std::string>& initial_preset_names() {
  static const std::vector<std::string> names = {"conduction", "single-mode", "random-smooth",
                                                 "overshoot"};
  return names;
}

State make_initial_state(const Grid& grid, const InitialSpec& spec) {
  if (spec.preset == "conduction") return conduction_state(grid);
  if (spec.preset == "single-mode") {
    return single_mode_state(grid, spec.amplitude, spec.theta_amplitude);
  }
  if (spec.preset == "random-smooth") {
    return random_smooth_state(grid, spec.seed, spec.amplitude, spec.theta_amplitude, spec.sigma);
  }
  if (spec.preset == "overshoot") {
    return overshoot_state(grid, spec.theta_amplitude, spec.amplitude, spec.seed);
  }
  throw std::invalid_argument("unknown initial preset '" + spec.preset + "'");
}

State conduction_state(const Grid& grid) { return State::zero(grid); }

State single_mode_state(const Grid& grid, double amplitude, double b) {
  using std::numbers::pi;
  State s = State::zero(grid);
  // u1 = psi_y = pi sin(2 pi x) cos(pi y), u2 = -psi_x = -2 pi cos(2 pi x) sin(pi y)
  s.u1.set_real_mode(1, 1, Complex(0.0, -0.5 * pi));
  s.u2.set_real_mode(1, 1, Complex(-pi, 0.0));
  const double norm = velocity_norm(s);
  s.u1 *= amplitude / norm;
  s.u2 *= amplitude / norm;
  s.theta.at(0, 1) = b;
  enforce_invariants(s);
  return s;
}

State random_smooth_state(const Grid& grid, std::uint64_t seed, double amplitude,
                          double theta_amplitude, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("random-smooth: sigma must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  State s = State::zero(grid);
  const double two_s2 = 2.0 * sigma * sigma;
  // fixed draw order: k ascending, n ascending, (u1, u2, theta) x (re, im)
  for (int k = 0; k <= grid.kmax(); ++k) {
    for (int n = 0; n <= grid.ny(); ++n) {
      if (!grid.in_dealiased_band(k, n)) continue;
      const double shape = std::exp(-(k * k + n * n) / two_s2);
      double draws[6];
      for (double& d : draws) d = normal(rng);
      const double im_on = k == 0 ? 0.0 : 1.0;
      s.u1.set_real_mode(k, n, shape * Complex(draws[0], im_on * draws[1]));
      if (n >= 1) {
        s.u2.set_real_mode(k, n, shape * Complex(draws[2], im_on * draws[3]));
        s.theta.set_real_mode(k, n, shape * Complex(draws[4], im_on * draws[5]));
      }
    }
  }
  enforce_invariants(s);
  const double un = velocity_norm(s);
  if (un > 0.0) {
    s.u1 *= amplitude / un;
    s.u2 *= amplitude / un;
  }
  const double tmax = norm_lp(to_physical(s.theta), kInfinity);
  if (tmax > 0.0) s.theta *= theta_amplitude / tmax;
  return s;
}

State overshoot_state(const Grid& grid, double b, double amplitude, std::uint64_t seed) {
  State s = random_smooth_state(grid, seed, amplitude, 0.0);
  s.theta = SpectralField(grid, Parity::Sine);
  // sin(pi y) (1 + cos(2 pi x)/4)
  s.theta.at(0, 1) = b;
  s.theta.at(1, 1) = 0.125 * b;
  s.theta.at(-1, 1) = 0.125 * b;
  return s;
}

State perturbed_state(const State& base, double delta, std::uint64_t seed) {
  const Grid& g = base.grid();
  State dir = random_smooth_state(g, seed, 1.0, 1.0);
  const double y1 = std::pow(sobolev_norm(dir.u1, 1), 2) + std::pow(sobolev_norm(dir.u2, 1), 2) +
                    std::pow(sobolev_norm(dir.theta, 1), 2);
  const double scale = delta / std::sqrt(y1);
  State out = base;
  out.u1.axpy(scale, dir.u1);
  out.u2.axpy(scale, dir.u2);
  out.theta.axpy(scale, dir.theta);
  return out;
}

}  // namespace bq
