#include "bq/spectral_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bq {

namespace {

// Continuous-norm weight of a coefficient: |cos(0)|^2 integrates to 1,
// every other basis function to 1/2.
double mode_weight(Parity parity, int n) noexcept {
  return (parity == Parity::Cosine && n == 0) ? 1.0 : 0.5;
}

}  // namespace

SpectralField ddx(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g, f.parity());
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    const Complex factor(0.0, g.wave_x(k));
    for (int n = 0; n <= g.ny(); ++n) out.at(k, n) = factor * f.at(k, n);
  }
  return out;
}

SpectralField ddy(const SpectralField& f) {
  const Grid& g = f.grid();
  const Parity target = flip(f.parity());
  const double sign = f.parity() == Parity::Sine ? 1.0 : -1.0;
  SpectralField out(g, target);
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 1; n < g.ny(); ++n) out.at(k, n) = (sign * g.wave_y(n)) * f.at(k, n);
  }
  return out;
}

double laplacian_symbol(const Grid& grid, int k, int n) noexcept {
  const double a = grid.wave_x(k);
  const double b = grid.wave_y(n);
  return a * a + b * b;
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralField out(g, f.parity());
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 0; n <= g.ny(); ++n) out.at(k, n) = -laplacian_symbol(g, k, n) * f.at(k, n);
  }
  return out;
}

double quadrature_weight_y(const Grid& grid, int j) noexcept {
  const double h = 1.0 / grid.ny();
  return (j == 0 || j == grid.ny()) ? 0.5 * h : h;
}

double norm_lp(const RealField& f, double p) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("norm_lp: p must be >= 1, got " + std::to_string(p));
  }
  const Grid& g = f.grid();
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  // Scale by the max so high powers neither overflow nor underflow.
  double scale = 0.0;
  for (double v : f.values()) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j <= g.ny(); ++j) {
      const double a = std::abs(f.at(i, j)) / scale;
      const double ap = p == 2.0 ? a * a : (p == 4.0 ? (a * a) * (a * a) : std::pow(a, p));
      sum += quadrature_weight_y(g, j) * ap;
    }
  }
  return scale * std::pow(sum / g.nx(), 1.0 / p);
}

double integral(const RealField& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j <= g.ny(); ++j) sum += quadrature_weight_y(g, j) * f.at(i, j);
  }
  return sum / g.nx();
}

double inner_product(const RealField& f, const RealField& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("inner_product: grid mismatch");
  const Grid& gr = f.grid();
  double sum = 0.0;
  for (int i = 0; i < gr.nx(); ++i) {
    for (int j = 0; j <= gr.ny(); ++j) sum += quadrature_weight_y(gr, j) * f.at(i, j) * g.at(i, j);
  }
  return sum / gr.nx();
}

double spectral_inner(const SpectralField& f, const SpectralField& g) {
  if (!(f.grid() == g.grid()) || f.parity() != g.parity()) {
    throw std::invalid_argument("spectral_inner: incompatible fields");
  }
  const Grid& gr = f.grid();
  double sum = 0.0;
  for (int k = gr.kmin(); k <= gr.kmax(); ++k) {
    for (int n = 0; n <= gr.ny(); ++n) {
      sum += mode_weight(f.parity(), n) * std::real(f.at(k, n) * std::conj(g.at(k, n)));
    }
  }
  return sum;
}

double sobolev_norm(const SpectralField& f, int s) {
  if (s < 0 || s > 3) {
    throw std::invalid_argument("sobolev_norm: order must be in 0..3, got " + std::to_string(s));
  }
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 0; n <= g.ny(); ++n) {
      const double lam = laplacian_symbol(g, k, n);
      const double mult = s == 0 ? 1.0 : (s == 1 ? lam : (s == 2 ? lam * lam : lam * lam * lam));
      sum += mode_weight(f.parity(), n) * mult * std::norm(f.at(k, n));
    }
  }
  return std::sqrt(sum);
}

double sobolev_full_norm(const SpectralField& f, int s) {
  double sum = 0.0;
  for (int j = 0; j <= s; ++j) {
    const double v = sobolev_norm(f, j);
    sum += v * v;
  }
  return std::sqrt(sum);
}

}  // namespace bq
