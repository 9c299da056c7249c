#include "bq/grid.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace bq {

std::string to_string(Parity p) {
  return p == Parity::Sine ? "SINE" : "COSINE";
}

Grid::Grid(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 4 || nx % 2 != 0) {
    throw std::invalid_argument("grid: nx must be even and >= 4, got " + std::to_string(nx));
  }
  if (ny < 4) {
    throw std::invalid_argument("grid: ny must be >= 4, got " + std::to_string(ny));
  }
}

double Grid::min_spacing() const noexcept {
  return std::min(lx / nx_, ly / ny_);
}

double Grid::max_dealiased_eigenvalue() const noexcept {
  int kcut = 0;
  while (3 * (kcut + 1) < nx_) ++kcut;
  int ncut = 0;
  while (3 * (ncut + 1) < 2 * ny_) ++ncut;
  return mode_eigenvalue(kcut, ncut);
}

double Grid::wave_x(int k) const noexcept {
  return k == kmin() ? 0.0 : 2.0 * std::numbers::pi * k;
}

double Grid::wave_y(int n) const noexcept {
  return n == ny_ ? 0.0 : std::numbers::pi * n;
}

double mode_eigenvalue(int k, int n) noexcept {
  const double a = 2.0 * std::numbers::pi * k;
  const double b = std::numbers::pi * n;
  return a * a + b * b;
}

}  // namespace bq
