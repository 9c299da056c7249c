#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace bq {

/// y-expansion family of a scalar field on the channel.
///
/// Sine fields vanish on the walls y = 0, 1 (u2, theta); cosine fields have
/// vanishing wall-normal derivative (u1, pressure).  The numeric values are
/// the checkpoint parity tags.
enum class Parity : std::uint8_t { Cosine = 0, Sine = 1 };

constexpr Parity flip(Parity p) noexcept {
  return p == Parity::Sine ? Parity::Cosine : Parity::Sine;
}

std::string to_string(Parity p);

/// Collocation grid on the periodic channel T_x x (0,1).
///
/// x: nx equispaced points on the unit torus, x_i = i/nx.
/// y: ny+1 wall-inclusive points y_j = j/ny (type-I sine/cosine transforms).
/// Spectral indices are k in [-nx/2, nx/2) and n in [0, ny].
class Grid {
 public:
  static constexpr double lx = 1.0;
  static constexpr double ly = 1.0;

  Grid() : Grid(128, 64) {}
  Grid(int nx, int ny);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  int ny_points() const noexcept { return ny_ + 1; }

  /// Number of collocation points, equal to the number of stored modes.
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_ + 1);
  }

  double x(int i) const noexcept { return static_cast<double>(i) / nx_; }
  double y(int j) const noexcept { return static_cast<double>(j) / ny_; }

  /// |Omega| = lx * ly.
  static constexpr double measure() noexcept { return lx * ly; }

  double min_spacing() const noexcept;

  int kmin() const noexcept { return -nx_ / 2; }
  int kmax() const noexcept { return nx_ / 2 - 1; }

  /// Row-major (k, n) offset with k shifted to start at -nx/2.
  std::size_t mode_index(int k, int n) const noexcept {
    return static_cast<std::size_t>(k + nx_ / 2) * static_cast<std::size_t>(ny_ + 1) +
           static_cast<std::size_t>(n);
  }
  std::size_t point_index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(ny_ + 1) +
           static_cast<std::size_t>(j);
  }

  /// Derivative symbols.  The x-Nyquist row and the y-Nyquist column
  /// carry no derivative (their continuous partners are not resolved).
  double wave_x(int k) const noexcept;
  double wave_y(int n) const noexcept;

  /// 2/3-rule band: 3|k| < nx and 3n < 2ny.
  bool in_dealiased_band(int k, int n) const noexcept {
    return 3 * (k < 0 ? -k : k) < nx_ && 3 * n < 2 * ny_;
  }

  /// Largest (2 pi k)^2 + (n pi)^2 inside the dealiased band.
  double max_dealiased_eigenvalue() const noexcept;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.nx_ == b.nx_ && a.ny_ == b.ny_;
  }

 private:
  int nx_;
  int ny_;
};

/// Eigenvalue of -Delta for mode (k, n): (2 pi k)^2 + (n pi)^2.
double mode_eigenvalue(int k, int n) noexcept;

}  // namespace bq
