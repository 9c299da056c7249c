#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "bq/grid.hpp"

namespace bq {

using Complex = std::complex<double>;

/// Scalar field sampled on the collocation mesh, stored i-major: (i, j) at i*(ny+1)+j.
class RealField {
 public:
  RealField() = default;
  explicit RealField(const Grid& grid, double fill = 0.0);
  RealField(const Grid& grid, std::vector<double> values);

  template <class F>
  static RealField from_function(const Grid& grid, F&& f) {
    RealField out(grid);
    for (int i = 0; i < grid.nx(); ++i) {
      for (int j = 0; j <= grid.ny(); ++j) out.at(i, j) = f(grid.x(i), grid.y(j));
    }
    return out;
  }

  const Grid& grid() const noexcept { return grid_; }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  double& at(int i, int j) noexcept { return values_[grid_.point_index(i, j)]; }
  double at(int i, int j) const noexcept { return values_[grid_.point_index(i, j)]; }

  /// Throws std::domain_error naming the first non-finite point.
  void require_finite(std::string_view what) const;

  RealField& operator+=(const RealField& o);
  RealField& operator-=(const RealField& o);
  RealField& operator*=(const RealField& o);
  RealField& operator*=(double s);

  friend RealField operator+(RealField a, const RealField& b) { return a += b; }
  friend RealField operator-(RealField a, const RealField& b) { return a -= b; }
  friend RealField operator*(RealField a, const RealField& b) { return a *= b; }
  friend RealField operator*(RealField a, double s) { return a *= s; }
  friend RealField operator*(double s, RealField a) { return a *= s; }

  template <class F>
  RealField map(F&& f) const {
    RealField out(grid_);
    for (std::size_t q = 0; q < values_.size(); ++q) out.values_[q] = f(values_[q]);
    return out;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Fourier(x) x sine/cosine(y) coefficients of a real scalar field.
///
/// Storage is (k, n) row-major with k in [-nx/2, nx/2) and n in [0, ny] for
/// both parities; sine fields keep n = 0 and n = ny identically zero.
class SpectralField {
 public:
  SpectralField() = default;
  SpectralField(const Grid& grid, Parity parity);

  const Grid& grid() const noexcept { return grid_; }
  Parity parity() const noexcept { return parity_; }

  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  Complex& at(int k, int n) noexcept { return coeffs_[grid_.mode_index(k, n)]; }
  const Complex& at(int k, int n) const noexcept { return coeffs_[grid_.mode_index(k, n)]; }

  /// Sets mode (k, n) and its Hermitian partner (-k, n) so the field stays real.
  void set_real_mode(int k, int n, Complex value);

  void require_finite(std::string_view what) const;

  /// Largest |c(k,n) - conj(c(-k,n))| over the non-Nyquist rows.
  double hermitian_defect() const;

  /// Max |coefficient|.
  double max_abs() const;

  SpectralField& operator+=(const SpectralField& o);
  SpectralField& operator-=(const SpectralField& o);
  SpectralField& operator*=(double s);
  SpectralField& axpy(double a, const SpectralField& x);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

  friend bool operator==(const SpectralField& a, const SpectralField& b) {
    return a.grid_ == b.grid_ && a.parity_ == b.parity_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void require_compatible(const SpectralField& o) const;

  Grid grid_;
  Parity parity_ = Parity::Cosine;
  std::vector<Complex> coeffs_;
};

/// Max |a - b| over coefficients; throws on grid or parity mismatch.
double max_abs_diff(const SpectralField& a, const SpectralField& b);

}  // namespace bq
