#include "bq/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bq {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* op) {
  if (!(a == b)) {
    throw std::invalid_argument(std::string(op) + ": grid mismatch (" + std::to_string(a.nx()) +
                                "x" + std::to_string(a.ny()) + " vs " + std::to_string(b.nx()) +
                                "x" + std::to_string(b.ny()) + ")");
  }
}

}  // namespace

RealField::RealField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

RealField::RealField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw std::invalid_argument("RealField: expected " + std::to_string(grid_.size()) +
                                " values, got " + std::to_string(values_.size()));
  }
}

void RealField::require_finite(std::string_view what) const {
  for (std::size_t q = 0; q < values_.size(); ++q) {
    if (!std::isfinite(values_[q])) {
      const auto stride = static_cast<std::size_t>(grid_.ny_points());
      throw std::domain_error(std::string(what) + ": non-finite value at point (i=" +
                              std::to_string(q / stride) + ", j=" + std::to_string(q % stride) +
                              ")");
    }
  }
}

RealField& RealField::operator+=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField +=");
  for (std::size_t q = 0; q < values_.size(); ++q) values_[q] += o.values_[q];
  return *this;
}

RealField& RealField::operator-=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField -=");
  for (std::size_t q = 0; q < values_.size(); ++q) values_[q] -= o.values_[q];
  return *this;
}

RealField& RealField::operator*=(const RealField& o) {
  require_same_grid(grid_, o.grid_, "RealField *=");
  for (std::size_t q = 0; q < values_.size(); ++q) values_[q] *= o.values_[q];
  return *this;
}

RealField& RealField::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

SpectralField::SpectralField(const Grid& grid, Parity parity)
    : grid_(grid), parity_(parity), coeffs_(grid.size(), Complex{}) {}

void SpectralField::set_real_mode(int k, int n, Complex value) {
  at(k, n) = value;
  if (k != 0 && k != grid_.kmin()) at(-k, n) = std::conj(value);
  if (k == 0 || k == grid_.kmin()) at(k, n) = Complex(value.real(), 0.0);
}

void SpectralField::require_finite(std::string_view what) const {
  for (int k = grid_.kmin(); k <= grid_.kmax(); ++k) {
    for (int n = 0; n <= grid_.ny(); ++n) {
      const Complex c = at(k, n);
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw std::domain_error(std::string(what) + ": non-finite coefficient at mode (k=" +
                                std::to_string(k) + ", n=" + std::to_string(n) + ")");
      }
    }
  }
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (int k = grid_.kmin() + 1; k <= grid_.kmax(); ++k) {
    for (int n = 0; n <= grid_.ny(); ++n) {
      worst = std::max(worst, std::abs(at(k, n) - std::conj(at(-k, n))));
    }
  }
  return worst;
}

double SpectralField::max_abs() const {
  double worst = 0.0;
  for (const auto& c : coeffs_) worst = std::max(worst, std::abs(c));
  return worst;
}

void SpectralField::require_compatible(const SpectralField& o) const {
  require_same_grid(grid_, o.grid_, "SpectralField");
  if (parity_ != o.parity_) {
    throw std::invalid_argument("SpectralField: parity mismatch (" + to_string(parity_) + " vs " +
                                to_string(o.parity_) + ")");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
  require_compatible(o);
  for (std::size_t q = 0; q < coeffs_.size(); ++q) coeffs_[q] += o.coeffs_[q];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
  require_compatible(o);
  for (std::size_t q = 0; q < coeffs_.size(); ++q) coeffs_[q] -= o.coeffs_[q];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& x) {
  require_compatible(x);
  for (std::size_t q = 0; q < coeffs_.size(); ++q) coeffs_[q] += a * x.coeffs_[q];
  return *this;
}

double max_abs_diff(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()) || a.parity() != b.parity()) {
    throw std::invalid_argument("max_abs_diff: incompatible fields");
  }
  double worst = 0.0;
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  for (std::size_t q = 0; q < ca.size(); ++q) worst = std::max(worst, std::abs(ca[q] - cb[q]));
  return worst;
}

}  // namespace bq
