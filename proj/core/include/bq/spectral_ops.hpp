#pragma once

#include <limits>

#include "bq/fields.hpp"

namespace bq {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// d/dx: multiplies mode (k, n) by i*2*pi*k; parity preserved.
SpectralField ddx(const SpectralField& f);

/// d/dy: sine n -> cosine n times n*pi, cosine n -> sine n times -n*pi.
SpectralField ddy(const SpectralField& f);

/// Multiplies mode (k, n) by -(wave_x(k)^2 + wave_y(n)^2).
SpectralField laplacian(const SpectralField& f);

/// Trapezoid-in-y weight of mesh row j (endpoint rows carry half weight).
double quadrature_weight_y(const Grid& grid, int j) noexcept;

/// Quadrature L^p norm; p = kInfinity gives the mesh maximum of |f|.
/// Throws std::invalid_argument for p < 1.
double norm_lp(const RealField& f, double p);

/// Quadrature of f over the domain.
double integral(const RealField& f);

/// Quadrature of f*g; throws on grid mismatch.
double inner_product(const RealField& f, const RealField& g);

/// L^2 pairing of two same-parity expansions computed from coefficients.
double spectral_inner(const SpectralField& f, const SpectralField& g);

/// s = 0: L^2 norm.  s >= 1: sqrt(sum w |c|^2 lambda^s), the seminorm
/// convention ||grad f||, ||Lap f||, ||grad Lap f||.  s outside 0..3 throws.
double sobolev_norm(const SpectralField& f, int s);

/// sqrt(sum_{j<=s} sobolev_norm(f, j)^2).
double sobolev_full_norm(const SpectralField& f, int s);

/// Eigenvalue of -Laplacian on mode (k, n) with the derivative symbols of ddx/ddy.
double laplacian_symbol(const Grid& grid, int k, int n) noexcept;

}  // namespace bq
