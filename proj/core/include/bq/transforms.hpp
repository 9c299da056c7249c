#pragma once

#include "bq/fields.hpp"

namespace bq {

/// Coefficients of the Fourier(x) x sine/cosine(y) interpolant of f.
///
/// Exact inverse of to_physical on every field whose sine part is supported
/// in n = 1..ny-1.  Throws std::domain_error on non-finite input.
SpectralField to_spectral(const RealField& f, Parity parity);

/// Evaluates the expansion on the collocation mesh.
RealField to_physical(const SpectralField& field);

/// Zeroes every mode outside the 2/3-rule band.
void dealias(SpectralField& field);
SpectralField dealiased(SpectralField field);

/// True when every mode outside the 2/3-rule band is exactly zero.
bool is_dealiased(const SpectralField& field);

}  // namespace bq
