#pragma once

#include <cstdint>
#include <random>

#include "bq/fields.hpp"

namespace bq::testing {

/// Hermitian coefficients with every mode strictly inside the Nyquist limits.
inline SpectralField random_band_limited(const Grid& g, Parity parity, std::uint64_t seed,
                                         int kmax = -1, int nmax = -1) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  if (kmax < 0) kmax = g.nx() / 2 - 1;
  if (nmax < 0) nmax = g.ny() - 1;
  SpectralField f(g, parity);
  const int nlo = parity == Parity::Sine ? 1 : 0;
  for (int k = 0; k <= kmax; ++k) {
    for (int n = nlo; n <= nmax; ++n) {
      const Complex c(normal(rng), k == 0 ? 0.0 : normal(rng));
      f.set_real_mode(k, n, c);
    }
  }
  return f;
}

}  // namespace bq::testing
