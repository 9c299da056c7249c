#include "bq/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace bq {

namespace {

// Plans are built once per grid shape on throwaway buffers and executed
// with the new-array interface, so concurrent transforms only share
// read-only plan objects.
struct PlanSet {
  fftw_plan cos_y = nullptr;   // REDFT00 over ny+1 points, nx rows
  fftw_plan sin_y = nullptr;   // RODFT00 over ny-1 interior points, nx rows
  fftw_plan x_fwd = nullptr;   // r2c along x, ny+1 columns
  fftw_plan x_inv = nullptr;   // c2r along x, ny+1 columns

  PlanSet(const PlanSet&) = delete;
  PlanSet& operator=(const PlanSet&) = delete;

  explicit PlanSet(const Grid& g) {
    const int nx = g.nx();
    const int np = g.ny_points();
    const int nin = g.ny() - 1;
    const int nxc = nx / 2 + 1;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    std::vector<double> a(g.size());
    std::vector<double> b(g.size());
    std::vector<fftw_complex> c(static_cast<std::size_t>(nxc) * np);

    const fftw_r2r_kind redft = FFTW_REDFT00;
    const fftw_r2r_kind rodft = FFTW_RODFT00;
    cos_y = fftw_plan_many_r2r(1, &np, nx, a.data(), nullptr, 1, np, b.data(), nullptr, 1, np,
                               &redft, flags);
    sin_y = fftw_plan_many_r2r(1, &nin, nx, a.data() + 1, nullptr, 1, np, b.data() + 1, nullptr,
                               1, np, &rodft, flags);
    x_fwd = fftw_plan_many_dft_r2c(1, &nx, np, a.data(), nullptr, np, 1, c.data(), nullptr, np, 1,
                                   flags);
    x_inv = fftw_plan_many_dft_c2r(1, &nx, np, c.data(), nullptr, np, 1, a.data(), nullptr, np, 1,
                                   flags);
    if (!cos_y || !sin_y || !x_fwd || !x_inv) {
      release();
      throw std::runtime_error("transforms: FFTW plan creation failed");
    }
  }

  ~PlanSet() { release(); }

  void release() noexcept {
    for (fftw_plan* p : {&cos_y, &sin_y, &x_fwd, &x_inv}) {
      if (*p) fftw_destroy_plan(*p);
      *p = nullptr;
    }
  }
};

const PlanSet& plans_for(const Grid& g) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<PlanSet>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{g.nx(), g.ny()}];
  if (!slot) slot = std::make_unique<PlanSet>(g);
  return *slot;
}

}  // namespace

SpectralField to_spectral(const RealField& f, Parity parity) {
  f.require_finite("to_spectral");
  const Grid& g = f.grid();
  const PlanSet& plans = plans_for(g);
  const int nx = g.nx();
  const int ny = g.ny();
  const int np = g.ny_points();

  std::vector<double> src(f.values().begin(), f.values().end());
  std::vector<double> ycoef(g.size(), 0.0);

  if (parity == Parity::Cosine) {
    fftw_execute_r2r(plans.cos_y, src.data(), ycoef.data());
    for (int i = 0; i < nx; ++i) {
      double* row = ycoef.data() + static_cast<std::size_t>(i) * np;
      for (int n = 0; n <= ny; ++n) row[n] /= (n == 0 || n == ny) ? 2.0 * ny : ny;
    }
  } else {
    fftw_execute_r2r(plans.sin_y, src.data() + 1, ycoef.data() + 1);
    for (int i = 0; i < nx; ++i) {
      double* row = ycoef.data() + static_cast<std::size_t>(i) * np;
      row[0] = 0.0;
      row[ny] = 0.0;
      for (int n = 1; n < ny; ++n) row[n] /= ny;
    }
  }

  const int nxc = nx / 2 + 1;
  std::vector<fftw_complex> spec(static_cast<std::size_t>(nxc) * np);
  fftw_execute_dft_r2c(plans.x_fwd, ycoef.data(), spec.data());

  SpectralField out(g, parity);
  const double scale = 1.0 / nx;
  for (int k = 0; k < nxc; ++k) {
    for (int n = 0; n <= ny; ++n) {
      const auto& z = spec[static_cast<std::size_t>(k) * np + n];
      const Complex c(z[0] * scale, z[1] * scale);
      if (k == nx / 2) {
        out.at(-k, n) = Complex(c.real(), 0.0);
      } else {
        out.at(k, n) = c;
        if (k != 0) out.at(-k, n) = std::conj(c);
      }
    }
  }
  if (parity == Parity::Sine) {
    for (int k = g.kmin(); k <= g.kmax(); ++k) {
      out.at(k, 0) = 0.0;
      out.at(k, ny) = 0.0;
    }
  }
  return out;
}

RealField to_physical(const SpectralField& field) {
  field.require_finite("to_physical");
  const Grid& g = field.grid();
  const PlanSet& plans = plans_for(g);
  const int nx = g.nx();
  const int ny = g.ny();
  const int np = g.ny_points();
  const int nxc = nx / 2 + 1;

  // c2r reads only k = 0..nx/2 and assumes Hermitian symmetry.
  std::vector<fftw_complex> spec(static_cast<std::size_t>(nxc) * np);
  for (int k = 0; k < nxc; ++k) {
    const int kk = (k == nx / 2) ? g.kmin() : k;
    for (int n = 0; n <= ny; ++n) {
      const Complex c = field.at(kk, n);
      auto& z = spec[static_cast<std::size_t>(k) * np + n];
      z[0] = c.real();
      z[1] = (k == 0 || k == nx / 2) ? 0.0 : c.imag();
    }
  }
  std::vector<double> ycoef(g.size(), 0.0);
  fftw_execute_dft_c2r(plans.x_inv, spec.data(), ycoef.data());

  std::vector<double> values(g.size(), 0.0);
  if (field.parity() == Parity::Cosine) {
    for (int i = 0; i < nx; ++i) {
      double* row = ycoef.data() + static_cast<std::size_t>(i) * np;
      for (int n = 1; n < ny; ++n) row[n] *= 0.5;
    }
    fftw_execute_r2r(plans.cos_y, ycoef.data(), values.data());
  } else {
    for (int i = 0; i < nx; ++i) {
      double* row = ycoef.data() + static_cast<std::size_t>(i) * np;
      for (int n = 1; n < ny; ++n) row[n] *= 0.5;
    }
    fftw_execute_r2r(plans.sin_y, ycoef.data() + 1, values.data() + 1);
    for (int i = 0; i < nx; ++i) {
      double* row = values.data() + static_cast<std::size_t>(i) * np;
      row[0] = 0.0;
      row[ny] = 0.0;
    }
  }
  return RealField(g, std::move(values));
}

void dealias(SpectralField& field) {
  const Grid& g = field.grid();
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 0; n <= g.ny(); ++n) {
      if (!g.in_dealiased_band(k, n)) field.at(k, n) = 0.0;
    }
  }
}

SpectralField dealiased(SpectralField field) {
  dealias(field);
  return field;
}

bool is_dealiased(const SpectralField& field) {
  const Grid& g = field.grid();
  for (int k = g.kmin(); k <= g.kmax(); ++k) {
    for (int n = 0; n <= g.ny(); ++n) {
      if (!g.in_dealiased_band(k, n) && field.at(k, n) != Complex{}) return false;
    }
  }
  return true;
}

}  // namespace bq
