#include "bq/inequality_audit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "bq/spectral_ops.hpp"
#include "bq/transforms.hpp"

namespace bq {

namespace {

constexpr double kSafeC3 = 2.0;

double safe_ratio(double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs : 0.0; }

bool needs_dirichlet(Inequality which) {
  return which == Inequality::Poincare || which == Inequality::LadyzhenskayaH01 ||
         which == Inequality::Agmon;
}

}  // namespace

std::string_view to_string(Inequality which) {
  switch (which) {
    case Inequality::Poincare: return "poincare";
    case Inequality::SobolevL4: return "sobolev_l4";
    case Inequality::LadyzhenskayaH1: return "ladyzhenskaya_h1";
    case Inequality::LadyzhenskayaH01: return "ladyzhenskaya_h01";
    case Inequality::Agmon: return "agmon";
  }
  return "unknown";
}

const std::vector<Inequality>& all_inequalities() {
  static const std::vector<Inequality> all = {Inequality::Poincare, Inequality::SobolevL4,
                                              Inequality::LadyzhenskayaH1,
                                              Inequality::LadyzhenskayaH01, Inequality::Agmon};
  return all;
}

std::optional<Inequality> inequality_from_string(std::string_view name) {
  for (Inequality w : all_inequalities()) {
    if (to_string(w) == name) return w;
  }
  return std::nullopt;
}

AuditReport inequality_audit(const RealField& f, Parity parity, Inequality which) {
  if (needs_dirichlet(which) && parity != Parity::Sine) {
    throw std::invalid_argument(std::string("inequality_audit: ") + std::string(to_string(which)) +
                                " requires SINE parity (homogeneous Dirichlet)");
  }
  const SpectralField spec = to_spectral(f, parity);
  const double l2 = norm_lp(f, 2.0);
  const double l4 = norm_lp(f, 4.0);
  const double grad = sobolev_norm(spec, 1);
  const double h1 = sobolev_full_norm(spec, 1);

  AuditReport r;
  r.which = which;
  switch (which) {
    case Inequality::Poincare:
      r.lhs = l2;
      r.rhs = grad;
      r.constant_used = 1.0;
      break;
    case Inequality::SobolevL4:
      r.lhs = l4;
      r.rhs = h1;
      break;
    case Inequality::LadyzhenskayaH1:
      r.lhs = l4 * l4;
      r.rhs = l2 * h1;
      break;
    case Inequality::LadyzhenskayaH01:
      r.lhs = l4 * l4;
      r.rhs = l2 * grad;
      r.constant_used = kSafeC3;
      break;
    case Inequality::Agmon:
      r.lhs = norm_lp(f, kInfinity);
      r.rhs = std::sqrt(h1 * sobolev_full_norm(spec, 2));
      break;
  }
  r.ratio = safe_ratio(r.lhs, r.rhs);
  return r;
}

ProductAudit product_audit(const RealField& f, const RealField& g, const RealField& h) {
  const RealField abs_f = f.map([](double v) { return std::abs(v); });
  const RealField abs_g = g.map([](double v) { return std::abs(v); });
  const RealField abs_h = h.map([](double v) { return std::abs(v); });
  const double tri = integral(abs_f * abs_g * abs_h);
  const double f4 = norm_lp(f, 4.0);
  const double g4 = norm_lp(g, 4.0);
  const double prod = norm_lp(f * g, 2.0);
  ProductAudit out;
  out.trilinear_ratio = safe_ratio(tri, f4 * g4 * norm_lp(h, 2.0));
  out.product_ratio = safe_ratio(prod * prod, f4 * f4 * g4 * g4);
  return out;
}

}  // namespace bq
