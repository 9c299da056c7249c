#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bq/fields.hpp"

namespace bq {

enum class Inequality {
  Poincare,            // ||f|| <= ||grad f||, f in H^1_0
  SobolevL4,           // ||f||_4 <= c1(4) ||f||_{H^1}
  LadyzhenskayaH1,     // ||f||_4^2 <= c2 ||f|| ||f||_{H^1}
  LadyzhenskayaH01,    // ||f||_4^2 <= c3 ||f|| ||grad f||, f in H^1_0
  Agmon,               // ||f||_inf <= c4 ||f||_{H^1}^{1/2} ||f||_{H^2}^{1/2}, f in H^2 cap H^1_0
};

std::string_view to_string(Inequality which);
std::optional<Inequality> inequality_from_string(std::string_view name);
const std::vector<Inequality>& all_inequalities();

/// Both sides of one functional inequality evaluated on a discrete field.
///
/// ratio = lhs / rhs where rhs omits the constant, so ratio lower-bounds any
/// admissible constant.  constant_used is set only where a numeric constant
/// is checked: 1 for Poincare and the safe bound 2 for c3.
struct AuditReport {
  Inequality which{};
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> constant_used;
  double ratio = 0.0;

  bool holds(double rel_slack = 1e-10) const {
    return !constant_used || ratio <= *constant_used * (1.0 + rel_slack);
  }
};

/// Throws std::invalid_argument when an H^1_0 inequality is applied to a
/// cosine-parity field.
AuditReport inequality_audit(const RealField& f, Parity parity, Inequality which);

/// Holder bounds used by the product estimates:
///   int |f||g||h| <= ||f||_4 ||g||_4 ||h||  and  ||f g||^2 <= ||f||_4^2 ||g||_4^2.
/// Both hold with constant 1 for the quadrature.
struct ProductAudit {
  double trilinear_ratio = 0.0;
  double product_ratio = 0.0;
};

ProductAudit product_audit(const RealField& f, const RealField& g, const RealField& h);

}  // namespace bq
