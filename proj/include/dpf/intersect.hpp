#pragma once

// Divisor and curve lattices of a fibration, the closed-form intersection
// tables and the cone test behind the K^2-condition.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpf/exactpoly.hpp"
#include "dpf/model.hpp"

namespace dpf {

/// alpha*(-K) + beta*F on the fibration.
struct DivisorClass {
  int minus_k = 0;
  int f = 0;
  bool operator==(const DivisorClass&) const = default;
};

/// sigma*s0 + phi*f; halves occur (s_b ~ s0 + f/2).
struct CurveClass {
  Rational sigma;
  Rational phi;
  bool operator==(const CurveClass&) const = default;
};

/// Membership in the closed cone spanned by s0 and f.
bool is_effective(const CurveClass& c);

/// Renders sum c_i * sym_i with the polynomial sign conventions, e.g.
/// "s0 + 2*f", "-G_V - F", "0".
std::string linear_form(const std::vector<std::pair<Rational, std::string>>& terms);

struct IntersectionTable {
  StructureConstants constants;
  /// K = -G_V + k_f*F (degree 1) or K = -H + k_f*F (degree 2).
  std::string k_basis;
  int k_f = 0;
  CurveClass k_squared;
  int minus_k_cubed = 0;
  Rational s0_dot_gv;
  std::optional<std::pair<int, int>> section_normal_bundle;  // degree 1
  std::optional<CurveClass> section_class;                   // s_b, degree 1
  std::optional<int> gv_f;  // degree 2: G_V = -K + gv_f*F

  /// Rows "<lhs> = <formula> = <value>" in a fixed order.
  std::vector<std::string> rows() const;
};

IntersectionTable intersection_table(const StructureConstants& sc);

/// True iff N*K^2 - f is outside the closed cone for every N >= 1.
bool k2_condition(const StructureConstants& sc);

/// (-K).s0 obtained from the pushed-forward twist m, independent of the
/// table's (-K)^3 entry.
Rational minus_k_dot_s0(const StructureConstants& sc);

/// D.C with F.f = 0, F.s0 = 1, (-K).f = 1 and (-K).s0 as above.
Rational pairing(const StructureConstants& sc, const DivisorClass& d, const CurveClass& c);

}  // namespace dpf
