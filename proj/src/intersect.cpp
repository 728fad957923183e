#include "dpf/intersect.hpp"

#include "dpf/error.hpp"

namespace dpf {

bool is_effective(const CurveClass& c) { return sgn(c.sigma) >= 0 && sgn(c.phi) >= 0; }

std::string linear_form(const std::vector<std::pair<Rational, std::string>>& terms) {
  std::string out;
  for (const auto& [c, sym] : terms) {
    if (sgn(c) == 0) continue;
    const bool neg = sgn(c) < 0;
    if (out.empty()) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = abs(c);
    if (sym.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += sym;
    } else {
      out += mag.get_str() + "*" + sym;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

std::string O(int d) { return "O(" + std::to_string(d) + ")"; }

}  // namespace

IntersectionTable intersection_table(const StructureConstants& sc) {
  require_valid(sc);
  IntersectionTable t;
  t.constants = sc;
  if (sc.degree == 2) {
    const int b = sc.b();
    t.k_basis = "H";
    t.k_f = sc.a + b - 2;
    t.k_squared = {2, 8 - 4 * sc.a - 2 * b};
    t.minus_k_cubed = 12 - 6 * sc.a - 4 * b;
    t.gv_f = sc.a + sc.n1 - 2;
    t.s0_dot_gv = -sc.n2;
    return t;
  }
  t.k_basis = "G_V";
  t.section_normal_bundle = normal_bundle_of_section(sc);
  t.s0_dot_gv = Rational(-sc.n3, 2);
  if (sc.epsilon == 0) {
    t.k_f = sc.n1 / 2 - 2;
    t.k_squared = {1, 4 - sc.n2};
    t.minus_k_cubed = 6 - 2 * sc.n2;
    t.section_class = CurveClass{1, 0};
  } else {
    t.k_f = -(sc.n1 / 2 + 2);
    t.k_squared = {1, 4 + 3 * sc.n1 / 2 - sc.n2};
    t.minus_k_cubed = 6 + 2 * sc.n1 - 2 * sc.n2;
    t.section_class = CurveClass{1, Rational(1, 2)};
  }
  t.s0_dot_gv.canonicalize();
  return t;
}

std::vector<std::string> IntersectionTable::rows() const {
  std::vector<std::string> r;
  const auto k_value = linear_form({{-1, k_basis}, {k_f, "F"}});
  const auto k2_value = linear_form({{k_squared.sigma, "s0"}, {k_squared.phi, "f"}});
  const auto cube = std::to_string(minus_k_cubed);
  if (constants.degree == 2) {
    r.push_back("K = -H + (a + b - 2)*F = " + k_value);
    r.push_back("K^2 = 2*s0 + (8 - 4*a - 2*b)*f = " + k2_value);
    r.push_back("G_V = -K + (a + n1 - 2)*F = " + linear_form({{1, "-K"}, {*gv_f, "F"}}));
    r.push_back("s0.G_V = -n2 = " + s0_dot_gv.get_str());
    r.push_back("(-K)^3 = 12 - 6*a - 4*b = " + cube);
    return r;
  }
  const auto [d1, d2] = *section_normal_bundle;
  const auto sb = linear_form({{section_class->sigma, "s0"}, {section_class->phi, "f"}});
  if (constants.epsilon == 0) {
    r.push_back("N(s_b) = O(-n1/2) + O(-n3/2) = " + O(d1) + " + " + O(d2));
    r.push_back("s_b ~ " + sb);
    r.push_back("K = -G_V + (n1/2 - 2)*F = " + k_value);
    r.push_back("K^2 = s0 + (4 - n2)*f = " + k2_value);
    r.push_back("s0.G_V = -n3/2 = " + s0_dot_gv.get_str());
    r.push_back("(-K)^3 = 6 - 2*n2 = " + cube);
  } else {
    r.push_back("N(s_b) = O(n1 - n3/2) + O(n1) = " + O(d1) + " + " + O(d2));
    r.push_back("s_b ~ " + sb);
    r.push_back("K = -G_V - (n1/2 + 2)*F = " + k_value);
    r.push_back("K^2 = s0 + (4 + 3/2*n1 - n2)*f = " + k2_value);
    r.push_back("s0.G_V = -n3/2 = " + s0_dot_gv.get_str());
    r.push_back("(-K)^3 = 6 + 2*n1 - 2*n2 = " + cube);
  }
  return r;
}

bool k2_condition(const StructureConstants& sc) {
  // N*K^2 - f = N*sigma*s0 + (N*phi - 1)*f with sigma > 0; it stays outside
  // the cone for every N >= 1 exactly when phi <= 0.
  return sgn(intersection_table(sc).k_squared.phi) <= 0;
}

Rational minus_k_dot_s0(const StructureConstants& sc) {
  require_valid(sc);
  // s0 lies over the trivial summand: (-K+mF).s0 = 0 for degree 2 and
  // (-2K+mF).s0 = 0 for degree 1.
  Rational m = sc.m_twist();
  if (sc.degree == 1) return -m / 2;
  return -m;
}

Rational pairing(const StructureConstants& sc, const DivisorClass& d, const CurveClass& c) {
  const Rational ks0 = minus_k_dot_s0(sc);
  Rational v = Rational(d.minus_k) * (c.sigma * ks0 + c.phi) + Rational(d.f) * c.sigma;
  v.canonicalize();
  return v;
}

}  // namespace dpf
