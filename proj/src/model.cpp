#include "dpf/model.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "dpf/error.hpp"

namespace dpf {

const char* base_kind_name(BaseKind kind) {
  return kind == BaseKind::kProjectiveLine ? "P1" : "germ";
}

StructureConstants StructureConstants::d1(int epsilon, int n1, int n2, int n3) {
  StructureConstants sc;
  sc.degree = 1;
  sc.epsilon = epsilon;
  sc.n1 = n1;
  sc.n2 = n2;
  sc.n3 = n3;
  return sc;
}

StructureConstants StructureConstants::d2(int a, int n1, int n2) {
  StructureConstants sc;
  sc.degree = 2;
  sc.a = a;
  sc.n1 = n1;
  sc.n2 = n2;
  return sc;
}

int StructureConstants::m_twist() const {
  if (degree == 2) return a + b() - 2;
  return epsilon == 0 ? 2 * n2 - 4 : 2 * n2 - n1 - 4;
}

std::vector<int> StructureConstants::values() const {
  if (degree == 1) return {epsilon, n1, n2, n3};
  return {a, n1, n2};
}

std::string StructureConstants::to_string() const {
  std::string out;
  for (int v : values()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::vector<std::string> constant_violations(const StructureConstants& sc) {
  std::vector<std::string> v;
  if (sc.degree != 1 && sc.degree != 2) {
    v.push_back("degree must be 1 or 2");
    return v;
  }
  if (sc.n1 < 0) v.push_back("n1 >= 0");
  if (sc.n1 > sc.n2) v.push_back("n1 <= n2");
  if (sc.degree == 2) {
    if (4 * sc.n2 + 2 * sc.a < 0) v.push_back("R ~ 4M+2aL effective (4*n2 + 2*a >= 0)");
    return v;
  }
  if (sc.n2 > sc.n3) v.push_back("n2 <= n3");
  if (sc.n3 <= 0) v.push_back("n3 > 0 (product case excluded)");
  if (sc.epsilon < 0) v.push_back("epsilon >= 0");
  if (sc.epsilon == 0) {
    if (2 * sc.n2 != sc.n1 + sc.n3) v.push_back("eps=0: 2*n2 = n1 + n3");
    if (sc.n1 % 2 != 0 || sc.n3 % 2 != 0) v.push_back("eps=0: n1, n3 even");
  } else {
    if (sc.epsilon != sc.n1) v.push_back("eps>0: eps = n1");
    if (sc.n3 != 2 * sc.n2) v.push_back("eps>0: n3 = 2*n2");
    if (sc.n1 % 2 != 0) v.push_back("eps>0: n1 even");
    if (sc.n2 < 3 * sc.n1) v.push_back("eps>0: n2 >= 3*n1");
  }
  return v;
}

void require_valid(const StructureConstants& sc) {
  const auto v = constant_violations(sc);
  if (v.empty()) return;
  std::string msg = "constants (" + sc.to_string() + ") violate:";
  for (const auto& s : v) msg += " [" + s + "]";
  throw Error(ErrorCode::kInvalidConstants, msg);
}

std::string to_string(const AmbientClass& c) {
  std::ostringstream os;
  os << c.m << "M";
  if (c.l > 0) os << " + " << c.l << "L";
  if (c.l < 0) os << " - " << -c.l << "L";
  return os.str();
}

AmbientData ambient_data(const StructureConstants& sc) {
  require_valid(sc);
  AmbientData d;
  if (sc.degree == 2) {
    d.splitting = {0, sc.n1, sc.n2};
    d.r_class = {4, 2 * sc.a};
    return d;
  }
  d.splitting = {0, sc.n1, sc.n2, sc.n3};
  d.q_class = AmbientClass{2, -2 * sc.n2};
  d.r_class = sc.epsilon == 0 ? AmbientClass{3, 0} : AmbientClass{3, -3 * sc.n1};
  return d;
}

std::pair<int, int> normal_bundle_of_section(const StructureConstants& sc) {
  if (sc.degree != 1) {
    throw Error(ErrorCode::kInvalidConstants,
                "the base section is defined for degree 1 only");
  }
  require_valid(sc);
  if (sc.epsilon == 0) return {-sc.n1 / 2, -sc.n3 / 2};
  return {sc.n1 - sc.n3 / 2, sc.n1};
}

TwistData normalized_twists(const StructureConstants& sc) {
  require_valid(sc);
  if (sc.degree == 2) return {{0, -sc.n1, -sc.n2, sc.a}, 2 * sc.a};
  if (sc.epsilon == 0) return {{-sc.n1 / 2, -sc.n3 / 2, 0, 0}, 0};
  return {{0, -sc.n2, -sc.n1, -3 * sc.n1 / 2}, -3 * sc.n1};
}

TwistData catalog_twists(const StructureConstants& sc) {
  TwistData td = normalized_twists(sc);
  const auto ws = WeightSystem::for_degree(sc.degree);
  int j = 0;
  for (int i = 0; i < 4; ++i) {
    const int w = ws.weight(kFiberVars[i]);
    // least j with e_i + w*j >= 0
    if (td.twists[i] < 0) j = std::max(j, (-td.twists[i] + w - 1) / w);
  }
  for (int i = 0; i < 4; ++i) td.twists[i] += ws.weight(kFiberVars[i]) * j;
  td.delta += ws.equation_weight() * j;
  return td;
}

// ---- FibrationModel -------------------------------------------------------

int FibrationModel::delta() const {
  if (!twists) throw Error(ErrorCode::kInvalidModel, "model has no twists");
  return 2 * (*twists)[3];
}

BigradedPoly FibrationModel::f4() const {
  BigradedPoly::TermMap t;
  for (const auto& [m, c] : equation.terms()) {
    if (m[Var::w] != 0) continue;
    if (degree() == 2) {
      t.emplace(m, c);
    } else if (m[Var::z] == 1) {
      Monomial r = m;
      r[Var::z] = 0;
      t.emplace(r, c);
    }
  }
  return BigradedPoly(weights, std::move(t));
}

BigradedPoly FibrationModel::f6() const {
  BigradedPoly::TermMap t;
  if (degree() == 1) {
    for (const auto& [m, c] : equation.terms()) {
      if (m[Var::w] == 0 && m[Var::z] == 0) t.emplace(m, c);
    }
  }
  return BigradedPoly(weights, std::move(t));
}

bool FibrationModel::operator==(const FibrationModel& o) const {
  return weights == o.weights && base == o.base && twists == o.twists &&
         equation == o.equation && constants == o.constants;
}

namespace {

class Checker {
 public:
  explicit Checker(ValidationReport& r) : r_(r) {}
  void fail(const std::string& check, const std::string& detail) {
    if (std::find(r_.violations.begin(), r_.violations.end(), check) ==
        r_.violations.end()) {
      r_.violations.push_back(check);
    }
    r_.details.push_back(check + ": " + detail);
  }

 private:
  ValidationReport& r_;
};

// Coefficient of a pure fiber monomial viewed as a polynomial in t; a unit
// means a non-zero constant.
bool has_unit_coefficient(const BigradedPoly& eq, const Monomial& fiber) {
  bool constant_seen = false;
  for (const auto& [m, c] : eq.terms()) {
    Monomial r = m;
    r[Var::t] = 0;
    if (!(r == fiber)) continue;
    if (m[Var::t] != 0) return false;
    constant_seen = true;
  }
  return constant_seen;
}

// w^2 + f4 factors over C exactly when f4 = c*g^2. Probes for two points
// whose f4-values have a non-residue ratio mod a fixed prime.
bool certainly_irreducible_d2(const BigradedPoly& f4) {
  const PrimeField field(10007);
  std::mt19937_64 rng(0x5eedULL);
  std::uniform_int_distribution<std::uint64_t> coord(1, field.modulus() - 1);
  std::uint64_t base = 0;
  for (int i = 0; i < 256; ++i) {
    FpPoint pt = {coord(rng), coord(rng), coord(rng), coord(rng), 0};
    std::uint64_t v;
    try {
      v = evaluate_mod(f4, pt, field);
    } catch (const Error&) {
      continue;
    }
    if (v == 0) continue;
    if (base == 0) {
      base = v;
      continue;
    }
    if (field.pow(field.mul(base, v), (field.modulus() - 1) / 2) != 1) return true;
  }
  return false;
}

}  // namespace

ValidationReport validate(const FibrationModel& model) {
  ValidationReport report;
  Checker check(report);
  const int deg = model.degree();
  const auto& eq = model.equation;
  const int weq = model.weights.equation_weight();

  if (eq.is_zero()) check.fail("non-zero equation", "equation is 0");
  for (const auto& [m, c] : eq.terms()) {
    const int fw = m.fiber_weight(model.weights);
    if (fw != weq) {
      check.fail("fiber-weight homogeneity",
                 "term " + to_text(BigradedPoly::monomial(model.weights, m, c)) +
                     " has fiber weight " + std::to_string(fw) + ", expected " +
                     std::to_string(weq));
    }
    if (m[Var::w] != 0 && m[Var::w] != 2) {
      check.fail("w appears only in w^2",
                 "term " + to_text(BigradedPoly::monomial(model.weights, m, c)));
    }
    if (deg == 1 && m[Var::z] == 2) {
      check.fail("no z^2 terms",
                 "term " + to_text(BigradedPoly::monomial(model.weights, m, c)));
    }
  }
  if (!has_unit_coefficient(eq, make_monomial(0, 0, 0, 0, 2))) {
    check.fail("coefficient of w^2 must be a unit",
               "w^2 must appear with a non-zero constant coefficient");
  }
  if (deg == 1 && !has_unit_coefficient(eq, make_monomial(0, 0, 0, 3, 0))) {
    check.fail("coefficient of z^3 must be a unit",
               "z^3 must appear with a non-zero constant coefficient");
  }

  if (model.base == BaseKind::kGerm) {
    if (!is_integral(eq)) {
      check.fail("integral t-exponents", "germ equations must lie in O[x,y,z,w]");
    }
  } else if (!model.twists) {
    check.fail("twists present", "P1 models need a twist vector");
  } else {
    const Twists& e = *model.twists;
    const int delta = 2 * e[3];
    if (deg == 1 && 2 * e[3] != 3 * e[2]) {
      check.fail("twist relation 2*e_w = 3*e_z",
                 "twists give 2*e_w = " + std::to_string(2 * e[3]) +
                     ", 3*e_z = " + std::to_string(3 * e[2]));
    }
    for (const auto& [m, c] : eq.terms()) {
      int coeff_degree = delta;
      for (int i = 0; i < 4; ++i) coeff_degree -= m[kFiberVars[i]] * e[i];
      if (m[Var::t] < 0 || m[Var::t] > coeff_degree) {
        check.fail("base bihomogeneity",
                   "term " + to_text(BigradedPoly::monomial(model.weights, m, c)) +
                       " needs t-degree in [0, " + std::to_string(coeff_degree) + "]");
      }
    }
  }

  if (deg == 2 && report.valid() && !certainly_irreducible_d2(model.f4())) {
    check.fail("irreducible equation", "-f4 looks like a square");
  }
  report.notes.push_back("unchecked: fiber reducedness");
  return report;
}

void require_valid(const FibrationModel& model) {
  const auto r = validate(model);
  if (r.valid()) return;
  std::string msg = "invalid model:";
  for (const auto& d : r.details) msg += "\n  " + d;
  throw Error(ErrorCode::kInvalidModel, msg);
}

namespace {

[[noreturn]] void inconsistent(const Twists& e, int delta, const std::string& why) {
  throw Error(ErrorCode::kInconsistentTwists,
              "twists (" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
                  std::to_string(e[2]) + "," + std::to_string(e[3]) +
                  "), delta " + std::to_string(delta) + ": " + why);
}

// True when `model` differs from `ref` by a weighted shift, up to x <-> y.
bool shift_equivalent(const Twists& model, int model_delta, const TwistData& ref,
                      const WeightSystem& ws) {
  for (bool swap : {false, true}) {
    Twists r = ref.twists;
    if (swap) std::swap(r[0], r[1]);
    const int j = model[0] - r[0];
    bool ok = model_delta - ref.delta == ws.equation_weight() * j;
    for (int i = 0; i < 4; ++i) ok &= model[i] - r[i] == ws.weight(kFiberVars[i]) * j;
    if (ok) return true;
  }
  return false;
}

}  // namespace

StructureConstants infer_constants(const FibrationModel& model) {
  if (model.base != BaseKind::kProjectiveLine || !model.twists) {
    throw Error(ErrorCode::kInvalidArgument, "constants are read off P1 models only");
  }
  const auto report = validate(model);
  for (const auto& d : report.details) {
    if (d.rfind("irreducible equation", 0) != 0) {
      throw Error(ErrorCode::kInvalidModel, "invalid model: " + d);
    }
  }
  const Twists& e = *model.twists;
  const int delta = model.delta();
  StructureConstants sc;

  if (model.degree() == 2) {
    std::array<int, 3> d = {-e[0], -e[1], -e[2]};
    const int lo = *std::min_element(d.begin(), d.end());
    for (int& v : d) v -= lo;
    std::sort(d.begin(), d.end());
    const int j = -lo;
    sc = StructureConstants::d2(e[3] - 2 * j, d[1], d[2]);
    if (d[0] != 0) inconsistent(e, delta, "no trivial splitting summand");
  } else {
    // summand degree of each weight-2 generator: x^2, xy, y^2, z
    const std::array<int, 4> ew = {2 * e[0], e[0] + e[1], 2 * e[1], e[2]};
    const int mu = *std::max_element(ew.begin(), ew.end());
    std::array<int, 4> d;
    for (int i = 0; i < 4; ++i) d[i] = mu - ew[i];
    if (d[3] == 0) {
      sc = StructureConstants::d1(0, std::min(d[0], d[2]), d[1], std::max(d[0], d[2]));
    } else {
      if (d[0] != 0 && d[2] != 0) inconsistent(e, delta, "no trivial splitting summand");
      sc = StructureConstants::d1(d[3], d[3], d[1], d[0] + d[2]);
    }
  }
  if (!constant_violations(sc).empty()) {
    std::string why = "no admissible constants; nearest (" + sc.to_string() + ") violates";
    for (const auto& v : constant_violations(sc)) why += " [" + v + "]";
    inconsistent(e, delta, why);
  }
  if (!shift_equivalent(e, delta, normalized_twists(sc), model.weights)) {
    inconsistent(e, delta, "equation base degree does not match (" + sc.to_string() + ")");
  }
  return sc;
}

FibrationModel generic_model(const StructureConstants& sc) {
  const TwistData td = catalog_twists(sc);
  FibrationModel model;
  model.weights = WeightSystem::for_degree(sc.degree);
  model.base = BaseKind::kProjectiveLine;
  model.twists = td.twists;
  model.constants = sc;
  const int weq = model.weights.equation_weight();
  const bool d1 = sc.degree == 1;
  BigradedPoly::TermMap terms;
  for (int x = 0; x <= weq; ++x) {
    for (int y = 0; x + y <= weq; ++y) {
      for (int z = 0; z <= 3; ++z) {
        for (int w = 0; w <= 2; ++w) {
          const Monomial m = make_monomial(0, x, y, z, w);
          if (m.fiber_weight(model.weights) != weq) continue;
          if (w == 1 || (w == 2 && x + y + z > 0) || (d1 && z == 2)) continue;
          int c = td.delta;
          for (int i = 0; i < 4; ++i) c -= m[kFiberVars[i]] * td.twists[i];
          if (c < 0) continue;
          terms[m] += 1;
          if (c > 0) terms[make_monomial(c, x, y, z, w)] += 1;
        }
      }
    }
  }
  model.equation = BigradedPoly(model.weights, std::move(terms));
  return model;
}

}  // namespace dpf
