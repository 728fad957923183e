#include "dpf/linsys.hpp"

#include <algorithm>

#include "dpf/error.hpp"

namespace dpf {

namespace {

// Exponent vectors (x, y, z, w) of fiber weight n.
std::vector<Monomial> fiber_monomials(const WeightSystem& ws, int n) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  const int wz = ws.weight(Var::z);
  const int ww = ws.weight(Var::w);
  for (int x = 0; x <= n; ++x)
    for (int y = 0; x + y <= n; ++y)
      for (int z = 0; x + y + wz * z <= n; ++z) {
        const int rest = n - x - y - wz * z;
        if (rest % ww == 0) out.push_back(make_monomial(0, x, y, z, rest / ww));
      }
  return out;
}

int coefficient_degree(const Monomial& m, const Twists& e, int k) {
  int d = k;
  for (int i = 0; i < 4; ++i) d -= m[kFiberVars[i]] * e[i];
  return d;
}

long count_sections(const WeightSystem& ws, const Twists& e, int n, int k) {
  long s = 0;
  for (const auto& m : fiber_monomials(ws, n)) s += std::max(0, coefficient_degree(m, e, k) + 1);
  return s;
}

void require_countable(const FibrationModel& model) {
  const auto r = validate(model);
  if (r.valid()) return;
  if (r.violations.size() == 1 && r.violations.front() == "irreducible equation") {
    throw Error(ErrorCode::kReducibleEquation,
                "equation looks reducible; multiplication by it is not injective");
  }
  std::string msg = "invalid model:";
  for (const auto& d : r.details) msg += "\n  " + d;
  throw Error(ErrorCode::kInvalidModel, msg);
}

}  // namespace

long h0_bidegree(const FibrationModel& model, int n, int k) {
  require_countable(model);
  if (n < 0) return 0;
  const auto& ws = model.weights;
  const int weq = ws.equation_weight();
  if (model.base == BaseKind::kGerm) {
    return static_cast<long>(fiber_monomials(ws, n).size()) -
           static_cast<long>(fiber_monomials(ws, n - weq).size());
  }
  const Twists& e = *model.twists;
  long h = count_sections(ws, e, n, k);
  if (n >= weq) h -= count_sections(ws, e, n - weq, k - model.delta());
  return h;
}

int anticanonical_base_twist(const FibrationModel& model) {
  if (!model.twists) throw Error(ErrorCode::kInvalidModel, "model has no twists");
  const Twists& e = *model.twists;
  return e[0] + e[1] + e[2] + e[3] + 2 - model.delta();
}

long h0_double_cover_d2(const StructureConstants& sc, int n, int k) {
  if (sc.degree != 2) throw Error(ErrorCode::kInvalidConstants, "degree-2 constants required");
  require_valid(sc);
  // h0(Sym^n E (x) O(k)) with E = O + O(n1) + O(n2)
  auto sym = [&](int nn, int kk) {
    long s = 0;
    if (nn < 0) return s;
    for (int i = 0; i <= nn; ++i)
      for (int j = 0; i + j <= nn; ++j) {
        const int deg = kk + i * sc.n1 + j * sc.n2;
        s += std::max(0, deg + 1);
      }
    return s;
  };
  return sym(n, k) + sym(n - 2, k - sc.a);
}

std::vector<BigradedPoly> section_monomials(const WeightSystem& ws, const Twists& twists,
                                            int n, int k) {
  std::vector<BigradedPoly> out;
  for (const auto& m : fiber_monomials(ws, n)) {
    if (m[Var::w] > 1) continue;
    if (coefficient_degree(m, twists, k) >= 0) out.push_back(BigradedPoly::monomial(ws, m));
  }
  return out;
}

const char* verdict_name(ConjectureVerdict v) {
  return v == ConjectureVerdict::kSupportsNonRigidity ? "supports-non-rigidity"
                                                      : "supports-rigidity";
}

namespace {

template <typename Count>
ConjectureStatus run_status(const WeightSystem& ws, const Twists& twists, int beta,
                            int n_max, Count&& count) {
  if (n_max < 1) throw Error(ErrorCode::kInvalidArgument, "n_max must be positive");
  ConjectureStatus st;
  for (int n = 1; n <= n_max; ++n) {
    const int k = n * beta - 1;
    LinearSystemStatus row;
    row.n = n;
    row.dim_h0 = count(n, k);
    if (row.dim_h0 > 0) {
      const auto secs = section_monomials(ws, twists, n, k);
      const auto g = content_gcd(secs);
      if (!(g == BigradedPoly::constant(ws, 1))) row.base_component = g;
      else st.verdict = ConjectureVerdict::kSupportsNonRigidity;
    }
    st.rows.push_back(std::move(row));
  }
  return st;
}

}  // namespace

ConjectureStatus conjecture_status(const FibrationModel& model, int n_max) {
  if (model.base != BaseKind::kProjectiveLine || !model.twists) {
    throw Error(ErrorCode::kInvalidArgument, "linear systems need a P1 model with twists");
  }
  require_countable(model);
  const int beta = anticanonical_base_twist(model);
  return run_status(model.weights, *model.twists, beta, n_max,
                    [&](int n, int k) { return h0_bidegree(model, n, k); });
}

ConjectureStatus conjecture_status(const StructureConstants& sc, int n_max) {
  require_valid(sc);
  if (sc.degree == 1) return conjecture_status(generic_model(sc), n_max);
  const TwistData td = normalized_twists(sc);
  const auto ws = WeightSystem::for_degree(2);
  // -K = H - (a+b-2)F
  const int beta = 2 - sc.a - sc.b();
  return run_status(ws, td.twists, beta, n_max,
                    [&](int n, int k) { return h0_double_cover_d2(sc, n, k); });
}

}  // namespace dpf
