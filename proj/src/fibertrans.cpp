#include "dpf/fibertrans.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

#include "dpf/error.hpp"

namespace dpf {

namespace {

std::array<int, 4> fiber_weights(int degree) {
  const auto ws = WeightSystem::for_degree(degree);
  return {ws.weight(Var::x), ws.weight(Var::y), ws.weight(Var::z), ws.weight(Var::w)};
}

bool has_zero(const std::array<int, 4>& v) {
  return std::ranges::find(v, 0) != v.end();
}

bool all_zero(const std::array<int, 4>& v) {
  return std::ranges::all_of(v, [](int e) { return e == 0; });
}

int weight_one_count(int degree) { return degree == 1 ? 2 : 3; }

}  // namespace

bool MonomialMap::trivial() const { return all_zero(forward) || all_zero(backward); }

MonomialMap MonomialMap::inverse() const { return {degree, backward, forward, m}; }

MonomialMap solve_constraints(int degree, const std::array<int, 4>& forward) {
  if (degree != 1 && degree != 2) {
    throw Error(ErrorCode::kInvalidArgument, "degree must be 1 or 2");
  }
  for (int e : forward) {
    if (e < 0) throw Error(ErrorCode::kInvalidArgument, "forward exponents must be >= 0");
  }
  if (all_zero(forward)) return {degree, forward, {}, 0};
  if (degree == 1 && 2 * forward[3] != 3 * forward[2]) {
    throw Error(ErrorCode::kInfeasible, "2d = 3c fails for the forward exponents");
  }
  if (!has_zero(forward)) {
    throw Error(ErrorCode::kInfeasible, "forward exponents contain no zero");
  }
  const auto w = fiber_weights(degree);
  int m = 0;
  for (int i = 0; i < 4; ++i) m = std::max(m, (forward[i] + w[i] - 1) / w[i]);
  MonomialMap map{degree, forward, {}, m};
  for (int i = 0; i < 4; ++i) map.backward[i] = m * w[i] - forward[i];
  if (!has_zero(map.backward)) {
    throw Error(ErrorCode::kInfeasible,
                "no m makes the backward exponents contain a zero (m=" + std::to_string(m) +
                    " leaves an odd w-exponent)");
  }
  return map;
}

bool satisfies_constraints(const MonomialMap& map) {
  if (map.degree != 1 && map.degree != 2) return false;
  if (map.m < 0) return false;
  const auto w = fiber_weights(map.degree);
  for (int i = 0; i < 4; ++i) {
    if (map.forward[i] < 0 || map.backward[i] < 0) return false;
    if (map.forward[i] + map.backward[i] != map.m * w[i]) return false;
  }
  if (map.degree == 1) {
    if (2 * map.forward[3] != 3 * map.forward[2]) return false;
    if (2 * map.backward[3] != 3 * map.backward[2]) return false;
  }
  return has_zero(map.forward) && has_zero(map.backward);
}

const char* side_name(ModelSide s) { return s == ModelSide::kSource ? "source" : "target"; }

std::optional<Point> designated_point(const MonomialMap& map, ModelSide side) {
  if (map.trivial()) return std::nullopt;
  const auto& other = side == ModelSide::kSource ? map.backward : map.forward;
  for (int i = 0; i < weight_one_count(map.degree); ++i) {
    if (other[i] == 0) {
      Point p{0, 0, 0, 0, 0};
      p[static_cast<int>(kFiberVars[i])] = 1;
      return p;
    }
  }
  return std::nullopt;
}

ModelSide forced_side(const MonomialMap& map) {
  return map.forward[3] <= map.backward[3] ? ModelSide::kSource : ModelSide::kTarget;
}

TransportResult transport(const MonomialMap& map, const FibrationModel& target,
                          bool allow_non_integral) {
  if (!satisfies_constraints(map)) {
    throw Error(ErrorCode::kInvalidArgument, "map violates the constraint system");
  }
  if (target.degree() != map.degree) {
    throw Error(ErrorCode::kInvalidArgument, "map and model degrees differ");
  }
  require_valid(target);
  TransportResult r;
  r.source.weights = target.weights;
  r.source.base = BaseKind::kGerm;
  r.source.equation = substitute_monomial(target.equation, map.forward, -2 * map.forward[3]);
  r.integral = is_integral(r.source.equation);
  if (!r.integral) {
    if (allow_non_integral) return r;
    throw Error(ErrorCode::kNonIntegral,
                "transported equation has negative t-powers: " + to_text(r.source.equation));
  }
  if (map.trivial()) return r;
  const ModelSide side = forced_side(map);
  const auto pt = designated_point(map, side);
  const BigradedPoly& eq = side == ModelSide::kSource ? r.source.equation : target.equation;
  if (!pt || !jacobian_vanishes(eq, *pt)) {
    throw Error(ErrorCode::kInternalInconsistency,
                std::string("designated point on the ") + side_name(side) +
                    " is not singular for a non-trivial integral transport");
  }
  r.forced_singularity = ForcedSingularity{side, *pt};
  return r;
}

// ---- substitutions ---------------------------------------------------------

bool FiberSubstitution::is_identity() const { return *this == FiberSubstitution{}; }

std::string FiberSubstitution::to_string() const {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (i) out += ", ";
    out += var_name(kFiberVars[i]);
    out += " -> ";
    if (scalar[i] != 1) out += scalar[i].get_str() + " ";
    if (t_power[i] == 1) out += "t ";
    else if (t_power[i] != 0) out += "t^" + std::to_string(t_power[i]) + " ";
    out += var_name(image[i]);
  }
  return out;
}

BigradedPoly apply_substitution(const FiberSubstitution& sub, const BigradedPoly& p) {
  const auto& ws = p.weights();
  for (int i = 0; i < 4; ++i) {
    if (ws.weight(kFiberVars[i]) != ws.weight(sub.image[i]) || sub.image[i] == Var::t) {
      throw Error(ErrorCode::kInvalidArgument, "substitution does not respect fiber weights");
    }
  }
  BigradedPoly::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r;
    r[Var::t] = m[Var::t];
    Rational coeff = c;
    for (int i = 0; i < 4; ++i) {
      const int e = m[kFiberVars[i]];
      if (e == 0) continue;
      r[sub.image[i]] += e;
      r[Var::t] += sub.t_power[i] * e;
      for (int k = 0; k < e; ++k) coeff *= sub.scalar[i];
    }
    out[r] += coeff;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return BigradedPoly(ws, std::move(out));
}

bool proportional_up_to_t_power(const BigradedPoly& a, const BigradedPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (a.size() != b.size()) return false;
  const int shift = a.min_exponent(Var::t) - b.min_exponent(Var::t);
  const BigradedPoly bs = substitute_monomial(b, {0, 0, 0, 0}, shift);
  const Rational lambda = a.leading_coefficient() / bs.leading_coefficient();
  return a == bs * lambda;
}

bool preserves_equation(const FiberSubstitution& sub, const FibrationModel& model) {
  return proportional_up_to_t_power(apply_substitution(sub, model.equation), model.equation);
}

namespace {

using FiberExp = std::array<int, 4>;
using CoeffSeries = std::map<int, Rational>;  // t-exponent -> coefficient

std::map<FiberExp, CoeffSeries> group_by_fiber(const BigradedPoly& p) {
  std::map<FiberExp, CoeffSeries> out;
  for (const auto& [m, c] : p.terms()) {
    out[{m[Var::x], m[Var::y], m[Var::z], m[Var::w]}][m[Var::t]] = c;
  }
  return out;
}

std::vector<std::array<Var, 4>> weight_permutations(int degree) {
  std::vector<std::array<Var, 4>> out;
  std::array<Var, 3> head{Var::x, Var::y, Var::z};
  const int n = weight_one_count(degree);
  do {
    std::array<Var, 4> img{Var::x, Var::y, Var::z, Var::w};
    for (int i = 0; i < n; ++i) img[i] = head[i];
    if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
  } while (std::next_permutation(head.begin(), head.begin() + n));
  return out;
}

struct LinearSolveOutcome {
  bool consistent = false;
  std::optional<std::array<int, 4>> best;  // e_x..e_w with minimal sum |e|
};

// Rows are (g, e_x, e_y, e_z, e_w | rhs) for <e, mu> - g = rhs.
LinearSolveOutcome solve_shifts(std::vector<std::array<Rational, 6>> rows, int bound) {
  constexpr int kCols = 5;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < kCols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (int k = 0; k < 6; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivot_col.push_back(c);
    ++r;
  }
  LinearSolveOutcome out;
  for (std::size_t i = r; i < rows.size(); ++i) {
    if (rows[i][5] != 0) return out;
  }
  out.consistent = true;
  std::vector<int> free_cols;
  for (int c = 0; c < kCols; ++c) {
    if (std::find(pivot_col.begin(), pivot_col.end(), c) == pivot_col.end()) {
      free_cols.push_back(c);
    }
  }
  const long side = 2L * bound + 1;
  long total = 1;
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    total *= side;
    if (total > 5'000'000) {
      throw Error(ErrorCode::kSearchBoundExceeded, "too many free scaling parameters");
    }
  }
  long best_cost = std::numeric_limits<long>::max();
  for (long idx = 0; idx < total; ++idx) {
    std::array<Rational, kCols> x{};
    long rest = idx;
    for (int c : free_cols) {
      x[c] = static_cast<int>(rest % side) - bound;
      rest /= side;
    }
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
      Rational v = rows[i][5];
      for (int c : free_cols) v -= rows[i][c] * x[c];
      x[pivot_col[i]] = v;
    }
    std::array<int, 4> e{};
    bool ok = true;
    long cost = 0;
    for (int k = 0; k < kCols && ok; ++k) {
      if (x[k].get_den() != 1) ok = false;
      if (k == 0) continue;
      if (!ok || abs(x[k]) > bound) {
        ok = false;
        break;
      }
      e[k - 1] = static_cast<int>(x[k].get_num().get_si());
      cost += std::abs(e[k - 1]);
    }
    if (ok && cost < best_cost) {
      best_cost = cost;
      out.best = e;
    }
  }
  return out;
}

}  // namespace

std::optional<FiberSubstitution> find_isomorphism(const FibrationModel& a, const FibrationModel& b,
                                                  std::optional<int> bound) {
  if (a.degree() != b.degree()) {
    throw Error(ErrorCode::kInvalidArgument, "models have different degrees");
  }
  const int limit = bound.value_or(std::max({a.equation.degree_in(Var::t),
                                             b.equation.degree_in(Var::t)}) + 2);
  const auto ga = group_by_fiber(a.equation);
  const auto gb = group_by_fiber(b.equation);
  if (ga.size() != gb.size() || a.equation.is_zero()) return std::nullopt;

  bool any_consistent = false;
  std::optional<FiberSubstitution> best;
  long best_cost = std::numeric_limits<long>::max();
  for (const auto& perm : weight_permutations(a.degree())) {
    std::vector<std::array<Rational, 6>> rows;
    std::optional<Rational> lambda;
    bool ok = true;
    for (const auto& [mu, series_b] : gb) {
      FiberExp image{};
      for (int i = 0; i < 4; ++i) image[static_cast<int>(perm[i]) - 1] += mu[i];
      const auto it = ga.find(image);
      if (it == ga.end() || it->second.size() != series_b.size()) {
        ok = false;
        break;
      }
      const auto& series_a = it->second;
      const int r = series_a.begin()->first - series_b.begin()->first;
      for (auto ib = series_b.begin(), ia = series_a.begin(); ib != series_b.end(); ++ib, ++ia) {
        if (ia->first - ib->first != r) {
          ok = false;
          break;
        }
        const Rational ratio = ib->second / ia->second;
        if (!lambda) lambda = ratio;
        if (*lambda != ratio) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      rows.push_back({-1, mu[0], mu[1], mu[2], mu[3], r});
    }
    if (!ok) continue;
    const auto sol = solve_shifts(std::move(rows), limit);
    any_consistent = any_consistent || sol.consistent;
    if (!sol.best) continue;
    long cost = 0;
    for (int e : *sol.best) cost += std::abs(e);
    if (cost < best_cost) {
      best_cost = cost;
      FiberSubstitution s;
      s.image = perm;
      s.t_power = *sol.best;
      best = s;
    }
  }
  if (!best && any_consistent) {
    throw Error(ErrorCode::kSearchBoundExceeded,
                "a rational scaling exists but none with |power| <= " + std::to_string(limit));
  }
  return best;
}

// ---- uniqueness --------------------------------------------------------------

const char* verdict_name(UniquenessVerdict v) {
  switch (v) {
    case UniquenessVerdict::kIsomorphism: return "isomorphism";
    case UniquenessVerdict::kForcesSingularityInV: return "forces-singularity-in-V";
    case UniquenessVerdict::kForcesSingularityInU: return "forces-singularity-in-U";
    case UniquenessVerdict::kForcesSingularityInBoth: return "forces-singularity-in-both";
    case UniquenessVerdict::kNotRelated: return "not-related";
  }
  return "?";
}

UniquenessReport uniqueness_check(const FibrationModel& v, const FibrationModel& u,
                                  const MonomialMap& map) {
  UniquenessReport rep;
  rep.forward = transport(map, u, true);
  rep.backward = transport(map.inverse(), v, true);
  const bool related =
      (rep.forward.integral && proportional_up_to_t_power(rep.forward.source.equation, v.equation)) ||
      (rep.backward.integral && proportional_up_to_t_power(rep.backward.source.equation, u.equation));
  if (!related) return rep;
  if (map.trivial()) {
    rep.verdict = UniquenessVerdict::kIsomorphism;
    return rep;
  }
  if (auto p = designated_point(map, ModelSide::kSource); p && jacobian_vanishes(v.equation, *p)) {
    rep.singular_in_v = p;
  }
  if (auto p = designated_point(map, ModelSide::kTarget); p && jacobian_vanishes(u.equation, *p)) {
    rep.singular_in_u = p;
  }
  const bool forced_ok = forced_side(map) == ModelSide::kSource ? rep.singular_in_v.has_value()
                                                                 : rep.singular_in_u.has_value();
  if (!forced_ok) {
    throw Error(ErrorCode::kInternalInconsistency,
                "related models without the forced singular point");
  }
  if (rep.singular_in_v && rep.singular_in_u) {
    rep.verdict = UniquenessVerdict::kForcesSingularityInBoth;
  } else if (rep.singular_in_v) {
    rep.verdict = UniquenessVerdict::kForcesSingularityInV;
  } else {
    rep.verdict = UniquenessVerdict::kForcesSingularityInU;
  }
  return rep;
}

// ---- random instances --------------------------------------------------------

namespace {

std::vector<Monomial> equation_monomials(int degree) {
  std::vector<Monomial> out;
  if (degree == 1) {
    out.push_back(make_monomial(0, 0, 0, 0, 2));
    out.push_back(make_monomial(0, 0, 0, 3, 0));
    for (int i = 0; i <= 4; ++i) out.push_back(make_monomial(0, i, 4 - i, 1, 0));
    for (int i = 0; i <= 6; ++i) out.push_back(make_monomial(0, i, 6 - i, 0, 0));
  } else {
    out.push_back(make_monomial(0, 0, 0, 0, 2));
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) out.push_back(make_monomial(0, i, j, 4 - i - j, 0));
  }
  return out;
}

}  // namespace

RandomInstance random_instance(int degree, std::mt19937_64& rng, int max_m, int max_t_degree) {
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const auto ws = WeightSystem::for_degree(degree);
  const auto monos = equation_monomials(degree);
  for (;;) {
    const int m = uniform(1, max_m);
    std::array<int, 4> fwd{};
    if (degree == 1) {
      const int k = uniform(0, m);
      fwd = {uniform(0, m), uniform(0, m), 2 * k, 3 * k};
    } else {
      fwd = {uniform(0, m), uniform(0, m), uniform(0, m), uniform(0, 2 * m)};
    }
    // Zero out one slot so the forward set contains a zero.
    const int zero_slot = uniform(0, degree == 1 ? 2 : 3);
    if (degree == 1 && zero_slot == 2) {
      fwd[2] = fwd[3] = 0;
    } else {
      fwd[zero_slot] = 0;
    }
    MonomialMap map;
    try {
      map = solve_constraints(degree, fwd);
    } catch (const Error&) {
      continue;
    }
    if (map.trivial() || map.m > max_m) continue;

    BigradedPoly::TermMap terms;
    for (const auto& mu : monos) {
      int pairing = 0;
      for (int i = 0; i < 4; ++i) pairing += fwd[i] * mu[kFiberVars[i]];
      const int needed = std::max(0, 2 * fwd[3] - pairing);
      const bool unit = mu[Var::w] == 2 || (degree == 1 && mu[Var::z] == 3);
      if (unit) {
        terms[mu] = 1;
        continue;
      }
      if (uniform(0, 3) == 0) continue;  // sparse support
      const int e = uniform(0, 9) == 0 ? uniform(0, max_t_degree) : needed + uniform(0, 2);
      if (e > max_t_degree) continue;
      Monomial tm = mu;
      tm[Var::t] = e;
      int c = uniform(-5, 4);
      if (c >= 0) ++c;
      terms[tm] = c;
    }
    FibrationModel target;
    target.weights = ws;
    target.base = BaseKind::kGerm;
    target.equation = BigradedPoly(ws, std::move(terms));
    if (!validate(target).valid()) continue;
    return {map, target};
  }
}

}  // namespace dpf
