// Multivariate gcd over Q by recursion on the main variable with primitive
// pseudo-remainder sequences.

#include <algorithm>
#include <map>

#include "dpf/error.hpp"
#include "dpf/exactpoly.hpp"

namespace dpf {

BigradedPoly exact_divide(const BigradedPoly& a, const BigradedPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kInvalidArgument, "division by zero");
  const WeightSystem ws = a.weights();
  BigradedPoly q(ws);
  BigradedPoly r = a;
  const Monomial& lb = b.leading_monomial();
  const Rational& cb = b.leading_coefficient();
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    if (!lb.divides(lr)) {
      throw Error(ErrorCode::kInvalidArgument, "divisor does not divide dividend");
    }
    const BigradedPoly term =
        BigradedPoly::monomial(ws, lr / lb, r.leading_coefficient() / cb);
    q = q + term;
    r = r - term * b;
  }
  return q;
}

namespace {

BigradedPoly make_monic(const BigradedPoly& p) {
  if (p.is_zero()) return p;
  return p * (Rational(1) / p.leading_coefficient());
}

std::optional<Var> main_variable(const BigradedPoly& a, const BigradedPoly& b) {
  for (int i = 4; i >= 0; --i) {
    const Var v = static_cast<Var>(i);
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return v;
  }
  return std::nullopt;
}

// Coefficients of p viewed as a polynomial in v, keyed by v-degree.
std::map<int, BigradedPoly> coefficients_in(const BigradedPoly& p, Var v) {
  std::map<int, BigradedPoly::TermMap> raw;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    r[v] = 0;
    raw[m[v]].emplace(r, c);
  }
  std::map<int, BigradedPoly> out;
  for (auto& [d, t] : raw) out.emplace(d, BigradedPoly(p.weights(), std::move(t)));
  return out;
}

BigradedPoly pow_var(WeightSystem ws, Var v, int e) {
  Monomial m;
  m[v] = e;
  return BigradedPoly::monomial(ws, m);
}

bool is_monomial_list(std::span<const BigradedPoly> polys) {
  return std::ranges::all_of(polys, [](const BigradedPoly& p) { return p.size() <= 1; });
}

BigradedPoly gcd2(const BigradedPoly& a, const BigradedPoly& b);

BigradedPoly content_in(const BigradedPoly& p, Var v) {
  BigradedPoly g(p.weights());
  for (const auto& [d, c] : coefficients_in(p, v)) {
    g = gcd2(g, c);
    if (g.size() == 1 && g.leading_monomial() == Monomial{}) break;
  }
  return g;
}

// Pseudo-remainder of p by q with respect to v.
BigradedPoly pseudo_remainder(BigradedPoly p, const BigradedPoly& q, Var v) {
  const int dq = q.degree_in(v);
  auto qc = coefficients_in(q, v);
  const BigradedPoly lc = qc.rbegin()->second;
  const BigradedPoly tail = q - lc * pow_var(q.weights(), v, dq);
  while (!p.is_zero() && p.degree_in(v) >= dq) {
    const int dp = p.degree_in(v);
    const BigradedPoly lp = coefficients_in(p, v).rbegin()->second;
    const BigradedPoly rest = p - lp * pow_var(p.weights(), v, dp);
    p = rest * lc - lp * tail * pow_var(p.weights(), v, dp - dq);
  }
  return p;
}

BigradedPoly gcd2(const BigradedPoly& a, const BigradedPoly& b) {
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  const WeightSystem ws = a.weights();
  if (a.size() == 1 && b.size() == 1) {
    Monomial m;
    for (int i = 0; i < 5; ++i) {
      m.exp[i] = std::min(a.leading_monomial().exp[i], b.leading_monomial().exp[i]);
    }
    return BigradedPoly::monomial(ws, m);
  }
  const auto v = main_variable(a, b);
  if (!v) return BigradedPoly::constant(ws, 1);

  const BigradedPoly ca = content_in(a, *v);
  const BigradedPoly cb = content_in(b, *v);
  const BigradedPoly c = gcd2(ca, cb);
  BigradedPoly p = exact_divide(a, ca);
  BigradedPoly q = exact_divide(b, cb);
  if (p.degree_in(*v) < q.degree_in(*v)) std::swap(p, q);

  while (!q.is_zero()) {
    if (q.degree_in(*v) == 0) {
      p = BigradedPoly::constant(ws, 1);
      break;
    }
    BigradedPoly r = pseudo_remainder(p, q, *v);
    p = q;
    if (r.is_zero()) break;
    q = exact_divide(r, content_in(r, *v));
  }
  if (p.degree_in(*v) > 0) p = exact_divide(p, content_in(p, *v));
  return make_monic(c * p);
}

// Multiplies by the power of t that clears every negative t exponent.
BigradedPoly clear_laurent(const BigradedPoly& p) {
  const int lo = p.min_exponent(Var::t);
  if (lo >= 0) return p;
  return p.times_monomial(make_monomial(-lo, 0, 0, 0, 0));
}

}  // namespace

BigradedPoly content_gcd(std::span<const BigradedPoly> polys) {
  std::vector<BigradedPoly> cleared;
  cleared.reserve(polys.size());
  for (const auto& p : polys) cleared.push_back(clear_laurent(p));
  const WeightSystem ws =
      cleared.empty() ? WeightSystem::for_degree(1) : cleared.front().weights();
  BigradedPoly g(ws);
  if (is_monomial_list(cleared)) {
    for (const auto& p : cleared) g = gcd2(g, p);
    return g;
  }
  for (const auto& p : cleared) {
    g = gcd2(g, p);
    if (g.size() == 1 && g.leading_monomial() == Monomial{}) break;
  }
  return g;
}

}  // namespace dpf
