#include "dpf/exactpoly.hpp"

#include <algorithm>
#include <cassert>

#include "dpf/error.hpp"

namespace dpf {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kInvalidConstants: return "InvalidConstants";
    case ErrorCode::kInconsistentTwists: return "InconsistentTwists";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kNonIntegral: return "NonIntegral";
    case ErrorCode::kNotSingular: return "NotSingular";
    case ErrorCode::kInvalidChart: return "InvalidChart";
    case ErrorCode::kDenominatorNotInvertible: return "DenominatorNotInvertible";
    case ErrorCode::kSearchBoundExceeded: return "SearchBoundExceeded";
    case ErrorCode::kInternalInconsistency: return "InternalInconsistency";
    case ErrorCode::kReducibleEquation: return "ReducibleEquation";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

Rational make_rational(long numerator, long denominator) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

char var_name(Var v) { return "txyzw"[static_cast<int>(v)]; }

std::optional<Var> var_from_name(char c) {
  switch (c) {
    case 't': return Var::t;
    case 'x': case 'p': return Var::x;
    case 'y': case 'q': return Var::y;
    case 'z': case 'r': return Var::z;
    case 'w': case 's': return Var::w;
    default: return std::nullopt;
  }
}

WeightSystem WeightSystem::for_degree(int degree) {
  if (degree != 1 && degree != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "fiber degree must be 1 or 2, got " + std::to_string(degree));
  }
  return WeightSystem(degree);
}

int WeightSystem::weight(Var v) const {
  static constexpr std::array<int, 5> kD1 = {0, 1, 1, 2, 3};
  static constexpr std::array<int, 5> kD2 = {0, 1, 1, 1, 2};
  return (degree_ == 1 ? kD1 : kD2)[static_cast<int>(v)];
}

// ---- Monomial -------------------------------------------------------------

int Monomial::total_degree() const {
  int s = 0;
  for (int e : exp) s += e;
  return s;
}

int Monomial::fiber_weight(const WeightSystem& ws) const {
  int s = 0;
  for (Var v : kFiberVars) s += (*this)[v] * ws.weight(v);
  return s;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < 5; ++i) r.exp[i] = exp[i] + o.exp[i];
  return r;
}

bool Monomial::divides(const Monomial& o) const {
  for (int i = 0; i < 5; ++i) {
    if (exp[i] > o.exp[i]) return false;
  }
  return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (int i = 0; i < 5; ++i) r.exp[i] = exp[i] - o.exp[i];
  return r;
}

Monomial make_monomial(int t, int x, int y, int z, int w) {
  return Monomial{{t, x, y, z, w}};
}

bool CanonicalOrder::operator()(const Monomial& a, const Monomial& b) const {
  const int da = a.total_degree();
  const int db = b.total_degree();
  if (da != db) return da > db;
  for (int i = 4; i >= 0; --i) {
    if (a.exp[i] != b.exp[i]) return a.exp[i] < b.exp[i];
  }
  return false;
}

// ---- BigradedPoly ---------------------------------------------------------

BigradedPoly::BigradedPoly(WeightSystem ws) : ws_(ws) {}

BigradedPoly::BigradedPoly(WeightSystem ws, TermMap terms)
    : ws_(ws), terms_(std::move(terms)) {
  std::erase_if(terms_, [](const auto& kv) { return sgn(kv.second) == 0; });
}

BigradedPoly BigradedPoly::constant(WeightSystem ws, const Rational& c) {
  return monomial(ws, Monomial{}, c);
}

BigradedPoly BigradedPoly::variable(WeightSystem ws, Var v) {
  Monomial m;
  m[v] = 1;
  return monomial(ws, m);
}

BigradedPoly BigradedPoly::monomial(WeightSystem ws, const Monomial& m,
                                    const Rational& c) {
  TermMap t;
  t.emplace(m, c);
  return BigradedPoly(ws, std::move(t));
}

Rational BigradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int BigradedPoly::degree_in(Var v) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first[v];
  for (const auto& [m, c] : terms_) d = std::max(d, m[v]);
  return d;
}

int BigradedPoly::min_exponent(Var v) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first[v];
  for (const auto& [m, c] : terms_) d = std::min(d, m[v]);
  return d;
}

std::optional<int> BigradedPoly::homogeneous_weight() const {
  if (terms_.empty()) return std::nullopt;
  const int w = terms_.begin()->first.fiber_weight(ws_);
  for (const auto& [m, c] : terms_) {
    if (m.fiber_weight(ws_) != w) return std::nullopt;
  }
  return w;
}

const Monomial& BigradedPoly::leading_monomial() const {
  if (terms_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "zero polynomial has no leading term");
  }
  return terms_.begin()->first;
}

const Rational& BigradedPoly::leading_coefficient() const {
  if (terms_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "zero polynomial has no leading term");
  }
  return terms_.begin()->second;
}

BigradedPoly BigradedPoly::with_weights(WeightSystem ws) const {
  return BigradedPoly(ws, terms_);
}

BigradedPoly BigradedPoly::operator-() const {
  TermMap t = terms_;
  for (auto& [m, c] : t) c = -c;
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::operator+(const BigradedPoly& o) const {
  TermMap t = terms_;
  for (const auto& [m, c] : o.terms_) t[m] += c;
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::operator-(const BigradedPoly& o) const {
  TermMap t = terms_;
  for (const auto& [m, c] : o.terms_) t[m] -= c;
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::operator*(const BigradedPoly& o) const {
  TermMap t;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) t[ma * mb] += ca * cb;
  }
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::operator*(const Rational& c) const {
  TermMap t = terms_;
  for (auto& [m, v] : t) v *= c;
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::times_monomial(const Monomial& m) const {
  TermMap t;
  for (const auto& [mm, c] : terms_) t.emplace(mm * m, c);
  return BigradedPoly(ws_, std::move(t));
}

BigradedPoly BigradedPoly::pow(unsigned n) const {
  BigradedPoly r = constant(ws_, 1);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

// ---- operations -----------------------------------------------------------

BigradedPoly substitute_monomial(const BigradedPoly& p,
                                 const std::array<int, 4>& scale,
                                 int global_t_shift) {
  BigradedPoly::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    Monomial r = m;
    int shift = global_t_shift;
    for (int i = 0; i < 4; ++i) shift += scale[i] * m[kFiberVars[i]];
    r[Var::t] += shift;
    out.emplace(r, c);
  }
  return BigradedPoly(p.weights(), std::move(out));
}

bool is_integral(const BigradedPoly& p) {
  return std::ranges::all_of(p.terms(),
                             [](const auto& kv) { return kv.first[Var::t] >= 0; });
}

BigradedPoly partial_derivative(const BigradedPoly& p, Var v) {
  BigradedPoly::TermMap out;
  for (const auto& [m, c] : p.terms()) {
    const int e = m[v];
    if (e == 0) continue;
    Monomial r = m;
    r[v] = e - 1;
    out[r] += c * e;
  }
  return BigradedPoly(p.weights(), std::move(out));
}

namespace {

Rational rational_pow(const Rational& base, int e) {
  if (e == 0) return 1;
  if (e < 0) {
    if (sgn(base) == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "negative power of a variable evaluated at zero");
    }
    return rational_pow(Rational(1) / base, -e);
  }
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

Rational evaluate(const BigradedPoly& p, const Point& point) {
  Rational sum = 0;
  for (const auto& [m, c] : p.terms()) {
    Rational term = c;
    for (Var v : kAllVars) {
      if (m[v] != 0) term *= rational_pow(point[static_cast<int>(v)], m[v]);
    }
    sum += term;
  }
  return sum;
}

bool jacobian_vanishes(const BigradedPoly& p, const Point& point) {
  if (evaluate(p, point) != 0) return false;
  for (Var v : kAllVars) {
    if (evaluate(partial_derivative(p, v), point) != 0) return false;
  }
  return true;
}

// ---- PrimeField -----------------------------------------------------------

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 2 || p > (1ULL << 31)) {
    throw Error(ErrorCode::kInvalidArgument, "prime out of supported range");
  }
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::to_string(p) + " is not prime");
    }
  }
}

std::uint64_t PrimeField::add(std::uint64_t a, std::uint64_t b) const {
  return (a + b) % p_;
}
std::uint64_t PrimeField::sub(std::uint64_t a, std::uint64_t b) const {
  return (a + p_ - b) % p_;
}
std::uint64_t PrimeField::mul(std::uint64_t a, std::uint64_t b) const {
  return (a * b) % p_;
}
std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t PrimeField::inv(std::uint64_t a) const {
  assert(a % p_ != 0);
  return pow(a, p_ - 2);
}
std::uint64_t PrimeField::from_int(long v) const {
  const long m = static_cast<long>(p_);
  return static_cast<std::uint64_t>(((v % m) + m) % m);
}

std::optional<std::uint64_t> PrimeField::reduce(const Rational& q) const {
  const mpz_class pm(static_cast<unsigned long>(p_));
  mpz_class num = q.get_num() % pm;
  mpz_class den = q.get_den() % pm;
  if (num < 0) num += pm;
  if (den == 0) return std::nullopt;
  return mul(num.get_ui(), inv(den.get_ui()));
}

std::uint64_t evaluate_mod(const BigradedPoly& p, const FpPoint& point,
                           const PrimeField& field) {
  std::uint64_t sum = 0;
  for (const auto& [m, c] : p.terms()) {
    auto coeff = field.reduce(c);
    if (!coeff) {
      throw Error(ErrorCode::kDenominatorNotInvertible,
                  "coefficient " + c.get_str() + " has no reduction mod " +
                      std::to_string(field.modulus()));
    }
    std::uint64_t term = *coeff;
    for (Var v : kAllVars) {
      const int e = m[v];
      const std::uint64_t base = point[static_cast<int>(v)] % field.modulus();
      if (e > 0) {
        term = field.mul(term, field.pow(base, static_cast<std::uint64_t>(e)));
      } else if (e < 0) {
        if (base == 0) {
          throw Error(ErrorCode::kInvalidArgument,
                      "negative power of a variable evaluated at zero");
        }
        term = field.mul(term, field.pow(field.inv(base),
                                         static_cast<std::uint64_t>(-e)));
      }
    }
    sum = field.add(sum, term);
  }
  return sum;
}

}  // namespace dpf
