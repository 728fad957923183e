#pragma once

// Exact bigraded polynomials in the base parameter t and the fiber
// coordinates x, y, z, w, with rational coefficients.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dpf {

using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

enum class Var : int { t = 0, x = 1, y = 2, z = 3, w = 4 };

inline constexpr std::array<Var, 5> kAllVars = {Var::t, Var::x, Var::y, Var::z,
                                                Var::w};
inline constexpr std::array<Var, 4> kFiberVars = {Var::x, Var::y, Var::z,
                                                  Var::w};

char var_name(Var v);
std::optional<Var> var_from_name(char c);

/// Fiber weights of (x, y, z, w): (1,1,2,3) for degree 1, (1,1,1,2) for
/// degree 2.
class WeightSystem {
 public:
  static WeightSystem for_degree(int degree);

  int degree() const { return degree_; }
  int weight(Var v) const;
  /// Fiber weight of the defining equation: 6 (degree 1) or 4 (degree 2).
  int equation_weight() const { return degree_ == 1 ? 6 : 4; }

  bool operator==(const WeightSystem&) const = default;

 private:
  explicit WeightSystem(int degree) : degree_(degree) {}
  int degree_;
};

struct Monomial {
  std::array<int, 5> exp{};  // indexed by Var: t may be negative

  int operator[](Var v) const { return exp[static_cast<int>(v)]; }
  int& operator[](Var v) { return exp[static_cast<int>(v)]; }

  int total_degree() const;
  int fiber_weight(const WeightSystem& ws) const;
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const;  // componentwise <=
  Monomial operator/(const Monomial& o) const;

  bool operator==(const Monomial&) const = default;
};

Monomial make_monomial(int t, int x, int y, int z, int w);

/// Degrevlex on (t, x, y, z, w), greatest first. Used for both iteration and
/// serialization, so canonical text lists the leading term first.
struct CanonicalOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class BigradedPoly {
 public:
  using TermMap = std::map<Monomial, Rational, CanonicalOrder>;

  explicit BigradedPoly(WeightSystem ws = WeightSystem::for_degree(1));
  BigradedPoly(WeightSystem ws, TermMap terms);

  static BigradedPoly constant(WeightSystem ws, const Rational& c);
  static BigradedPoly variable(WeightSystem ws, Var v);
  static BigradedPoly monomial(WeightSystem ws, const Monomial& m,
                               const Rational& c = 1);

  const WeightSystem& weights() const { return ws_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Monomial& m) const;
  /// Largest exponent of v over all terms; 0 for the zero polynomial.
  int degree_in(Var v) const;
  int min_exponent(Var v) const;
  /// Fiber weight shared by all terms, or nullopt when mixed (or zero).
  std::optional<int> homogeneous_weight() const;
  const Monomial& leading_monomial() const;
  const Rational& leading_coefficient() const;

  BigradedPoly with_weights(WeightSystem ws) const;

  BigradedPoly operator-() const;
  BigradedPoly operator+(const BigradedPoly& o) const;
  BigradedPoly operator-(const BigradedPoly& o) const;
  BigradedPoly operator*(const BigradedPoly& o) const;
  BigradedPoly operator*(const Rational& c) const;
  BigradedPoly times_monomial(const Monomial& m) const;
  BigradedPoly pow(unsigned n) const;

  /// Equality of term maps; the weight system is not compared.
  bool operator==(const BigradedPoly& o) const { return terms_ == o.terms_; }

 private:
  WeightSystem ws_;
  TermMap terms_;
};

// ---- operations -----------------------------------------------------------

/// Replaces x -> t^a x, y -> t^b y, z -> t^c z, w -> t^d w and multiplies by
/// t^shift. The result may carry negative t exponents.
BigradedPoly substitute_monomial(const BigradedPoly& p,
                                 const std::array<int, 4>& scale,
                                 int global_t_shift);

/// True iff no term has a negative t exponent.
bool is_integral(const BigradedPoly& p);

BigradedPoly partial_derivative(const BigradedPoly& p, Var v);

using Point = std::array<Rational, 5>;  // indexed by Var

/// Exact value at a rational point. Negative t powers at t = 0 raise
/// kInvalidArgument.
Rational evaluate(const BigradedPoly& p, const Point& point);

/// True iff p and its five partial derivatives all vanish at point.
bool jacobian_vanishes(const BigradedPoly& p, const Point& point);

/// Arithmetic in Z/pZ for a small prime p.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // a != 0
  std::uint64_t from_int(long v) const;
  /// Reduction of a rational; nullopt when the denominator vanishes mod p.
  std::optional<std::uint64_t> reduce(const Rational& q) const;

 private:
  std::uint64_t p_;
};

using FpPoint = std::array<std::uint64_t, 5>;  // indexed by Var

/// Value of the reduction of p at an F_p point. Throws
/// kDenominatorNotInvertible when a coefficient does not reduce.
std::uint64_t evaluate_mod(const BigradedPoly& p, const FpPoint& point,
                           const PrimeField& field);

/// A greatest common divisor over Q[t,x,y,z,w], monic in canonical order.
/// Laurent inputs are first cleared of negative t powers term-wise.
BigradedPoly content_gcd(std::span<const BigradedPoly> polys);

/// Exact quotient a / b; throws kInvalidArgument when b does not divide a.
BigradedPoly exact_divide(const BigradedPoly& a, const BigradedPoly& b);

// ---- canonical text -------------------------------------------------------

/// Terms in canonical order, each as `coeff * t^a x^b y^c z^d w^e`; exponent
/// 1 and a unit coefficient are elided, "0" for the zero polynomial.
std::string to_text(const BigradedPoly& p);
std::ostream& operator<<(std::ostream& os, const BigradedPoly& p);

/// Parses canonical text and relaxed spellings such as `2*x^2*y - 3/4 t`.
/// The aliases p, q, r, s stand for x, y, z, w.
BigradedPoly parse_poly(std::string_view text, WeightSystem ws);

}  // namespace dpf
