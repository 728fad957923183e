#include <cctype>
#include <ostream>
#include <sstream>

#include "dpf/error.hpp"
#include "dpf/exactpoly.hpp"

namespace dpf {

namespace {

std::string monomial_text(const Monomial& m) {
  std::string out;
  for (Var v : kAllVars) {
    const int e = m[v];
    if (e == 0) continue;
    if (!out.empty()) out += ' ';
    out += var_name(v);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string to_text(const BigradedPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = sgn(c) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational mag = abs(c);
    const std::string mono = monomial_text(m);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + " * " + mono;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigradedPoly& p) {
  return os << to_text(p);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, WeightSystem ws) : s_(text), ws_(ws) {}

  BigradedPoly parse() {
    BigradedPoly::TermMap terms;
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ >= s_.size()) break;
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = term();
      terms[m] += c * sign;
    }
    return BigradedPoly(ws_, std::move(terms));
  }

 private:
  char peek() const { return s_[pos_]; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::kParse,
                what + " at offset " + std::to_string(pos_) + " in \"" +
                    std::string(s_) + "\"");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(s_.substr(start, pos_ - start));
  }

  Rational number() {
    mpz_class num(digits());
    mpz_class den(1);
    skip();
    if (pos_ < s_.size() && peek() == '/') {
      ++pos_;
      skip();
      den = mpz_class(digits());
      if (den == 0) fail("zero denominator");
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  int exponent() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && peek() == '-') {
      neg = true;
      ++pos_;
    }
    const std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    const int e = std::stoi(d);
    return neg ? -e : e;
  }

  bool at_factor() const {
    if (pos_ >= s_.size()) return false;
    const char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || var_from_name(c).has_value();
  }

  std::pair<Monomial, Rational> term() {
    Monomial m;
    Rational c = 1;
    bool any = false;
    while (true) {
      skip();
      if (any && pos_ < s_.size() && peek() == '*') {
        ++pos_;
        skip();
        if (!at_factor()) fail("expected factor after '*'");
      }
      if (!at_factor()) break;
      any = true;
      const char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        c *= number();
        continue;
      }
      const Var v = *var_from_name(ch);
      ++pos_;
      if (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(peek()))) {
        fail("unknown identifier");
      }
      int e = 1;
      skip();
      if (pos_ < s_.size() && peek() == '^') {
        ++pos_;
        e = exponent();
      }
      if (e < 0 && v != Var::t) fail("negative exponent on a fiber variable");
      m[v] += e;
    }
    if (!any) fail("expected a term");
    return {m, c};
  }

  std::string_view s_;
  WeightSystem ws_;
  std::size_t pos_ = 0;
};

}  // namespace

BigradedPoly parse_poly(std::string_view text, WeightSystem ws) {
  return Parser(text, ws).parse();
}

}  // namespace dpf
