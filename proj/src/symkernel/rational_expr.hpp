#pragma once

#include <map>
#include <set>
#include <string>

#include "symkernel/poly.hpp"

namespace eds::sym {

// Element of the rational-function field Q(symbols), kept normalized:
// gcd(num, den) = 1, den != 0, den has leading coefficient 1, and the zero
// element is 0/1.
class RationalExpr {
public:
  RationalExpr() : num_(), den_(Poly::constant(1)) {}
  explicit RationalExpr(long n) : num_(Poly::constant(n)), den_(Poly::constant(1)) {}
  explicit RationalExpr(const mpq_class& q) : num_(Poly::constant(q)), den_(Poly::constant(1)) {}
  explicit RationalExpr(const Poly& p) : num_(p), den_(Poly::constant(1)) {}
  RationalExpr(const Poly& num, const Poly& den);

  static RationalExpr from_symbol(SymbolId s) { return RationalExpr(Poly::var(s)); }
  static RationalExpr zero() { return RationalExpr(); }
  static RationalExpr one() { return RationalExpr(1); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  const mpq_class& constant_value() const { return num_.constant_value(); }

  bool contains(SymbolId s) const { return num_.contains(s) || den_.contains(s); }
  void collect_symbols(std::set<SymbolId>& out) const {
    num_.collect_symbols(out);
    den_.collect_symbols(out);
  }

  RationalExpr operator-() const;
  RationalExpr operator+(const RationalExpr& o) const;
  RationalExpr operator-(const RationalExpr& o) const;
  RationalExpr operator*(const RationalExpr& o) const;
  RationalExpr operator/(const RationalExpr& o) const;
  RationalExpr& operator+=(const RationalExpr& o) { return *this = *this + o; }
  RationalExpr& operator-=(const RationalExpr& o) { return *this = *this - o; }
  RationalExpr& operator*=(const RationalExpr& o) { return *this = *this * o; }
  RationalExpr& operator/=(const RationalExpr& o) { return *this = *this / o; }

  RationalExpr inverse() const;
  RationalExpr pow(int32_t e) const;

  RationalExpr derivative(SymbolId s) const;

  // Simultaneous substitution. Throws VanishingDenominator when a binding
  // makes the denominator vanish identically.
  RationalExpr substituted(const std::map<SymbolId, RationalExpr>& bindings) const;

  bool operator==(const RationalExpr& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RationalExpr& o) const { return !(*this == o); }

  std::string to_string() const;

  static int compare(const RationalExpr& a, const RationalExpr& b);

private:
  void normalize();

  Poly num_, den_;
};

// Evaluates a polynomial with symbols mapped to rational expressions;
// unbound symbols stay as themselves.
RationalExpr eval_poly(const Poly& p, const std::map<SymbolId, RationalExpr>& bindings);

struct RationalExprLess {
  bool operator()(const RationalExpr& a, const RationalExpr& b) const {
    return RationalExpr::compare(a, b) < 0;
  }
};

}  // namespace eds::sym
