#include "symkernel/rational_expr.hpp"

#include "symkernel/errors.hpp"

namespace eds::sym {

RationalExpr::RationalExpr(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DivisionByZero("rational expression with zero denominator");
  normalize();
}

void RationalExpr::normalize() {
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    return;
  }
  if (!den_.is_one()) {
    Poly g = poly_gcd(num_, den_);
    if (!g.is_one() && !g.is_zero()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  const mpq_class& lc = den_.leading_coefficient();
  if (lc != 1) {
    mpq_class inv = 1 / lc;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RationalExpr RationalExpr::operator-() const {
  RationalExpr r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalExpr RationalExpr::operator+(const RationalExpr& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RationalExpr(num_ + o.num_, den_);
  Poly g = poly_gcd(den_, o.den_);
  if (g.is_one()) return RationalExpr(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly da = *den_.divide_exact(g);
  Poly db = *o.den_.divide_exact(g);
  return RationalExpr(num_ * db + o.num_ * da, den_ * db);
}

RationalExpr RationalExpr::operator-(const RationalExpr& o) const { return *this + (-o); }

RationalExpr RationalExpr::operator*(const RationalExpr& o) const {
  if (is_zero() || o.is_zero()) return RationalExpr();
  Poly g1 = poly_gcd(num_, o.den_);
  Poly g2 = poly_gcd(o.num_, den_);
  Poly na = g1.is_one() ? num_ : *num_.divide_exact(g1);
  Poly db = g1.is_one() ? o.den_ : *o.den_.divide_exact(g1);
  Poly nb = g2.is_one() ? o.num_ : *o.num_.divide_exact(g2);
  Poly da = g2.is_one() ? den_ : *den_.divide_exact(g2);
  return RationalExpr(na * nb, da * db);
}

RationalExpr RationalExpr::operator/(const RationalExpr& o) const {
  if (o.is_zero()) throw DivisionByZero("division by the zero expression");
  return *this * o.inverse();
}

RationalExpr RationalExpr::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of the zero expression");
  RationalExpr r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

RationalExpr RationalExpr::pow(int32_t e) const {
  if (e == 0) return RationalExpr(1);
  RationalExpr base = e < 0 ? inverse() : *this;
  uint32_t k = e < 0 ? static_cast<uint32_t>(-static_cast<int64_t>(e)) : static_cast<uint32_t>(e);
  RationalExpr r(1);
  while (k > 0) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

RationalExpr RationalExpr::derivative(SymbolId s) const {
  if (!contains(s)) return RationalExpr();
  if (den_.is_one()) return RationalExpr(num_.derivative(s));
  Poly dn = num_.derivative(s), dd = den_.derivative(s);
  return RationalExpr(dn * den_ - num_ * dd, den_ * den_);
}

RationalExpr RationalExpr::substituted(const std::map<SymbolId, RationalExpr>& bindings) const {
  if (bindings.empty()) return *this;
  bool touched = false;
  std::set<SymbolId> syms;
  collect_symbols(syms);
  for (SymbolId s : syms)
    if (bindings.count(s)) {
      touched = true;
      break;
    }
  if (!touched) return *this;
  RationalExpr n = eval_poly(num_, bindings);
  RationalExpr d = eval_poly(den_, bindings);
  if (d.is_zero())
    throw VanishingDenominator("substitution sends denominator " + den_.to_string() +
                               " to zero");
  return n / d;
}

std::string RationalExpr::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.terms().size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  std::string d = den_.terms().size() > 1 ? "(" + den_.to_string() + ")" : den_.to_string();
  return n + "/" + d;
}

int RationalExpr::compare(const RationalExpr& a, const RationalExpr& b) {
  int c = Poly::compare(a.num_, b.num_);
  if (c != 0) return c;
  return Poly::compare(a.den_, b.den_);
}

RationalExpr eval_poly(const Poly& p, const std::map<SymbolId, RationalExpr>& bindings) {
  RationalExpr acc;
  std::map<SymbolId, std::vector<RationalExpr>> powers;
  auto power_of = [&](SymbolId s, uint32_t e, const RationalExpr& base) -> const RationalExpr& {
    auto& vec = powers[s];
    if (vec.empty()) vec.push_back(base);
    while (vec.size() < e) vec.push_back(vec.back() * base);
    return vec[e - 1];
  };
  for (const auto& [m, c] : p.terms()) {
    RationalExpr t{c};
    Monomial untouched;
    for (const auto& [s, e] : m.factors) {
      auto it = bindings.find(s);
      if (it == bindings.end()) {
        untouched.factors.emplace_back(s, e);
      } else {
        t *= power_of(s, e, it->second);
      }
    }
    if (!untouched.is_one()) t *= RationalExpr(Poly::term(untouched, 1));
    acc += t;
  }
  return acc;
}

}  // namespace eds::sym
