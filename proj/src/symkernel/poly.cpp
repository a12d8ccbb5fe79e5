#include "symkernel/poly.hpp"

#include <algorithm>
#include <sstream>

#include "symkernel/errors.hpp"

namespace eds::sym {

namespace {

const mpq_class kZeroQ = 0;

}  // namespace

Poly Poly::constant(const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(Monomial::one(), c);
  return p;
}

Poly Poly::var(SymbolId s, uint32_t e) {
  Poly p;
  p.terms_.emplace_back(Monomial::var(s, e), mpq_class(1));
  return p;
}

Poly Poly::term(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1;
}

const mpq_class& Poly::constant_value() const {
  if (terms_.empty()) return kZeroQ;
  return terms_[0].second;
}

const Monomial& Poly::leading_monomial() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_[0].first;
}

const mpq_class& Poly::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_[0].second;
}

uint64_t Poly::total_degree() const {
  uint64_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

uint32_t Poly::degree_in(SymbolId s) const {
  uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(s));
  return d;
}

bool Poly::contains(SymbolId s) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(s)) return true;
  return false;
}

void Poly::collect_symbols(std::set<SymbolId>& out) const {
  for (const auto& [m, c] : terms_)
    for (const auto& [s, e] : m.factors) out.insert(s);
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    int cmp = grlex_compare(terms_[i].first, o.terms_[j].first);
    if (cmp > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (cmp < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      mpq_class c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  std::map<Monomial, mpq_class, MonomialGrlexGreater> acc;
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Monomial m = ma * mb;
      auto [it, fresh] = acc.emplace(std::move(m), ca * cb);
      if (!fresh) it->second += ca * cb;
    }
  }
  Poly r;
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.emplace_back(m, c);
  return r;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r = *this;
  for (auto& [m, k] : r.terms_) k *= c;
  return r;
}

Poly Poly::times_monomial(const Monomial& m, const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& [mm, cc] : terms_) r.terms_.emplace_back(mm * m, cc * c);
  return r;
}

Poly Poly::pow(uint32_t e) const {
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) r = r * base;
    e >>= 1u;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::derivative(SymbolId s) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    uint32_t e = m.degree_in(s);
    if (e == 0) continue;
    Monomial dm;
    for (const auto& [sym, ee] : m.factors) {
      if (sym == s) {
        if (ee > 1) dm.factors.emplace_back(sym, ee - 1);
      } else {
        dm.factors.emplace_back(sym, ee);
      }
    }
    r.terms_.emplace_back(std::move(dm), c * e);
  }
  return Poly::from_terms(std::move(r.terms_));
}

Poly Poly::substituted(const std::map<SymbolId, Poly>& bindings) const {
  Poly acc;
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(c);
    Monomial untouched;
    for (const auto& [s, e] : m.factors) {
      auto it = bindings.find(s);
      if (it == bindings.end()) {
        untouched.factors.emplace_back(s, e);
      } else {
        t = t * it->second.pow(e);
      }
    }
    acc += t.times_monomial(untouched, 1);
  }
  return acc;
}

std::optional<Poly> Poly::divide_exact(const Poly& o) const {
  if (o.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (is_zero()) return Poly();
  if (o.is_constant()) return scaled(1 / o.constant_value());
  Poly r = *this;
  std::vector<Term> q;
  while (!r.is_zero()) {
    auto mq = r.leading_monomial().divide(o.leading_monomial());
    if (!mq) return std::nullopt;
    mpq_class cq = r.leading_coefficient() / o.leading_coefficient();
    q.emplace_back(*mq, cq);
    r = r - o.times_monomial(*mq, cq);
  }
  return Poly::from_terms(std::move(q));
}

std::pair<mpq_class, Poly> Poly::content_and_primitive() const {
  if (is_zero()) return {mpq_class(0), Poly()};
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& [m, c] : terms_) {
    mpz_class num = c.get_num(), den = c.get_den();
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), den.get_mpz_t());
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  if (leading_coefficient() < 0) content = -content;
  Poly prim = scaled(1 / content);
  return {content, prim};
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    return grlex_compare(a.first, b.first) > 0;
  });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.second == 0) continue;
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Poly::compare(const Poly& a, const Poly& b) {
  std::size_t i = 0;
  for (; i < a.terms_.size() && i < b.terms_.size(); ++i) {
    int cm = grlex_compare(a.terms_[i].first, b.terms_[i].first);
    if (cm != 0) return cm;
    int cc = cmp(a.terms_[i].second, b.terms_[i].second);
    if (cc != 0) return cc;
  }
  if (i < a.terms_.size()) return 1;
  if (i < b.terms_.size()) return -1;
  return 0;
}

std::string mpq_to_string(const mpq_class& q) { return q.get_str(); }

namespace {

struct PrintTerm {
  uint64_t degree;
  std::vector<std::pair<std::string, uint32_t>> factors;  // sorted by name
  mpq_class coef;
};

bool print_term_less(const PrintTerm& a, const PrintTerm& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  std::size_t i = 0;
  for (; i < a.factors.size() && i < b.factors.size(); ++i) {
    if (a.factors[i].first != b.factors[i].first)
      return a.factors[i].first < b.factors[i].first;
    if (a.factors[i].second != b.factors[i].second)
      return a.factors[i].second > b.factors[i].second;
  }
  return a.factors.size() < b.factors.size();
}

}  // namespace

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::vector<PrintTerm> pts;
  pts.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    PrintTerm pt;
    pt.degree = m.total_degree();
    pt.coef = c;
    for (const auto& [s, e] : m.factors) pt.factors.emplace_back(symbol_name(s), e);
    std::sort(pt.factors.begin(), pt.factors.end());
    pts.push_back(std::move(pt));
  }
  std::sort(pts.begin(), pts.end(), print_term_less);
  std::ostringstream out;
  bool first = true;
  for (const auto& pt : pts) {
    mpq_class c = pt.coef;
    if (first) {
      if (c < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool coef_is_one = (c == 1) && !pt.factors.empty();
    if (!coef_is_one) out << mpq_to_string(c);
    bool need_star = !coef_is_one;
    for (const auto& [name, e] : pt.factors) {
      if (need_star) out << "*";
      out << name;
      if (e > 1) out << "^" << e;
      need_star = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// GCD via primitive subresultant remainder sequences.

namespace {

using UniPoly = std::map<uint32_t, Poly>;  // exponent in the main variable -> coefficient

UniPoly uni_view(const Poly& p, SymbolId v) {
  UniPoly u;
  for (const auto& [m, c] : p.terms()) {
    uint32_t e = m.degree_in(v);
    Monomial rest;
    for (const auto& [s, ee] : m.factors)
      if (s != v) rest.factors.emplace_back(s, ee);
    u[e] += Poly::term(rest, c);
  }
  for (auto it = u.begin(); it != u.end();) {
    if (it->second.is_zero())
      it = u.erase(it);
    else
      ++it;
  }
  return u;
}

Poly from_uni(const UniPoly& u, SymbolId v) {
  Poly p;
  for (const auto& [e, coef] : u) {
    if (e == 0)
      p += coef;
    else
      p += coef.times_monomial(Monomial::var(v, e), 1);
  }
  return p;
}

uint32_t uni_deg(const UniPoly& u) { return u.empty() ? 0 : u.rbegin()->first; }

bool uni_zero(const UniPoly& u) { return u.empty(); }

UniPoly uni_scale(const UniPoly& u, const Poly& c) {
  UniPoly r;
  for (const auto& [e, coef] : u) {
    Poly p = coef * c;
    if (!p.is_zero()) r[e] = std::move(p);
  }
  return r;
}

UniPoly uni_sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r = a;
  for (const auto& [e, coef] : b) {
    auto it = r.find(e);
    if (it == r.end()) {
      r[e] = -coef;
    } else {
      it->second -= coef;
      if (it->second.is_zero()) r.erase(it);
    }
  }
  return r;
}

UniPoly uni_shift(const UniPoly& u, uint32_t k) {
  UniPoly r;
  for (const auto& [e, coef] : u) r[e + k] = coef;
  return r;
}

UniPoly uni_divide_coeffs(const UniPoly& u, const Poly& d) {
  UniPoly r;
  for (const auto& [e, coef] : u) {
    auto q = coef.divide_exact(d);
    if (!q) throw Error("internal: inexact coefficient division in subresultant sequence");
    if (!q->is_zero()) r[e] = std::move(*q);
  }
  return r;
}

// Pseudo-remainder of A by B in the main variable (both as uni views).
UniPoly uni_prem(UniPoly A, const UniPoly& B) {
  uint32_t d = uni_deg(B);
  const Poly& l = B.rbegin()->second;
  if (uni_zero(A)) return A;
  int64_t e = static_cast<int64_t>(uni_deg(A)) - d + 1;
  while (!uni_zero(A) && uni_deg(A) >= d) {
    uint32_t da = uni_deg(A);
    Poly s = A.rbegin()->second;
    A = uni_sub(uni_scale(A, l), uni_shift(uni_scale(B, s), da - d));
    if (!uni_zero(A) && uni_deg(A) >= da)
      throw Error("internal: pseudo-remainder failed to reduce degree");
    --e;
  }
  if (e > 0) A = uni_scale(A, l.pow(static_cast<uint32_t>(e)));
  return A;
}

Poly primitive_positive(const Poly& p) {
  if (p.is_zero()) return p;
  return p.content_and_primitive().second;
}

Poly primitive_gcd(const Poly& A, const Poly& B);

// GCD of the coefficient list of a uni view (the content w.r.t. the main
// variable).
Poly uni_content(const UniPoly& u) {
  Poly g;
  for (const auto& [e, coef] : u) {
    g = g.is_zero() ? primitive_positive(coef) : primitive_gcd(g, coef);
    if (g.is_one()) break;
  }
  return g;
}

Poly primitive_gcd(const Poly& A, const Poly& B) {
  if (A.is_zero()) return primitive_positive(B);
  if (B.is_zero()) return primitive_positive(A);
  if (A.is_constant() || B.is_constant()) return Poly::constant(1);
  if (A == B) return primitive_positive(A);

  // Common monomial factor, handled cheaply up front.
  Monomial ma = A.terms()[0].first, mb = B.terms()[0].first;
  for (const auto& [m, c] : A.terms()) ma = ma.gcd(m);
  for (const auto& [m, c] : B.terms()) mb = mb.gcd(m);
  Monomial mg = ma.gcd(mb);
  if (!ma.is_one() || !mb.is_one()) {
    Poly A2 = *A.divide_exact(Poly::term(ma, 1));
    Poly B2 = *B.divide_exact(Poly::term(mb, 1));
    Poly core = primitive_gcd(A2, B2);
    return primitive_positive(core * Poly::term(mg, 1));
  }

  std::set<SymbolId> sa, sb;
  A.collect_symbols(sa);
  B.collect_symbols(sb);
  std::vector<SymbolId> common;
  for (SymbolId s : sa)
    if (sb.count(s)) common.push_back(s);
  if (common.empty()) return Poly::constant(1);

  SymbolId v = common[0];
  uint64_t best = UINT64_MAX;
  for (SymbolId s : common) {
    uint64_t da = A.degree_in(s), db = B.degree_in(s);
    uint64_t score = std::min(da, db) * 1000000 + da + db;
    if (score < best) {
      best = score;
      v = s;
    }
  }

  UniPoly ua = uni_view(A, v), ub = uni_view(B, v);
  Poly contA = uni_content(ua), contB = uni_content(ub);
  Poly cont_g = primitive_gcd(contA, contB);
  UniPoly F = uni_divide_coeffs(ua, contA);
  UniPoly G = uni_divide_coeffs(ub, contB);
  if (uni_deg(F) < uni_deg(G)) std::swap(F, G);

  Poly g = Poly::constant(1), h = Poly::constant(1);
  Poly gcd_pp;
  while (true) {
    uint32_t delta = uni_deg(F) - uni_deg(G);
    UniPoly R = uni_prem(F, G);
    if (uni_zero(R)) {
      Poly W = from_uni(G, v);
      Poly cW = uni_content(G);
      gcd_pp = *W.divide_exact(cW);
      break;
    }
    if (uni_deg(R) == 0) {
      gcd_pp = Poly::constant(1);
      break;
    }
    F = std::move(G);
    Poly divisor = g * h.pow(delta);
    G = uni_divide_coeffs(R, divisor);
    g = F.rbegin() != F.rend() ? F.rbegin()->second : Poly::constant(1);
    if (delta > 0) {
      Poly num = g.pow(delta);
      if (delta > 1) {
        auto q = num.divide_exact(h.pow(delta - 1));
        if (!q) throw Error("internal: subresultant h-update failed");
        h = *q;
      } else {
        h = num;
      }
    }
  }
  return primitive_positive(cont_g * gcd_pp);
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  if (a.is_zero()) return primitive_positive(b);
  if (b.is_zero()) return primitive_positive(a);
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  Poly A = primitive_positive(a);
  Poly B = primitive_positive(b);
  return primitive_gcd(A, B);
}

}  // namespace eds::sym
