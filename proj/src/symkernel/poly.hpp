#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "symkernel/monomial.hpp"

namespace eds::sym {

// Sparse multivariate polynomial over Q. Terms are kept sorted in descending
// graded-lex order with nonzero coefficients; the zero polynomial has no
// terms.
class Poly {
public:
  using Term = std::pair<Monomial, mpq_class>;

  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly constant(const mpq_class& c);
  static Poly constant(long n) { return constant(mpq_class(n)); }
  static Poly var(SymbolId s, uint32_t e = 1);
  static Poly term(const Monomial& m, const mpq_class& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  // Constant value; zero polynomial yields 0. Caller checks is_constant.
  const mpq_class& constant_value() const;

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  const Monomial& leading_monomial() const;
  const mpq_class& leading_coefficient() const;

  uint64_t total_degree() const;
  uint32_t degree_in(SymbolId s) const;
  bool contains(SymbolId s) const;
  void collect_symbols(std::set<SymbolId>& out) const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const mpq_class& c) const;
  Poly times_monomial(const Monomial& m, const mpq_class& c) const;
  Poly pow(uint32_t e) const;

  Poly derivative(SymbolId s) const;

  // Substitutes sym -> replacement polynomial everywhere (simultaneous over
  // the given map). Used for jet prolongation; rational substitution lives
  // on RationalExpr.
  Poly substituted(const std::map<SymbolId, Poly>& bindings) const;

  // Exact multivariate division; nullopt when o does not divide this.
  std::optional<Poly> divide_exact(const Poly& o) const;

  // Rational content c and primitive part P with *this == c*P, P having
  // coprime integer coefficients and positive leading coefficient. The zero
  // polynomial returns {0, 0}.
  std::pair<mpq_class, Poly> content_and_primitive() const;

  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Canonical display string; term order is independent of symbol interning
  // order (sorted by degree, then by printed factor names).
  std::string to_string() const;

  // Total order usable as a container comparator (grlex over term lists).
  static int compare(const Poly& a, const Poly& b);

  // Builds from an unsorted/unreduced term list.
  static Poly from_terms(std::vector<Term> terms);

private:
  std::vector<Term> terms_;
};

// GCD in Q[x1..xn], returned primitive over Z with positive leading
// coefficient (1 for coprime inputs; nonzero constants count as units).
Poly poly_gcd(const Poly& a, const Poly& b);

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return Poly::compare(a, b) < 0; }
};

std::string mpq_to_string(const mpq_class& q);

}  // namespace eds::sym
