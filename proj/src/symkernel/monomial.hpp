#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "symkernel/symbol.hpp"

namespace eds::sym {

// Sparse power product: factors sorted by symbol id, exponents positive.
struct Monomial {
  std::vector<std::pair<SymbolId, uint32_t>> factors;

  static Monomial one() { return Monomial{}; }
  static Monomial var(SymbolId s, uint32_t e = 1) {
    Monomial m;
    if (e > 0) m.factors.emplace_back(s, e);
    return m;
  }

  bool is_one() const { return factors.empty(); }

  uint64_t total_degree() const {
    uint64_t d = 0;
    for (const auto& [s, e] : factors) d += e;
    return d;
  }

  uint32_t degree_in(SymbolId s) const {
    for (const auto& [sym, e] : factors)
      if (sym == s) return e;
    return 0;
  }

  bool contains(SymbolId s) const { return degree_in(s) > 0; }

  Monomial operator*(const Monomial& o) const;

  // Exact quotient; nullopt when some exponent would go negative.
  std::optional<Monomial> divide(const Monomial& o) const;

  Monomial gcd(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return factors == o.factors; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

// Graded lexicographic: total degree first, then, among the variables in id
// order, the monomial with the higher exponent at the first differing
// variable is the larger one (smaller ids rank as earlier variables).
int grlex_compare(const Monomial& a, const Monomial& b);

struct MonomialGrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return grlex_compare(a, b) > 0;
  }
};

}  // namespace eds::sym
