#include "symkernel/monomial.hpp"

namespace eds::sym {

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors.reserve(factors.size() + o.factors.size());
  std::size_t i = 0, j = 0;
  while (i < factors.size() && j < o.factors.size()) {
    if (factors[i].first == o.factors[j].first) {
      r.factors.emplace_back(factors[i].first, factors[i].second + o.factors[j].second);
      ++i;
      ++j;
    } else if (factors[i].first < o.factors[j].first) {
      r.factors.push_back(factors[i++]);
    } else {
      r.factors.push_back(o.factors[j++]);
    }
  }
  while (i < factors.size()) r.factors.push_back(factors[i++]);
  while (j < o.factors.size()) r.factors.push_back(o.factors[j++]);
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (j < o.factors.size()) {
    if (i >= factors.size()) return std::nullopt;
    if (factors[i].first < o.factors[j].first) {
      r.factors.push_back(factors[i++]);
    } else if (factors[i].first == o.factors[j].first) {
      if (factors[i].second < o.factors[j].second) return std::nullopt;
      uint32_t e = factors[i].second - o.factors[j].second;
      if (e > 0) r.factors.emplace_back(factors[i].first, e);
      ++i;
      ++j;
    } else {
      return std::nullopt;
    }
  }
  while (i < factors.size()) r.factors.push_back(factors[i++]);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  std::size_t i = 0, j = 0;
  while (i < factors.size() && j < o.factors.size()) {
    if (factors[i].first == o.factors[j].first) {
      r.factors.emplace_back(factors[i].first,
                             std::min(factors[i].second, o.factors[j].second));
      ++i;
      ++j;
    } else if (factors[i].first < o.factors[j].first) {
      ++i;
    } else {
      ++j;
    }
  }
  return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  uint64_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  std::size_t i = 0, j = 0;
  while (i < a.factors.size() && j < b.factors.size()) {
    if (a.factors[i].first == b.factors[j].first) {
      if (a.factors[i].second != b.factors[j].second)
        return a.factors[i].second < b.factors[j].second ? -1 : 1;
      ++i;
      ++j;
    } else if (a.factors[i].first < b.factors[j].first) {
      // a has a positive exponent on an earlier variable where b has zero
      return 1;
    } else {
      return -1;
    }
  }
  if (i < a.factors.size()) return 1;
  if (j < b.factors.size()) return -1;
  return 0;
}

}  // namespace eds::sym
