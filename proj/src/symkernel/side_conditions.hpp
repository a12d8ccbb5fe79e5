#pragma once

#include <set>
#include <string>
#include <vector>

#include "symkernel/rational_expr.hpp"

namespace eds::sym {

// Set of polynomials assumed nonzero (pivots, inverted leading coefficients,
// denominators). Entries are canonicalized to their primitive integer form
// with positive leading coefficient; constants are dropped.
class SideConditionSet {
public:
  void assume_nonzero(const Poly& p);
  void assume_nonzero(const RationalExpr& e);  // records num and den
  void merge(const SideConditionSet& o);

  bool empty() const { return conds_.empty(); }
  std::size_t size() const { return conds_.size(); }
  const std::set<Poly, PolyLess>& entries() const { return conds_; }

  // Checks membership up to canonicalization.
  bool contains(const Poly& p) const;

  std::vector<std::string> to_strings() const;  // each "<poly> != 0"

private:
  std::set<Poly, PolyLess> conds_;
};

}  // namespace eds::sym
