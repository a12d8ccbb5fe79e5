#include "symkernel/side_conditions.hpp"

#include "symkernel/errors.hpp"

namespace eds::sym {

namespace {

Poly canonical(const Poly& p) {
  if (p.is_zero()) throw Error("side condition on the zero polynomial");
  return p.content_and_primitive().second;
}

}  // namespace

void SideConditionSet::assume_nonzero(const Poly& p) {
  Poly c = canonical(p);
  if (c.is_constant()) return;
  conds_.insert(std::move(c));
}

void SideConditionSet::assume_nonzero(const RationalExpr& e) {
  assume_nonzero(e.num());
  assume_nonzero(e.den());
}

void SideConditionSet::merge(const SideConditionSet& o) {
  for (const Poly& p : o.conds_) conds_.insert(p);
}

bool SideConditionSet::contains(const Poly& p) const {
  if (p.is_zero()) return false;
  Poly c = canonical(p);
  if (c.is_constant()) return true;
  return conds_.count(c) > 0;
}

std::vector<std::string> SideConditionSet::to_strings() const {
  std::vector<std::string> out;
  std::set<std::string> sorted;
  for (const Poly& p : conds_) sorted.insert(p.to_string());
  for (const std::string& s : sorted) out.push_back(s + " != 0");
  return out;
}

}  // namespace eds::sym
