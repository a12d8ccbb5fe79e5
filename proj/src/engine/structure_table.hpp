#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace eds::eng {

// One summand coef * left /\ right of a structure equation right side.
struct StructureTerm {
  mpq_class coef;
  std::string left, right;
};

using StructureRule = std::vector<StructureTerm>;

// Maurer-Cartan structure equations of the contact symmetry pseudo-group of
// the second heavenly equation, written over sixty basis 1-forms: forty with
// a registered rule and twenty free forms that absorb the prolongation
// freedom. Every coefficient is a rational constant.
//
// Ruled forms, canonical order:
//   th0, th1..th4, xi1..xi4,
//   th11, th12, th13, th14, th22, th23, th33, th34, th44,
//   eta1..eta22.
// Free forms: eta23..eta42. The second-order block carries no th24: that
// slot is not independent on the equation manifold.
const std::vector<std::string>& ruled_form_names();
const std::vector<std::string>& free_form_names();

// Rule for d of each ruled form, keyed by name. The zero rule (eta5) is an
// empty vector.
const std::map<std::string, StructureRule>& structure_rules();

}  // namespace eds::eng
