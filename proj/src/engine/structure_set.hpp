#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "engine/structure_table.hpp"
#include "exterior/form.hpp"

namespace eds::eng {

// The structure equations as a formal exterior system: one basis 1-form per
// table name (forty with a registered d-rule, twenty free), constant
// coefficients, no scalar coordinates.
class StructureSet {
public:
  StructureSet() : StructureSet(structure_rules()) {}
  explicit StructureSet(std::map<std::string, StructureRule> rules);

  const ext::ContextPtr& context() const { return ctx_; }
  ext::Form basis_form(const std::string& name) const;
  // The registered rule d(name) as a 2-form.
  ext::Form d_form(const std::string& name) const;

  // d^2 consistency of one rule. Rules that reference only ruled forms are
  // checked exactly ("full"); rules that bring in free forms are checked
  // after dropping the unknown-differential slot monomials, modulo the ideal
  // spanned by the partner 1-forms of those free terms ("partial mod <...>").
  struct ClosureCheck {
    std::string name;  // "d2(th0)", ...
    std::string mode;  // "full" or "partial mod <xi1,...>"
    bool pass = false;
    std::size_t residual_terms = 0;
  };
  ClosureCheck closure_check(const std::string& name) const;
  std::vector<ClosureCheck> closure_all() const;

  // Names of rules whose right side references the given form.
  std::vector<std::string> rules_mentioning(const std::string& name) const;

  const std::map<std::string, StructureRule>& rules() const { return rules_; }

private:
  ext::ContextPtr ctx_;
  std::map<std::string, StructureRule> rules_;
};

// Builds the rule 2-form over any context that has all referenced names.
ext::Form rule_to_form(const ext::ContextPtr& ctx, const StructureRule& rule);

// Reduced Cartan characters and prolongation dimension of the tableau read
// off the free-form terms of d(eta7)..d(eta22).
struct CartanReport {
  std::array<std::size_t, 4> characters{};  // s'_1..s'_4
  std::size_t prolongation_dim = 0;         // solution space of the symmetry-paired system
  bool involutive = false;                  // Cartan test against the characters
  int draws_used = 0;                       // covector draws consumed
};

CartanReport cartan_characters(uint64_t seed);

// The tableau itself: one row per eta7..eta22, entry [i] the free-form index
// (23..42) attached to xi^{i+1}, or nullopt where the rule has no free term.
std::vector<std::array<std::optional<int>, 4>> structure_tableau();

}  // namespace eds::eng
