#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "symkernel/side_conditions.hpp"

namespace eds::sym {

// Affine system over the rational-function field: each equation is a
// RationalExpr that must be degree <= 1 overall in the unknown symbols (no
// unknown may appear in a denominator, and no term may contain two unknown
// factors).
struct LinearSystem {
  std::vector<SymbolId> unknowns;
  std::vector<RationalExpr> equations;
};

struct LinearSolution {
  enum class Kind { Unique, Parametric, Inconsistent };
  Kind kind = Kind::Unique;

  // Solved unknowns, expressed over parameters and (for Parametric) the free
  // unknowns. Present for Unique/Parametric.
  std::vector<std::pair<SymbolId, RationalExpr>> assignment;
  std::vector<SymbolId> free_unknowns;

  // Nonvanishing assumptions made while pivoting.
  SideConditionSet side;

  // For Inconsistent: multipliers m_i over the original equations with
  // sum_i m_i * eq_i == certificate_value, a nonzero unknown-free expression.
  std::vector<std::pair<std::size_t, RationalExpr>> certificate;
  RationalExpr certificate_value;

  // Returns the assignment with free unknowns sent to zero.
  std::map<SymbolId, RationalExpr> canonical_assignment() const;
};

LinearSolution solve_linear(const LinearSystem& system);

}  // namespace eds::sym
