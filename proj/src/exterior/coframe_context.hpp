#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "symkernel/rational_expr.hpp"

namespace eds::ext {

using sym::RationalExpr;
using sym::SymbolId;

class Form;

enum class BasisKind : uint8_t {
  CoordDiff,  // differential of a chart coordinate; d = 0
  Formal,     // named 1-form with a registered structure rule for d
  Free,       // named 1-form whose differential is unknown
};

using BasisId = uint32_t;

// Registry of basis 1-forms plus the differential data needed by ext_d:
// a 2-form rule per formal basis form, and a 1-form (or constancy flag) per
// scalar symbol appearing in coefficients. Instances are created once per
// computation and shared immutably afterwards (rule installation happens
// during construction phases, before forms flow between threads).
class CoframeContext : public std::enable_shared_from_this<CoframeContext> {
public:
  static std::shared_ptr<CoframeContext> create() {
    return std::shared_ptr<CoframeContext>(new CoframeContext());
  }

  BasisId add_coordinate(SymbolId coord);
  BasisId add_formal(const std::string& name);
  BasisId add_free(const std::string& name);

  void set_d_rule(BasisId id, const Form& rule);
  void set_symbol_differential(SymbolId s, const Form& d);
  void set_constant_symbol(SymbolId s);

  std::size_t basis_size() const { return names_.size(); }
  const std::string& basis_name(BasisId id) const;
  BasisKind basis_kind(BasisId id) const;
  std::optional<BasisId> find_basis(const std::string& name) const;
  std::optional<BasisId> coordinate_basis(SymbolId s) const;
  SymbolId coordinate_symbol(BasisId id) const;  // kNoSymbol for non-coordinate entries

  bool has_d_rule(BasisId id) const;
  const Form& d_rule(BasisId id) const;

  // True when the symbol's differential is known (coordinate, registered
  // rule, or declared constant).
  bool knows_symbol_differential(SymbolId s) const;
  bool symbol_is_constant(SymbolId s) const;
  // 1-form differential of a scalar symbol; throws MissingDifferential for
  // unknown symbols.
  Form symbol_differential(SymbolId s) const;

private:
  CoframeContext() = default;

  std::vector<std::string> names_;
  std::vector<BasisKind> kinds_;
  std::vector<SymbolId> coord_syms_;  // kNoSymbol for formal/free entries
  std::map<std::string, BasisId> by_name_;
  std::map<SymbolId, BasisId> coord_basis_;
  std::map<BasisId, std::shared_ptr<const Form>> d_rules_;
  std::map<SymbolId, std::shared_ptr<const Form>> symbol_d_;
  std::map<SymbolId, bool> constant_syms_;
};

using ContextPtr = std::shared_ptr<const CoframeContext>;

}  // namespace eds::ext
