#include "exterior/coframe_context.hpp"

#include "exterior/form.hpp"
#include "symkernel/errors.hpp"
#include "symkernel/symbol.hpp"

namespace eds::ext {

using sym::kNoSymbol;
using sym::symbol_name;

BasisId CoframeContext::add_coordinate(SymbolId coord) {
  std::string name = "d(" + symbol_name(coord) + ")";
  if (by_name_.count(name)) throw Error("duplicate basis form " + name);
  if (coord_basis_.count(coord))
    throw Error("coordinate " + symbol_name(coord) + " already has a differential");
  BasisId id = static_cast<BasisId>(names_.size());
  names_.push_back(name);
  kinds_.push_back(BasisKind::CoordDiff);
  coord_syms_.push_back(coord);
  by_name_.emplace(name, id);
  coord_basis_.emplace(coord, id);
  return id;
}

BasisId CoframeContext::add_formal(const std::string& name) {
  if (by_name_.count(name)) throw Error("duplicate basis form " + name);
  BasisId id = static_cast<BasisId>(names_.size());
  names_.push_back(name);
  kinds_.push_back(BasisKind::Formal);
  coord_syms_.push_back(kNoSymbol);
  by_name_.emplace(name, id);
  return id;
}

BasisId CoframeContext::add_free(const std::string& name) {
  if (by_name_.count(name)) throw Error("duplicate basis form " + name);
  BasisId id = static_cast<BasisId>(names_.size());
  names_.push_back(name);
  kinds_.push_back(BasisKind::Free);
  coord_syms_.push_back(kNoSymbol);
  by_name_.emplace(name, id);
  return id;
}

void CoframeContext::set_d_rule(BasisId id, const Form& rule) {
  if (id >= names_.size()) throw Error("basis id out of range");
  if (kinds_[id] != BasisKind::Formal)
    throw Error("d-rule can only be attached to a formal basis form (" + names_[id] + ")");
  if (!rule.is_zero() && rule.degree() != 2)
    throw Error("d-rule for " + names_[id] + " must be a 2-form");
  d_rules_[id] = std::make_shared<const Form>(rule);
}

void CoframeContext::set_symbol_differential(SymbolId s, const Form& d) {
  if (coord_basis_.count(s))
    throw Error("symbol " + symbol_name(s) + " is a coordinate; its differential is fixed");
  if (!d.is_zero() && d.degree() != 1)
    throw Error("symbol differential for " + symbol_name(s) + " must be a 1-form");
  symbol_d_[s] = std::make_shared<const Form>(d);
  constant_syms_.erase(s);
}

void CoframeContext::set_constant_symbol(SymbolId s) {
  if (coord_basis_.count(s))
    throw Error("symbol " + symbol_name(s) + " is a coordinate; it cannot be constant");
  constant_syms_[s] = true;
}

const std::string& CoframeContext::basis_name(BasisId id) const {
  if (id >= names_.size()) throw Error("basis id out of range");
  return names_[id];
}

BasisKind CoframeContext::basis_kind(BasisId id) const {
  if (id >= names_.size()) throw Error("basis id out of range");
  return kinds_[id];
}

std::optional<BasisId> CoframeContext::find_basis(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<BasisId> CoframeContext::coordinate_basis(SymbolId s) const {
  auto it = coord_basis_.find(s);
  if (it == coord_basis_.end()) return std::nullopt;
  return it->second;
}

SymbolId CoframeContext::coordinate_symbol(BasisId id) const {
  if (id >= names_.size()) throw Error("basis id out of range");
  return coord_syms_[id];
}

bool CoframeContext::has_d_rule(BasisId id) const { return d_rules_.count(id) > 0; }

const Form& CoframeContext::d_rule(BasisId id) const {
  auto it = d_rules_.find(id);
  if (it == d_rules_.end())
    throw MissingDifferential("no structure rule for " + basis_name(id));
  return *it->second;
}

bool CoframeContext::knows_symbol_differential(SymbolId s) const {
  return coord_basis_.count(s) > 0 || symbol_d_.count(s) > 0 || constant_syms_.count(s) > 0;
}

bool CoframeContext::symbol_is_constant(SymbolId s) const {
  return constant_syms_.count(s) > 0;
}

Form CoframeContext::symbol_differential(SymbolId s) const {
  auto cb = coord_basis_.find(s);
  if (cb != coord_basis_.end()) return Form::basis(shared_from_this(), cb->second);
  auto sd = symbol_d_.find(s);
  if (sd != symbol_d_.end()) return *sd->second;
  if (constant_syms_.count(s)) return Form(shared_from_this(), 1);
  throw MissingDifferential("no differential registered for symbol " + symbol_name(s));
}

}  // namespace eds::ext
