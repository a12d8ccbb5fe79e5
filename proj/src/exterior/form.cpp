#include "exterior/form.hpp"

#include <algorithm>
#include <sstream>

#include "symkernel/errors.hpp"
#include "symkernel/symbol.hpp"

namespace eds::ext {

using sym::symbol_name;

namespace {

// Sorts ids in place, counting transpositions; returns false on a repeated id.
bool sort_counting_sign(std::vector<BasisId>& v, int& sign) {
  sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i) {
    BasisId key = v[i];
    std::size_t j = i;
    while (j > 0 && v[j - 1] > key) {
      v[j] = v[j - 1];
      --j;
      sign = -sign;
    }
    v[j] = key;
    if (j > 0 && v[j - 1] == key) return false;
  }
  return true;
}

// Merges two strictly increasing lists; returns false on a common id,
// otherwise fills `merged` and the sign of the shuffle permutation.
bool merge_counting_sign(const std::vector<BasisId>& a, const std::vector<BasisId>& b,
                         std::vector<BasisId>& merged, int& sign) {
  merged.clear();
  merged.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  long inversions = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      merged.push_back(a[i++]);
    } else if (a[i] > b[j]) {
      inversions += static_cast<long>(a.size() - i);
      merged.push_back(b[j++]);
    } else {
      return false;
    }
  }
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  sign = (inversions % 2 == 0) ? 1 : -1;
  return true;
}

}  // namespace

Form Form::scalar(ContextPtr ctx, const RationalExpr& c) {
  Form f(std::move(ctx), 0);
  f.insert_term(WedgeMono{}, c);
  return f;
}

Form Form::basis(ContextPtr ctx, BasisId id) {
  if (!ctx || id >= ctx->basis_size()) throw Error("basis id out of range");
  Form f(std::move(ctx), 1);
  f.insert_term(WedgeMono{{id}, {}}, RationalExpr(1));
  return f;
}

Form Form::monomial(ContextPtr ctx, const WedgeMono& m, const RationalExpr& c) {
  WedgeMono canon = m;
  int sign = 1;
  if (!sort_counting_sign(canon.oneforms, sign)) {
    Form z(std::move(ctx), m.degree());
    return z;
  }
  std::sort(canon.slots.begin(), canon.slots.end());
  Form f(std::move(ctx), canon.degree());
  f.insert_term(canon, sign == 1 ? c : -c);
  return f;
}

RationalExpr Form::coefficient(const WedgeMono& m) const {
  auto it = comps_.find(m);
  if (it == comps_.end()) return RationalExpr();
  return it->second;
}

RationalExpr Form::coefficient(BasisId b) const {
  return coefficient(WedgeMono{{b}, {}});
}

bool Form::has_slots() const {
  for (const auto& [m, c] : comps_)
    if (m.has_slots()) return true;
  return false;
}

Form Form::operator-() const {
  Form r(ctx_, degree_);
  for (const auto& [m, c] : comps_) r.comps_.emplace(m, -c);
  return r;
}

Form Form::operator+(const Form& o) const {
  if (o.is_zero()) return is_zero() && !ctx_ && o.ctx_ ? o : *this;
  if (is_zero()) return o;
  if (ctx_.get() != o.ctx_.get()) throw Error("form context mismatch in +");
  if (degree_ != o.degree_) throw Error("degree mismatch in form addition");
  Form r = *this;
  for (const auto& [m, c] : o.comps_) r.insert_term(m, c);
  return r;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::scaled(const RationalExpr& c) const {
  Form r(ctx_, degree_);
  if (c.is_zero()) return r;
  for (const auto& [m, k] : comps_) r.comps_.emplace(m, k * c);
  return r;
}

Form Form::wedge(const Form& o) const {
  ContextPtr ctx = ctx_ ? ctx_ : o.ctx_;
  if (ctx_ && o.ctx_ && ctx_.get() != o.ctx_.get())
    throw Error("form context mismatch in wedge");
  Form r(ctx, degree_ + o.degree_);
  if (is_zero() || o.is_zero()) return r;
  std::vector<BasisId> merged;
  for (const auto& [ma, ca] : comps_) {
    for (const auto& [mb, cb] : o.comps_) {
      int sign = 1;
      if (!merge_counting_sign(ma.oneforms, mb.oneforms, merged, sign)) continue;
      WedgeMono m;
      m.oneforms = merged;
      m.slots.reserve(ma.slots.size() + mb.slots.size());
      std::merge(ma.slots.begin(), ma.slots.end(), mb.slots.begin(), mb.slots.end(),
                 std::back_inserter(m.slots));
      RationalExpr c = ca * cb;
      r.insert_term(m, sign == 1 ? c : -c);
    }
  }
  return r;
}

bool Form::operator==(const Form& o) const {
  if (comps_.size() != o.comps_.size()) return false;
  auto it = comps_.begin();
  auto jt = o.comps_.begin();
  for (; it != comps_.end(); ++it, ++jt) {
    if (!(it->first == jt->first)) return false;
    if (RationalExpr::compare(it->second, jt->second) != 0) return false;
  }
  return true;
}

Form Form::ext_d(DMode mode) const {
  Form r(ctx_, degree_ + 1);
  if (is_zero()) return r;
  if (!ctx_) throw Error("ext_d on a form without context");

  std::set<std::string> blockers;
  for (const auto& [m, c] : comps_) {
    for (BasisId e : m.oneforms) {
      BasisKind k = ctx_->basis_kind(e);
      if (k == BasisKind::Free || (k == BasisKind::Formal && !ctx_->has_d_rule(e)))
        if (mode == DMode::Full) blockers.insert("d(" + ctx_->basis_name(e) + ")");
    }
    std::set<SymbolId> syms;
    c.collect_symbols(syms);
    for (SymbolId s : syms) {
      if (ctx_->knows_symbol_differential(s)) continue;
      if (c.derivative(s).is_zero()) continue;
      blockers.insert("d(" + symbol_name(s) + ")");
    }
  }
  if (!blockers.empty()) {
    std::string msg = "exterior derivative needs unknown differentials:";
    for (const auto& b : blockers) msg += " " + b;
    throw MissingDifferential(msg);
  }

  for (const auto& [m, c] : comps_) {
    // d(coefficient) ∧ monomial
    Form dc = d_scalar(ctx_, c);
    if (!dc.is_zero()) r += dc.wedge(Form::monomial(ctx_, m, RationalExpr(1)));

    // Σ_k (−1)^k c · d(e_k) ∧ (m ∖ e_k), k zero-based
    for (std::size_t k = 0; k < m.oneforms.size(); ++k) {
      BasisId e = m.oneforms[k];
      BasisKind kind = ctx_->basis_kind(e);
      Form de;
      if (kind == BasisKind::CoordDiff) {
        continue;
      } else if (kind == BasisKind::Formal && ctx_->has_d_rule(e)) {
        de = ctx_->d_rule(e);
      } else {
        // partial mode: the unknown differential becomes a slot
        WedgeMono slot;
        slot.slots.push_back(e);
        de = Form::monomial(ctx_, slot, RationalExpr(1));
      }
      if (de.is_zero()) continue;
      WedgeMono rest = m;
      rest.oneforms.erase(rest.oneforms.begin() + static_cast<long>(k));
      RationalExpr coef = (k % 2 == 0) ? c : -c;
      r += de.wedge(Form::monomial(ctx_, rest, coef));
    }
    // slots carry unknown differentials; d(slot) contributes nothing new
  }
  return r;
}

Form Form::project_dropping(const std::set<BasisId>& dropped) const {
  Form r(ctx_, degree_);
  for (const auto& [m, c] : comps_) {
    if (m.has_slots()) continue;
    bool keep = true;
    for (BasisId e : m.oneforms)
      if (dropped.count(e)) {
        keep = false;
        break;
      }
    if (keep) r.comps_.emplace(m, c);
  }
  return r;
}

Form Form::project_keeping(const std::set<BasisId>& kept) const {
  Form r(ctx_, degree_);
  for (const auto& [m, c] : comps_) {
    if (m.has_slots()) continue;
    bool keep = true;
    for (BasisId e : m.oneforms)
      if (!kept.count(e)) {
        keep = false;
        break;
      }
    if (keep) r.comps_.emplace(m, c);
  }
  return r;
}

std::set<SymbolId> Form::coefficient_symbols() const {
  std::set<SymbolId> out;
  for (const auto& [m, c] : comps_) c.collect_symbols(out);
  return out;
}

void Form::collect_basis_usage(std::set<BasisId>& out) const {
  for (const auto& [m, c] : comps_) {
    for (BasisId e : m.oneforms) out.insert(e);
    for (BasisId e : m.slots) out.insert(e);
  }
}

std::string Form::to_string() const {
  if (is_zero()) return "0";
  struct PrintTerm {
    std::vector<std::string> slot_names;
    std::vector<std::string> form_names;
    std::string coef;
  };
  std::vector<PrintTerm> terms;
  terms.reserve(comps_.size());
  for (const auto& [m, c] : comps_) {
    PrintTerm t;
    for (BasisId e : m.slots) t.slot_names.push_back(ctx_->basis_name(e));
    for (BasisId e : m.oneforms) t.form_names.push_back(ctx_->basis_name(e));
    t.coef = c.to_string();
    terms.push_back(std::move(t));
  }
  std::sort(terms.begin(), terms.end(), [](const PrintTerm& a, const PrintTerm& b) {
    if (a.slot_names != b.slot_names) return a.slot_names < b.slot_names;
    if (a.form_names != b.form_names) return a.form_names < b.form_names;
    return a.coef < b.coef;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    bool needs_parens = t.coef.find(" + ") != std::string::npos ||
                        t.coef.find(" - ") != std::string::npos;
    if (t.slot_names.empty() && t.form_names.empty()) {
      os << t.coef;
      continue;
    }
    if (t.coef == "1") {
      // coefficient omitted
    } else if (needs_parens) {
      os << "(" << t.coef << ")*";
    } else {
      os << t.coef << "*";
    }
    bool first_factor = true;
    for (const auto& s : t.slot_names) {
      if (!first_factor) os << "/\\";
      first_factor = false;
      os << "d[" << s << "]";
    }
    for (const auto& n : t.form_names) {
      if (!first_factor) os << "/\\";
      first_factor = false;
      os << n;
    }
  }
  return os.str();
}

Form Form::substitute_scalars(const Form& f, const std::map<SymbolId, RationalExpr>& bindings) {
  Form r(f.ctx_, f.degree_);
  for (const auto& [m, c] : f.comps_) r.insert_term(m, c.substituted(bindings));
  return r;
}

void Form::insert_term(const WedgeMono& m, const RationalExpr& c) {
  if (c.is_zero()) return;
  if (m.degree() != degree_) throw Error("monomial degree mismatch in form");
  auto [it, fresh] = comps_.emplace(m, c);
  if (!fresh) {
    it->second = it->second + c;
    if (it->second.is_zero()) comps_.erase(it);
  }
}

Form d_scalar(const ContextPtr& ctx, const RationalExpr& c) {
  Form out(ctx, 1);
  std::set<SymbolId> syms;
  c.collect_symbols(syms);
  for (SymbolId s : syms) {
    if (ctx->symbol_is_constant(s)) continue;
    RationalExpr dc = c.derivative(s);
    if (dc.is_zero()) continue;
    out += ctx->symbol_differential(s).scaled(dc);
  }
  return out;
}

Form pullback(const Form& f, const PullbackBindings& b) {
  if (!b.target) throw Error("pullback needs a target context");
  Form r(b.target, f.degree());
  for (const auto& [m, c] : f.components()) {
    if (m.has_slots()) throw Error("cannot pull back a form with unknown-differential slots");
    Form acc = Form::scalar(b.target, c.substituted(b.scalars));
    for (BasisId e : m.oneforms) {
      auto it = b.forms.find(e);
      if (it == b.forms.end())
        throw Error("pullback lacks a binding for " + f.context()->basis_name(e));
      acc = acc.wedge(it->second);
    }
    r += acc;
  }
  return r;
}

IdealBasis triangularize_ideal(const std::vector<Form>& gens) {
  IdealBasis out;
  if (gens.empty()) return out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero())
      throw DegenerateGenerators("ideal generator " + std::to_string(i) + " is zero");
    if (gens[i].degree() != 1)
      throw DegenerateGenerators("ideal generator " + std::to_string(i) + " is not a 1-form");
    if (gens[i].has_slots())
      throw DegenerateGenerators("ideal generator " + std::to_string(i) +
                                 " carries unknown differentials");
  }
  ContextPtr ctx = gens.front().context();

  for (std::size_t idx = 0; idx < gens.size(); ++idx) {
    Form g = gens[idx];
    for (std::size_t i = 0; i < out.gens.size(); ++i) {
      RationalExpr c = g.coefficient(out.pivots[i]);
      if (!c.is_zero()) g -= out.gens[i].scaled(c);
    }
    if (g.is_zero()) {
      std::string msg = "ideal generator " + std::to_string(idx) +
                        " is a combination of the preceding ones (pivots so far:";
      for (BasisId p : out.pivots) msg += " " + ctx->basis_name(p);
      msg += ")";
      throw DegenerateGenerators(msg);
    }
    // pivot choice: a constant coefficient if available, else the cheapest
    bool found = false;
    BasisId pivot = 0;
    RationalExpr pivot_coef;
    std::size_t best_cost = 0;
    for (const auto& [m, c] : g.components()) {
      BasisId e = m.oneforms.front();
      if (c.is_constant()) {
        pivot = e;
        pivot_coef = c;
        found = true;
        best_cost = 0;
        break;
      }
      std::size_t cost = c.num().terms().size() + c.den().terms().size();
      if (!found || cost < best_cost) {
        pivot = e;
        pivot_coef = c;
        best_cost = cost;
        found = true;
      }
    }
    if (!pivot_coef.is_constant()) out.side.assume_nonzero(pivot_coef);
    g = g.scaled(pivot_coef.inverse());
    for (std::size_t i = 0; i < out.gens.size(); ++i) {
      RationalExpr c = out.gens[i].coefficient(pivot);
      if (!c.is_zero()) out.gens[i] -= g.scaled(c);
    }
    out.gens.push_back(g);
    out.pivots.push_back(pivot);
  }
  return out;
}

Form reduce_mod_ideal(const Form& f, const IdealBasis& basis) {
  Form r = f;
  if (r.is_zero()) return r;
  ContextPtr ctx = r.context();
  for (std::size_t i = 0; i < basis.gens.size(); ++i) {
    BasisId p = basis.pivots[i];
    Form tail = basis.gens[i] - Form::basis(ctx, p);
    Form out(ctx, r.degree());
    for (const auto& [m, c] : r.components()) {
      auto pos = std::find(m.oneforms.begin(), m.oneforms.end(), p);
      if (pos == m.oneforms.end()) {
        out += Form::monomial(ctx, m, c);
        continue;
      }
      if (tail.is_zero()) continue;
      std::size_t k = static_cast<std::size_t>(pos - m.oneforms.begin());
      WedgeMono rest = m;
      rest.oneforms.erase(rest.oneforms.begin() + static_cast<long>(k));
      // e_0∧…∧p∧…  ≡  (−1)^{k+1} tail ∧ rest  (mod ideal), k zero-based
      RationalExpr coef = (k % 2 == 0) ? -c : c;
      out += tail.wedge(Form::monomial(ctx, rest, coef));
    }
    r = out;
  }
  return r;
}

bool in_ideal_wedge_test(const Form& f, const std::vector<Form>& gens) {
  Form w = f;
  for (const Form& g : gens) {
    if (w.is_zero()) return true;
    w = w.wedge(g);
  }
  return w.is_zero();
}

SlotSplit split_slots(const Form& f) {
  ContextPtr ctx = f.context();
  SlotSplit out;
  out.rest = Form(ctx, f.degree());
  for (const auto& [m, c] : f.components()) {
    if (m.slots.empty()) {
      out.rest += Form::monomial(ctx, m, c);
      continue;
    }
    if (m.slots.size() > 1)
      throw Error("split_slots: monomial carries " + std::to_string(m.slots.size()) + " slots");
    BasisId s = m.slots.front();
    auto [it, fresh] = out.cofactors.try_emplace(s, Form(ctx, f.degree() - 2));
    WedgeMono rest{m.oneforms, {}};
    it->second += Form::monomial(ctx, rest, c);
  }
  return out;
}

Form substitute_slots(const Form& f, const std::map<BasisId, Form>& bindings) {
  ContextPtr ctx = f.context();
  Form out(ctx, f.degree());
  for (const auto& [m, c] : f.components()) {
    Form t = Form::monomial(ctx, WedgeMono{m.oneforms, {}}, c);
    for (BasisId s : m.slots) {
      auto it = bindings.find(s);
      if (it == bindings.end())
        throw MissingDifferential("substitute_slots: no binding for the differential of " +
                                  ctx->basis_name(s));
      if (it->second.degree() != 2 || it->second.has_slots())
        throw Error("substitute_slots: binding for " + ctx->basis_name(s) +
                    " is not a slot-free 2-form");
      // Slots have even degree, so the substituted factor commutes into place.
      t = it->second.wedge(t);
    }
    out += t;
  }
  return out;
}

OneformDivision divide_by_oneform(const Form& f, const Form& alpha) {
  if (alpha.is_zero() || alpha.degree() != 1)
    throw DegenerateGenerators("divide_by_oneform needs a nonzero 1-form divisor");
  if (alpha.has_slots() || f.has_slots())
    throw Error("divide_by_oneform does not handle unknown-differential slots");
  ContextPtr ctx = f.context();

  // Pivot: a constant coefficient if available, else the cheapest nonzero.
  bool found = false;
  BasisId pivot = 0;
  RationalExpr pivot_coef;
  std::size_t best_cost = 0;
  for (const auto& [m, c] : alpha.components()) {
    BasisId e = m.oneforms.front();
    if (c.is_constant()) {
      pivot = e;
      pivot_coef = c;
      found = true;
      break;
    }
    std::size_t cost = c.num().terms().size() + c.den().terms().size();
    if (!found || cost < best_cost) {
      pivot = e;
      pivot_coef = c;
      best_cost = cost;
      found = true;
    }
  }
  OneformDivision out;
  out.pivot = pivot;
  if (!pivot_coef.is_constant()) out.side.assume_nonzero(pivot_coef);

  out.quotient = Form(ctx, f.degree() - 1);
  Form r = f;
  for (;;) {
    // Smallest remaining monomial containing the pivot.
    const WedgeMono* mono = nullptr;
    RationalExpr coef;
    for (const auto& [m, c] : r.components()) {
      if (m.contains(pivot)) {
        mono = &m;
        coef = c;
        break;
      }
    }
    if (!mono) break;
    auto pos = std::find(mono->oneforms.begin(), mono->oneforms.end(), pivot);
    std::size_t k = static_cast<std::size_t>(pos - mono->oneforms.begin());
    WedgeMono rest = *mono;
    rest.oneforms.erase(rest.oneforms.begin() + static_cast<long>(k));
    // mono == (−1)^k pivot ∧ rest
    RationalExpr q = coef / pivot_coef;
    if (k % 2 == 1) q = -q;
    Form piece = Form::monomial(ctx, rest, q);
    out.quotient += piece;
    r -= alpha.wedge(piece);
  }
  out.remainder = r;

  if (f != alpha.wedge(out.quotient) + out.remainder)
    throw Error("divide_by_oneform identity check failed");
  bool member = out.remainder.is_zero();
  if (member != in_ideal_wedge_test(f, {alpha}))
    throw Error("divide_by_oneform disagrees with the wedge-out membership test");
  return out;
}

}  // namespace eds::ext
