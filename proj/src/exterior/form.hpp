#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "exterior/coframe_context.hpp"
#include "symkernel/side_conditions.hpp"

namespace eds::ext {

using sym::SideConditionSet;

// Canonical wedge monomial: strictly increasing basis 1-form ids, plus a
// sorted multiset of "unknown differential" slots (each of degree 2, standing
// for the differential of a free basis form). Slots commute with everything.
struct WedgeMono {
  std::vector<BasisId> oneforms;
  std::vector<BasisId> slots;

  int degree() const {
    return static_cast<int>(oneforms.size()) + 2 * static_cast<int>(slots.size());
  }
  bool has_slots() const { return !slots.empty(); }
  bool contains(BasisId b) const {
    for (BasisId e : oneforms)
      if (e == b) return true;
    return false;
  }
  bool operator<(const WedgeMono& o) const {
    if (slots != o.slots) return slots < o.slots;
    return oneforms < o.oneforms;
  }
  bool operator==(const WedgeMono& o) const {
    return oneforms == o.oneforms && slots == o.slots;
  }
};

// Exterior form with RationalExpr coefficients over a shared basis context.
// Forms are homogeneous; the zero form carries a nominal degree.
class Form {
public:
  Form() : degree_(0) {}
  Form(ContextPtr ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {}

  static Form scalar(ContextPtr ctx, const RationalExpr& c);
  static Form basis(ContextPtr ctx, BasisId id);
  static Form monomial(ContextPtr ctx, const WedgeMono& m, const RationalExpr& c);

  const ContextPtr& context() const { return ctx_; }
  int degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  std::size_t term_count() const { return comps_.size(); }
  const std::map<WedgeMono, RationalExpr>& components() const { return comps_; }

  RationalExpr coefficient(const WedgeMono& m) const;
  // Convenience for 1-forms: coefficient of a single basis form.
  RationalExpr coefficient(BasisId b) const;

  bool has_slots() const;

  Form operator-() const;
  Form operator+(const Form& o) const;
  Form operator-(const Form& o) const;
  Form& operator+=(const Form& o) { return *this = *this + o; }
  Form& operator-=(const Form& o) { return *this = *this - o; }

  Form scaled(const RationalExpr& c) const;
  Form wedge(const Form& o) const;

  bool operator==(const Form& o) const;
  bool operator!=(const Form& o) const { return !(*this == o); }

  // Exterior derivative. In full mode a free basis form (or an unregistered
  // scalar) raises MissingDifferential naming the blockers; in partial mode
  // the unknown differential of a free basis form becomes a slot monomial
  // (unregistered scalars still raise).
  enum class DMode { Full, Partial };
  Form ext_d(DMode mode = DMode::Full) const;

  // Drops every monomial containing a slot or any of the given basis forms.
  Form project_dropping(const std::set<BasisId>& dropped) const;
  // Keeps only monomials all of whose 1-form factors lie in `kept` (and no
  // slots).
  Form project_keeping(const std::set<BasisId>& kept) const;

  std::set<SymbolId> coefficient_symbols() const;
  void collect_basis_usage(std::set<BasisId>& out) const;

  std::string to_string() const;

  static Form substitute_scalars(const Form& f, const std::map<SymbolId, RationalExpr>& bindings);

private:
  void insert_term(const WedgeMono& m, const RationalExpr& c);

  ContextPtr ctx_;
  int degree_ = 0;
  std::map<WedgeMono, RationalExpr> comps_;
};

// d of a scalar coefficient as a 1-form over the context.
Form d_scalar(const ContextPtr& ctx, const RationalExpr& c);

// Pullback bindings: every basis 1-form appearing in the input must be bound
// to a form over the target context; scalar symbols are substituted via the
// scalar map (unbound scalars pass through unchanged).
struct PullbackBindings {
  ContextPtr target;
  std::map<BasisId, Form> forms;
  std::map<SymbolId, RationalExpr> scalars;
};

Form pullback(const Form& f, const PullbackBindings& b);

// Splits a form into its slot-free part plus one cofactor per distinct
// unknown-differential slot: f == rest + sum_s slot_s ∧ cofactors[s].
// Monomials carrying two or more slots are rejected.
struct SlotSplit {
  Form rest;
  std::map<BasisId, Form> cofactors;  // keyed by the free form the slot differentiates
};
SlotSplit split_slots(const Form& f);

// Replaces every unknown-differential slot by the bound explicit 2-form.
// Each slot occurring in f must be bound; bindings must be slot-free 2-forms.
Form substitute_slots(const Form& f, const std::map<BasisId, Form>& bindings);

// Division by a 1-form: f = alpha ∧ quotient + remainder with the remainder
// free of the chosen pivot basis form. The remainder vanishes iff f lies in
// the algebraic ideal <alpha> (cross-checked against the wedge-out test).
struct OneformDivision {
  Form quotient;
  Form remainder;
  BasisId pivot = 0;
  SideConditionSet side;
};
OneformDivision divide_by_oneform(const Form& f, const Form& alpha);

// Triangularized basis of an algebraic ideal of independent 1-forms.
struct IdealBasis {
  std::vector<Form> gens;        // pivot coefficient 1, tails free of pivots
  std::vector<BasisId> pivots;   // parallel to gens
  SideConditionSet side;
};

IdealBasis triangularize_ideal(const std::vector<Form>& gens);

// Canonical representative of f modulo the algebraic ideal spanned by the
// generators; zero iff f lies in the ideal.
Form reduce_mod_ideal(const Form& f, const IdealBasis& basis);

// Wedge-out membership test: f ∧ g_1 ∧ ... ∧ g_k == 0.
bool in_ideal_wedge_test(const Form& f, const std::vector<Form>& gens);

}  // namespace eds::ext
