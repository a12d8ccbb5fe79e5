#include "engine/cie.hpp"

#include <algorithm>
#include <set>

#include "engine/structure_set.hpp"
#include "symkernel/errors.hpp"
#include "symkernel/symbol.hpp"

namespace eds::eng {

using ext::BasisId;
using ext::Form;
using ext::WedgeMono;
using sym::RationalExpr;

namespace {

struct IdClasses {
  std::set<BasisId> th, eta, xi;  // ruled structure forms by prefix
};

IdClasses classify_ids(const ext::ContextPtr& ctx) {
  IdClasses out;
  for (const auto& n : ruled_form_names()) {
    BasisId id = *ctx->find_basis(n);
    if (n[0] == 't')
      out.th.insert(id);
    else if (n[0] == 'x')
      out.xi.insert(id);
    else
      out.eta.insert(id);
  }
  return out;
}

bool ids_within(const Form& f, const std::set<BasisId>& allowed) {
  for (const auto& [m, c] : f.components())
    for (BasisId e : m.oneforms)
      if (!allowed.count(e)) return false;
  return true;
}

bool touches(const Form& f, const std::set<BasisId>& ids) {
  for (const auto& [m, c] : f.components())
    for (BasisId e : m.oneforms)
      if (ids.count(e)) return true;
  return false;
}

RationalExpr scalar_of(const Form& f) {
  if (f.degree() != 0) throw Error("expected a scalar cofactor");
  return f.coefficient(WedgeMono{});
}

CieCandidate build_extension(bool first, const RuleTweak& tweak) {
  auto ctx = ext::CoframeContext::create();
  CieCandidate c;
  c.name = first ? "first extension" : "second extension";
  c.w0 = ctx->add_formal("w0");
  c.w1 = ctx->add_free("w1");
  c.w2 = ctx->add_free("w2");
  for (const auto& n : ruled_form_names()) ctx->add_formal(n);
  for (const auto& n : free_form_names()) ctx->add_free(n);
  ext::ContextPtr view = ctx;
  for (const auto& [n, rule] : structure_rules())
    ctx->set_d_rule(*view->find_basis(n), rule_to_form(view, rule));

  c.W1 = sym::intern_symbol("W1", sym::SymbolKind::Invariant);
  c.W2 = sym::intern_symbol("W2", sym::SymbolKind::Invariant);
  for (int i = 0; i < 4; ++i)
    c.Z[i] = sym::intern_symbol("Z" + std::to_string(i + 1), sym::SymbolKind::Parameter);

  const RationalExpr W1 = RationalExpr::from_symbol(c.W1);
  const RationalExpr W2 = RationalExpr::from_symbol(c.W2);
  const RationalExpr Z1 = RationalExpr::from_symbol(c.Z[0]);
  const RationalExpr Z2 = RationalExpr::from_symbol(c.Z[1]);
  const RationalExpr Z3 = RationalExpr::from_symbol(c.Z[2]);
  const RationalExpr Z4 = RationalExpr::from_symbol(c.Z[3]);
  const RationalExpr third{mpq_class(1, 3)};

  auto B = [&](const char* n) { return Form::basis(view, *view->find_basis(n)); };
  const Form w0 = Form::basis(view, c.w0);
  const Form w1 = Form::basis(view, c.w1);
  const Form w2 = Form::basis(view, c.w2);

  Form pi, om1, om2, dW1, dW2;
  if (first) {
    pi = w1 + B("eta2").scaled(W1) +
         (B("eta5") + B("eta4").scaled(RationalExpr(2)) - B("eta1")).scaled(third);
    om1 = B("th34").scaled(W1) - B("th44") + w2.scaled(W2);
    om2 = B("th33").scaled(W1) - B("th34") + w1.scaled(W2);
    dW1 = w1.scaled(W1) - w2 - B("eta1").scaled(W1) + B("eta2").scaled(W1 * W1) - B("eta3") +
          B("eta4").scaled(W1) + (w0 + B("xi2").scaled(W2) + B("xi3")).scaled(Z1) +
          (B("xi1").scaled(W2) + B("xi4")).scaled(Z2);
    dW2 = B("eta6") - B("th34") + (B("eta5") - B("eta1") - B("eta4")).scaled(W2 * third) +
          (w0 + B("xi2").scaled(W2) + B("xi3")).scaled(Z3) +
          (B("xi1").scaled(W2) + B("xi4").scaled(W1)).scaled(Z4);
  } else {
    pi = w2 + B("eta3").scaled(W1) +
         (B("eta5") + B("eta1").scaled(RationalExpr(2)) - B("eta4")).scaled(third);
    om1 = B("th34") - B("th44").scaled(W1) + w2.scaled(W2);
    om2 = B("th33") - B("th34").scaled(W1) + w1.scaled(W2);
    dW1 = w2.scaled(W1) - w1 + B("eta1").scaled(W1) - B("eta2") + B("eta3").scaled(W1 * W1) -
          B("eta4").scaled(W1) + (w0 + B("xi1").scaled(W2) + B("xi4")).scaled(Z1) +
          (B("xi2").scaled(W2) + B("xi3")).scaled(Z2);
    dW2 = B("eta6") - B("th34") + (B("eta5") - B("eta1") - B("eta4")).scaled(W2 * third) +
          (w0 + B("xi1").scaled(W2) + B("xi4")).scaled(Z3) +
          (B("xi2").scaled(W2) + B("xi3").scaled(W1)).scaled(Z4);
  }
  Form dw0 = pi.wedge(w0) + om1.wedge(B("xi1")) + om2.wedge(B("xi2")) + w1.wedge(B("xi3")) +
             w2.wedge(B("xi4"));

  if (tweak) {
    dw0 = tweak("dw0", dw0);
    dW1 = tweak("dW1", dW1);
    dW2 = tweak("dW2", dW2);
  }

  ctx->set_symbol_differential(c.W1, dW1);
  ctx->set_symbol_differential(c.W2, dW2);
  for (sym::SymbolId z : c.Z) ctx->set_constant_symbol(z);
  ctx->set_d_rule(c.w0, dw0);

  c.ctx = view;
  c.d_w0 = dw0;
  c.d_W1 = dW1;
  c.d_W2 = dW2;
  return c;
}

}  // namespace

CieCandidate first_extension(const RuleTweak& tweak) { return build_extension(true, tweak); }
CieCandidate second_extension(const RuleTweak& tweak) { return build_extension(false, tweak); }

CieReport verify_extension(const CieCandidate& c) {
  CieReport rep;
  const ext::ContextPtr& ctx = c.ctx;
  IdClasses cls = classify_ids(ctx);

  // --- structural decomposition d w0 = Pi ^ w0 + sum_k Omega_k ^ xi^k ---
  std::vector<BasisId> xi_ids;
  for (int k = 1; k <= 4; ++k) xi_ids.push_back(*ctx->find_basis("xi" + std::to_string(k)));
  Form pi(ctx, 1);
  std::array<Form, 4> omega{Form(ctx, 1), Form(ctx, 1), Form(ctx, 1), Form(ctx, 1)};
  bool decomposes = !c.d_w0.has_slots() && c.d_w0.degree() == 2;
  for (const auto& [m, coef] : c.d_w0.components()) {
    if (!decomposes) break;
    BasisId a = m.oneforms[0], b = m.oneforms[1];
    if (a == c.w0) {
      // coef * w0 ^ b contributes -coef * b to Pi
      pi += Form::monomial(ctx, WedgeMono{{b}, {}}, -coef);
      continue;
    }
    auto ka = std::find(xi_ids.begin(), xi_ids.end(), a);
    auto kb = std::find(xi_ids.begin(), xi_ids.end(), b);
    if ((ka != xi_ids.end()) == (kb != xi_ids.end())) {
      decomposes = false;  // either two xi factors or none
      continue;
    }
    if (ka != xi_ids.end())  // coef * xi^k ^ b = -coef * b ^ xi^k
      omega[static_cast<std::size_t>(ka - xi_ids.begin())] +=
          Form::monomial(ctx, WedgeMono{{b}, {}}, -coef);
    else
      omega[static_cast<std::size_t>(kb - xi_ids.begin())] +=
          Form::monomial(ctx, WedgeMono{{a}, {}}, coef);
  }

  std::set<BasisId> pi_allowed = cls.th;
  pi_allowed.insert(cls.eta.begin(), cls.eta.end());
  pi_allowed.insert(cls.xi.begin(), cls.xi.end());
  pi_allowed.insert(c.w1);
  pi_allowed.insert(c.w2);
  std::set<BasisId> omega_allowed = cls.th;
  omega_allowed.insert(c.w1);
  omega_allowed.insert(c.w2);
  std::set<BasisId> auxiliary{c.w1, c.w2};

  rep.shape_ok = decomposes && ids_within(pi, pi_allowed);
  rep.torsion_has_contact = false;
  rep.torsion_has_auxiliary = false;
  for (const Form& om : omega) {
    if (!ids_within(om, omega_allowed)) rep.shape_ok = false;
    if (touches(om, cls.th)) rep.torsion_has_contact = true;
    if (touches(om, auxiliary)) rep.torsion_has_auxiliary = true;
  }

  std::set<BasisId> dW_allowed = pi_allowed;
  dW_allowed.insert(c.w0);
  std::set<sym::SymbolId> sym_allowed{c.W1, c.W2, c.Z[0], c.Z[1], c.Z[2], c.Z[3]};
  rep.dW_shape_ok = true;
  for (const Form* f : {&c.d_W1, &c.d_W2}) {
    if (f->degree() != 1 || f->has_slots() || !ids_within(*f, dW_allowed)) rep.dW_shape_ok = false;
    for (sym::SymbolId s : f->coefficient_symbols())
      if (!sym_allowed.count(s)) rep.dW_shape_ok = false;
  }

  // --- compatibility: eliminate the unknown differentials of w1, w2 ---
  Form d2w0 = c.d_w0.ext_d(Form::DMode::Partial);
  Form d2W1 = c.d_W1.ext_d(Form::DMode::Partial);
  Form d2W2 = c.d_W2.ext_d(Form::DMode::Partial);
  ext::SlotSplit main = ext::split_slots(d2w0);
  std::array<ext::SlotSplit, 2> scalar_rows{ext::split_slots(d2W1), ext::split_slots(d2W2)};
  for (const auto& split : {main, scalar_rows[0], scalar_rows[1]})
    for (const auto& [s, cof] : split.cofactors)
      if (s != c.w1 && s != c.w2)
        throw Error("candidate compatibility touches the unknown differential of " +
                    ctx->basis_name(s));

  const std::array<BasisId, 2> cols{c.w1, c.w2};
  std::array<Form, 2> C{Form(ctx, 1), Form(ctx, 1)};
  for (int j = 0; j < 2; ++j) {
    auto it = main.cofactors.find(cols[static_cast<std::size_t>(j)]);
    if (it != main.cofactors.end()) C[static_cast<std::size_t>(j)] = it->second;
  }
  struct Row {
    Form rest;
    std::array<RationalExpr, 2> m;
  };
  std::array<Row, 2> rows;
  for (int r = 0; r < 2; ++r) {
    rows[static_cast<std::size_t>(r)].rest = scalar_rows[static_cast<std::size_t>(r)].rest;
    for (int j = 0; j < 2; ++j) {
      auto it =
          scalar_rows[static_cast<std::size_t>(r)].cofactors.find(cols[static_cast<std::size_t>(j)]);
      if (it != scalar_rows[static_cast<std::size_t>(r)].cofactors.end())
        rows[static_cast<std::size_t>(r)].m[static_cast<std::size_t>(j)] = scalar_of(it->second);
    }
  }

  // Pivot: prefer a constant nonzero entry, else any nonzero one.
  int pr = -1, pj = -1;
  for (int pass = 0; pass < 2 && pr < 0; ++pass)
    for (int r = 0; r < 2 && pr < 0; ++r)
      for (int j = 0; j < 2 && pr < 0; ++j) {
        const RationalExpr& e = rows[static_cast<std::size_t>(r)].m[static_cast<std::size_t>(j)];
        if (e.is_zero()) continue;
        if (pass == 0 && !e.is_constant()) continue;
        pr = r;
        pj = j;
      }
  if (pr < 0)
    throw Error("candidate scalar compatibility rows are degenerate: no pivot for the unknown "
                "differentials");

  const Row& prow = rows[static_cast<std::size_t>(pr)];
  const RationalExpr& mpj = prow.m[static_cast<std::size_t>(pj)];
  if (!mpj.is_constant()) rep.side.assume_nonzero(mpj);
  int oi = 1 - pj;  // the column left after solving for column pj
  const RationalExpr& mpi = prow.m[static_cast<std::size_t>(oi)];

  const Row& orow = rows[static_cast<std::size_t>(1 - pr)];
  Form elim_rest = orow.rest - prow.rest.scaled(orow.m[static_cast<std::size_t>(pj)] / mpj);
  RationalExpr elim_m = orow.m[static_cast<std::size_t>(oi)] -
                        orow.m[static_cast<std::size_t>(pj)] * mpi / mpj;

  std::array<Form, 2> tau{Form(ctx, 2), Form(ctx, 2)};
  auto back_substitute = [&](const Form& tau_oi) {
    // m_pj * tau_pj + m_oi * tau_oi + rest = 0
    return (prow.rest + tau_oi.scaled(mpi)).scaled(-mpj.inverse());
  };

  if (!elim_m.is_zero()) {
    // Both unknowns are determined; nothing is left to absorb the main residual.
    if (!elim_m.is_constant()) rep.side.assume_nonzero(elim_m);
    rep.scalar_residues_zero = true;
    tau[static_cast<std::size_t>(oi)] = elim_rest.scaled(-elim_m.inverse());
    tau[static_cast<std::size_t>(pj)] = back_substitute(tau[static_cast<std::size_t>(oi)]);
    Form residual = main.rest + tau[0].wedge(C[0]) + tau[1].wedge(C[1]);
    rep.solvable = residual.is_zero();
    if (!rep.solvable) rep.obstruction = residual;
  } else {
    rep.scalar_residues_zero = elim_rest.is_zero();
    if (!rep.scalar_residues_zero) rep.obstruction = elim_rest;
    // tau_pj = -(rest + m_oi tau_oi)/m_pj leaves one free unknown in the
    // main equation: rest' + tau_oi ^ alpha = 0.
    Form F = main.rest - prow.rest.scaled(mpj.inverse()).wedge(C[static_cast<std::size_t>(pj)]);
    Form alpha = C[static_cast<std::size_t>(oi)] -
                 C[static_cast<std::size_t>(pj)].scaled(mpi / mpj);
    if (alpha.is_zero()) {
      rep.solvable = F.is_zero();
      if (!rep.solvable && rep.scalar_residues_zero) rep.obstruction = F;
    } else {
      ext::OneformDivision div = ext::divide_by_oneform(F, alpha);
      rep.side.merge(div.side);
      rep.solvable = div.remainder.is_zero();
      if (rep.solvable) {
        tau[static_cast<std::size_t>(oi)] = -div.quotient;
        tau[static_cast<std::size_t>(pj)] = back_substitute(tau[static_cast<std::size_t>(oi)]);
      } else if (rep.scalar_residues_zero) {
        rep.obstruction = div.remainder;
      }
    }
  }

  if (rep.solvable && rep.scalar_residues_zero) {
    rep.delta1 = tau[0];
    rep.delta2 = tau[1];
    std::map<BasisId, Form> bound{{c.w1, tau[0]}, {c.w2, tau[1]}};
    rep.substituted_zero = ext::substitute_slots(d2w0, bound).is_zero() &&
                           ext::substitute_slots(d2W1, bound).is_zero() &&
                           ext::substitute_slots(d2W2, bound).is_zero();
  }

  rep.pass = rep.shape_ok && rep.torsion_has_contact && rep.torsion_has_auxiliary &&
             rep.dW_shape_ok && rep.scalar_residues_zero && rep.solvable && rep.substituted_zero;
  return rep;
}

}  // namespace eds::eng
