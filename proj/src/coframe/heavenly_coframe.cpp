#include "coframe/heavenly_coframe.hpp"

#include <algorithm>
#include <set>

#include "symkernel/errors.hpp"

namespace eds::cfm {

using ext::Form;
using jet::DirT;
using jet::DirX;
using jet::DirY;
using jet::DirZ;
using jet::MultiIndex;
using sym::Poly;
using sym::RationalExpr;
using sym::SymbolId;

namespace {

RationalExpr S(SymbolId s) { return RationalExpr::from_symbol(s); }

Form d_of(const ext::ContextPtr& ctx, SymbolId s) {
  auto b = ctx->coordinate_basis(s);
  if (!b) throw Error("d_of: symbol is not a chart coordinate of this context");
  return Form::basis(ctx, *b);
}

// du_idx - sum_a (reduced u_{idx+a}) dx^a for an internal index.
Form restricted_contact(const jet::JetChartPtr& chart, const ext::ContextPtr& ctx,
                        const MultiIndex& idx) {
  Form f = d_of(ctx, chart->jet(idx));
  for (int a = 0; a < 4; ++a) {
    MultiIndex up = idx.plus(a);
    RationalExpr coef = chart->is_internal(up)
                            ? S(chart->jet(up))
                            : chart->prolonged_rhs(up.minus(chart->principal()));
    f -= d_of(ctx, chart->base(a)).scaled(coef);
  }
  return f;
}

struct SplitRule {
  Form known;
  std::vector<std::string> ideal;  // xi partners of the unrealized terms
};

SplitRule split_rule(const ExplicitCoframe& cf, const eng::StructureRule& rule) {
  SplitRule out;
  out.known = Form(cf.ctx, 2);
  std::set<std::string> ideal;
  for (const auto& term : rule) {
    auto li = cf.forms.find(term.left);
    auto ri = cf.forms.find(term.right);
    if (li != cf.forms.end() && ri != cf.forms.end()) {
      out.known += li->second.wedge(ri->second).scaled(RationalExpr(term.coef));
      continue;
    }
    const std::string& partner = (li == cf.forms.end()) ? term.right : term.left;
    if (partner.rfind("xi", 0) != 0 || cf.forms.find(partner) == cf.forms.end())
      throw Error("split_rule: unrealized term " + term.left + "^" + term.right +
                  " has no realized xi partner");
    ideal.insert(partner);
  }
  out.ideal.assign(ideal.begin(), ideal.end());
  std::sort(out.ideal.begin(), out.ideal.end());
  return out;
}

IdentityCheck check_against(const ExplicitCoframe& cf, const std::string& name,
                            const Form& lhs, const SplitRule& split) {
  IdentityCheck out;
  out.name = "d(" + name + ")";
  Form residual = lhs - split.known;
  if (split.ideal.empty()) {
    out.mode = "exact";
    out.pass = residual.is_zero();
    out.residual_terms = residual.term_count();
    return out;
  }
  std::string mode = "mod <";
  std::vector<Form> gens;
  for (std::size_t i = 0; i < split.ideal.size(); ++i) {
    if (i) mode += ",";
    mode += split.ideal[i];
    gens.push_back(cf.form(split.ideal[i]));
  }
  out.mode = mode + ">";
  ext::IdealBasis basis = ext::triangularize_ideal(gens);
  Form reduced = ext::reduce_mod_ideal(residual, basis);
  bool member = reduced.is_zero();
  if (member != ext::in_ideal_wedge_test(residual, gens))
    throw Error("check_against: reduction and wedge-out membership disagree for " + out.name);
  out.pass = member;
  out.residual_terms = reduced.term_count();
  return out;
}

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::size_t gauss_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

const Form& ExplicitCoframe::form(const std::string& name) const {
  auto it = forms.find(name);
  if (it == forms.end()) throw Error("ExplicitCoframe: no form named " + name);
  return it->second;
}

const Form& ExplicitCoframe::contact_form(const std::string& name) const {
  auto it = contact.find(name);
  if (it == contact.end()) throw Error("ExplicitCoframe: no contact form named " + name);
  return it->second;
}

ExplicitCoframe build_explicit_coframe(const CoframeOptions& opt) {
  ExplicitCoframe cf;

  auto J = [](std::initializer_list<int> dirs) {
    MultiIndex m;
    for (int d : dirs) m = m.plus(d);
    return m;
  };
  if (opt.chart) {
    if (!opt.chart->has_relation())
      throw Error("build_explicit_coframe: supplied chart has no solved relation");
    cf.chart = opt.chart;
  } else {
    jet::JetChart::Config cfg;
    cfg.dependent = "u";
    cfg.jet_order = 3;
    cfg.params = {"b11", "b12", "b21", "b22", "b3", "b4"};
    cf.chart = std::make_shared<jet::JetChart>(cfg);
    cf.chart->set_relation(
        J({DirX, DirZ}),
        S(cf.chart->jet(J({DirT, DirY}))) +
            S(cf.chart->jet(J({DirY, DirY}))) * S(cf.chart->jet(J({DirZ, DirZ}))) -
            S(cf.chart->jet(J({DirY, DirZ}))) * S(cf.chart->jet(J({DirY, DirZ}))));
  }
  auto& chart = *cf.chart;

  auto ctxm = ext::CoframeContext::create();
  for (int a = 0; a < 4; ++a) ctxm->add_coordinate(chart.base(a));
  for (const MultiIndex& idx : chart.internal_jet_indices(chart.jet_order()))
    ctxm->add_coordinate(chart.jet(idx));
  if (chart.has_fibre())
    for (int i = 0; i <= chart.fibre_order(); ++i)
      for (int j = 0; i + j <= chart.fibre_order(); ++j)
        ctxm->add_coordinate(chart.fibre(i, j));
  const std::set<std::string> constant(opt.constant_params.begin(), opt.constant_params.end());
  for (SymbolId p : chart.params()) {
    if (constant.count(sym::symbol_name(p)))
      ctxm->set_constant_symbol(p);
    else
      ctxm->add_coordinate(p);
  }
  cf.ctx = ctxm;
  const ext::ContextPtr& ctx = cf.ctx;

  Form dt = d_of(ctx, chart.base(DirT));
  Form dx = d_of(ctx, chart.base(DirX));
  Form dy = d_of(ctx, chart.base(DirY));
  Form dz = d_of(ctx, chart.base(DirZ));

  auto u = [&](std::initializer_list<int> dirs) { return S(chart.jet(J(dirs))); };
  RationalExpr uyy = u({DirY, DirY}), uyz = u({DirY, DirZ}), uzz = u({DirZ, DirZ});
  RationalExpr uyyy = u({DirY, DirY, DirY}), uyyz = u({DirY, DirY, DirZ});
  RationalExpr uyzz = u({DirY, DirZ, DirZ}), uzzz = u({DirZ, DirZ, DirZ});

  RationalExpr b11 = S(chart.param("b11")), b12 = S(chart.param("b12"));
  RationalExpr b21 = S(chart.param("b21")), b22 = S(chart.param("b22"));
  RationalExpr b3 = S(chart.param("b3")), b4 = S(chart.param("b4"));
  RationalExpr b0 = b11 * b22 - b12 * b21;
  Form db11 = d_of(ctx, chart.param("b11")), db12 = d_of(ctx, chart.param("b12"));
  Form db21 = d_of(ctx, chart.param("b21")), db22 = d_of(ctx, chart.param("b22"));
  Form db3 = d_of(ctx, chart.param("b3")), db4 = d_of(ctx, chart.param("b4"));

  cf.side.assume_nonzero(b0);
  cf.side.assume_nonzero(b3);

  auto& contact = cf.contact;
  contact["vt0"] = restricted_contact(cf.chart, ctx, J({}));
  contact["vt1"] = restricted_contact(cf.chart, ctx, J({DirT}));
  contact["vt2"] = restricted_contact(cf.chart, ctx, J({DirX}));
  contact["vt3"] = restricted_contact(cf.chart, ctx, J({DirY}));
  contact["vt4"] = restricted_contact(cf.chart, ctx, J({DirZ}));
  contact["vt33"] = restricted_contact(cf.chart, ctx, J({DirY, DirY}));
  contact["vt34"] = restricted_contact(cf.chart, ctx, J({DirY, DirZ}));
  contact["vt44"] = restricted_contact(cf.chart, ctx, J({DirZ, DirZ}));

  const Form& vt0 = contact["vt0"];
  const Form& vt1 = contact["vt1"];
  const Form& vt2 = contact["vt2"];
  const Form& vt3 = contact["vt3"];
  const Form& vt4 = contact["vt4"];
  const Form& vt33 = contact["vt33"];
  const Form& vt34 = contact["vt34"];
  const Form& vt44 = contact["vt44"];

  RationalExpr b3sq = b3 * b3;
  RationalExpr b3cu = b3sq * b3;

  auto& F = cf.forms;
  F["th0"] = vt0.scaled(b3cu * b0);
  F["th1"] = (vt1.scaled(b22) - vt2.scaled(b21) + vt3.scaled(b22 * uzz - b21 * (uyz + b4)) +
              vt4.scaled(b21 * uyy - b22 * (uyz - b4)))
                 .scaled(b3cu);
  F["th2"] = (vt1.scaled(-b12) + vt2.scaled(b11) + vt3.scaled(b11 * (uyz + b4) - b12 * uzz) +
              vt4.scaled(b12 * (uyz - b4) - b11 * uyy))
                 .scaled(b3cu);
  F["th3"] = (vt3.scaled(-b11) + vt4.scaled(b12)).scaled(b3sq);
  F["th4"] = (vt3.scaled(b21) - vt4.scaled(b22)).scaled(opt.theta4_b3_squared ? b3sq : b3);

  F["xi1"] = dt.scaled(b11) + dx.scaled(b12);
  F["xi2"] = dt.scaled(b21) + dx.scaled(b22);
  {
    RationalExpr q3 = opt.xi3_dx_plus_b4 ? b22 * (uyz + b4) - b21 * uyy
                                         : b22 * (uyz - b4) - b21 * uyy;
    F["xi3"] = (dt.scaled(b22 * uzz - b21 * (uyz - b4)) + dx.scaled(q3) - dy.scaled(b22) -
                dz.scaled(b21))
                   .scaled(b3);
    RationalExpr p4 = opt.xi4_dt_flipped ? b12 * uzz - b11 * (uyz - b4)
                                         : b11 * (uyz - b4) - b12 * uzz;
    F["xi4"] = (dt.scaled(p4) + dx.scaled(b12 * (uyz + b4) - b11 * uyy) - dy.scaled(b12) -
                dz.scaled(b11))
                   .scaled(b3);
  }

  RationalExpr s = b3 / b0;
  F["th33"] = (vt33.scaled(b11 * b11) - vt34.scaled(RationalExpr(2) * b11 * b12) +
               vt44.scaled(b12 * b12))
                  .scaled(s);
  F["th34"] = (vt33.scaled(b11 * b21) - vt34.scaled(b11 * b22 + b12 * b21) +
               vt44.scaled(b12 * b22))
                  .scaled(-s);
  F["th44"] = (vt33.scaled(b21 * b21) - vt34.scaled(RationalExpr(2) * b21 * b22) +
               vt44.scaled(b22 * b22))
                  .scaled(s);

  // Polarized third-order cubics W(p,q,r) over the two parameter rows.
  auto W = [&](const RationalExpr& p1, const RationalExpr& p2, const RationalExpr& q1,
               const RationalExpr& q2, const RationalExpr& r1, const RationalExpr& r2) {
    return p1 * q1 * r1 * uyyy - (p1 * q1 * r2 + p1 * q2 * r1 + p2 * q1 * r1) * uyyz +
           (p1 * q2 * r2 + p2 * q1 * r2 + p2 * q2 * r1) * uyzz - p2 * q2 * r2 * uzzz;
  };
  RationalExpr W111 = W(b11, b12, b11, b12, b11, b12);
  RationalExpr W112 = W(b11, b12, b11, b12, b21, b22);
  RationalExpr W122 = W(b11, b12, b21, b22, b21, b22);
  RationalExpr W222 = W(b21, b22, b21, b22, b21, b22);

  RationalExpr inv0 = b0.inverse();
  RationalExpr inv00 = inv0 * inv0;
  const Form& xi1 = F["xi1"];
  const Form& xi2 = F["xi2"];

  F["eta1"] = (db11.scaled(b22) - db12.scaled(b21)).scaled(inv0) -
              (xi1.scaled(W122) - xi2.scaled(W112)).scaled(inv00);
  F["eta2"] = (db12.scaled(b11) - db11.scaled(b12)).scaled(inv0) +
              (xi1.scaled(W112) - xi2.scaled(W111)).scaled(inv00);

  if (opt.eta34_combined) {
    F["eta3"] = (db21.scaled(b22) - db22.scaled(b21)).scaled(inv0) -
                (xi1.scaled(W222) - xi2.scaled(W122)).scaled(inv00);
    F["eta4"] = (db22.scaled(b11) - db21.scaled(b12)).scaled(inv0) +
                (xi1.scaled(W122) - xi2.scaled(W112)).scaled(inv00);
    F["eta5"] = db3.scaled(RationalExpr(3) / b3) + F["eta1"] + F["eta4"];
  } else {
    cf.side.assume_nonzero(b11);
    cf.side.assume_nonzero(b12);
    RationalExpr c33 = b21 * b21 * uyyy - RationalExpr(2) * b21 * b22 * uyyz + b22 * b22 * uyzz;
    RationalExpr c34 = b11 * b21 * uyyy - (b11 * b22 + b12 * b21) * uyyz + b12 * b22 * uyzz;
    F["eta3"] = (db21.scaled(b22) - db11.scaled(b22 * b22) - db22.scaled(b21) +
                 db12.scaled(b21 * b22))
                    .scaled(inv0) +
                F["eta1"].scaled(b22 / b12) +
                (xi1.scaled(c33) - xi2.scaled(c34)).scaled((b12 * b0).inverse());
    RationalExpr c43 = (b11 * b22 + b12 * b21) * uyzz - b11 * b21 * uyyz - b12 * b22 * uzzz;
    RationalExpr c44 = b11 * b11 * uyyz - RationalExpr(2) * b11 * b12 * uyzz + b12 * b12 * uzzz;
    Form tail4 = (xi1.scaled(c43) + xi2.scaled(c44)).scaled((b11 * b0).inverse());
    F["eta4"] = (db11.scaled(b12 * b21) - db12.scaled(b21) - db21.scaled(b12) +
                 db22.scaled(b11))
                    .scaled(inv0) +
                F["eta2"].scaled(b21 / b11) + tail4;
    F["eta5"] = (db3.scaled(b3.inverse()) +
                 (db11.scaled(b12 * b21) - db12.scaled(b11 * b21) - db21.scaled(b11 * b12) +
                  db22.scaled(b11 * b11))
                     .scaled((b11 * b0).inverse()) +
                 F["eta2"].scaled(b21 / b11))
                    .scaled(RationalExpr(3)) +
                F["eta1"] - F["eta4"].scaled(RationalExpr(2)) + tail4.scaled(RationalExpr(3));
  }

  F["eta6"] = db4.scaled(-b3) + F["th34"];

  cf.names = {"th0",  "th1",  "th2",  "th3",  "th4",  "xi1",  "xi2",  "xi3",  "xi4",
              "th33", "th34", "th44", "eta1", "eta2", "eta3", "eta4", "eta5", "eta6"};
  return cf;
}

IdentityCheck verify_one_identity(const ExplicitCoframe& cf, const std::string& name,
                                  const std::vector<eng::StructureTerm>& rule) {
  return check_against(cf, name, cf.form(name).ext_d(), split_rule(cf, rule));
}

IdentityCheck verify_one_identity(const ExplicitCoframe& cf, const std::string& name) {
  return verify_one_identity(cf, name, eng::structure_rules().at(name));
}

std::vector<IdentityCheck> verify_structure_identities(const ExplicitCoframe& cf) {
  std::vector<IdentityCheck> out;
  for (const std::string& name : cf.names) out.push_back(verify_one_identity(cf, name));

  IdentityCheck c0;
  c0.name = "d(vt0)";
  c0.mode = "exact";
  Form residual = cf.contact_form("vt0").ext_d();
  const char* vts[4] = {"vt1", "vt2", "vt3", "vt4"};
  for (int a = 0; a < 4; ++a)
    residual -= d_of(cf.ctx, cf.chart->base(a)).wedge(cf.contact_form(vts[a]));
  c0.pass = residual.is_zero();
  c0.residual_terms = residual.term_count();
  out.push_back(c0);
  return out;
}

bool coframe_independent(const ExplicitCoframe& cf, uint64_t seed,
                         sym::SideConditionSet* side_out) {
  std::vector<Form> gens;
  for (const std::string& n : cf.names) gens.push_back(cf.form(n));
  try {
    ext::IdealBasis basis = ext::triangularize_ideal(gens);
    if (side_out) side_out->merge(basis.side);
  } catch (const DegenerateGenerators&) {
    return false;
  }

  std::vector<SymbolId> coords;
  for (int a = 0; a < 4; ++a) coords.push_back(cf.chart->base(a));
  for (const MultiIndex& idx : cf.chart->internal_jet_indices(3))
    coords.push_back(cf.chart->jet(idx));
  for (SymbolId p : cf.chart->params()) coords.push_back(p);

  uint64_t state = seed ^ 0x6d652d666f726dull;
  for (int attempt = 0; attempt < 10; ++attempt) {
    std::map<SymbolId, RationalExpr> point;
    for (SymbolId s : coords) {
      long num = static_cast<long>(splitmix64(state) % 19) - 9;
      long den = 1 + static_cast<long>(splitmix64(state) % 3);
      mpq_class q(num, den);
      q.canonicalize();
      point[s] = RationalExpr(q);
    }
    try {
      std::vector<std::vector<mpq_class>> mat;
      for (const std::string& n : cf.names) {
        const Form& f = cf.form(n);
        std::vector<mpq_class> row(cf.ctx->basis_size(), 0);
        for (const auto& [mono, coef] : f.components()) {
          RationalExpr v = coef.substituted(point);
          if (!v.is_constant()) throw Error("coframe_independent: unbound coefficient symbol");
          row[mono.oneforms[0]] = v.constant_value();
        }
        mat.push_back(std::move(row));
      }
      if (gauss_rank(std::move(mat)) == cf.names.size()) return true;
    } catch (const VanishingDenominator&) {
      continue;
    }
  }
  return false;
}

}  // namespace eds::cfm
