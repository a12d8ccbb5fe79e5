#include "coverings/covering.hpp"

#include <functional>
#include <set>

#include "symkernel/errors.hpp"
#include "symkernel/linear_solver.hpp"
#include "symkernel/symbol.hpp"

namespace eds::cov {

using jet::dir_letter;
using jet::DirT;
using jet::DirX;
using jet::DirY;
using jet::DirZ;
using jet::JetChart;
using sym::intern_symbol;
using sym::LinearSolution;
using sym::LinearSystem;
using sym::Poly;
using sym::solve_linear;
using sym::symbol_name;
using sym::SymbolKind;

Covering::Covering(JetChartPtr chart, RationalExpr rule_t, RationalExpr rule_x)
    : chart_(std::move(chart)) {
  if (!chart_) throw Error("covering needs a chart");
  if (!chart_->has_fibre()) throw Error("covering needs a chart with a fibre variable");
  if (!chart_->has_relation()) throw Error("covering needs a chart with a solved relation");
  rules_[DirT] = chart_->reduce(rule_t);
  rules_[DirX] = chart_->reduce(rule_x);
  for (int dir : {DirT, DirX}) {
    std::set<SymbolId> syms;
    rules_[static_cast<std::size_t>(dir)].collect_symbols(syms);
    for (SymbolId s : syms)
      if (!chart_->owns(s))
        throw Error("covering rule contains a symbol outside the chart: " + symbol_name(s));
  }
}

const RationalExpr& Covering::rule(int dir) const {
  if (dir != DirT && dir != DirX)
    throw Error("covering rules are defined for the t and x directions only");
  return rules_[static_cast<std::size_t>(dir)];
}

RationalExpr Covering::extended_derivative(int dir, const RationalExpr& e) const {
  RationalExpr reduced = chart_->reduce(e);
  std::set<SymbolId> syms;
  reduced.collect_symbols(syms);
  RationalExpr out;
  for (SymbolId s : syms) {
    RationalExpr coef = reduced.derivative(s);
    if (coef.is_zero()) continue;
    RationalExpr ds;
    auto fj = chart_->fibre_index(s);
    if (fj) {
      auto [i, j] = *fj;
      if (dir == DirY) {
        ds = RationalExpr::from_symbol(chart_->fibre(i + 1, j));
      } else if (dir == DirZ) {
        ds = RationalExpr::from_symbol(chart_->fibre(i, j + 1));
      } else {
        ds = prolonged_rule(dir, i, j);
      }
    } else {
      ds = chart_->symbol_derivative(dir, s);
    }
    out += coef * ds;
  }
  return out;
}

RationalExpr Covering::prolonged_rule(int dir, int i, int j) const {
  if (dir != DirT && dir != DirX)
    throw Error("prolonged rules exist for the t and x directions only");
  std::tuple<int, int, int> key{dir, i, j};
  {
    std::lock_guard<std::mutex> lock(memo_->mu);
    auto it = memo_->rules.find(key);
    if (it != memo_->rules.end()) return it->second;
  }
  RationalExpr value;
  if (i == 0 && j == 0) {
    value = rules_[static_cast<std::size_t>(dir)];
  } else if (i > 0) {
    value = extended_derivative(DirY, prolonged_rule(dir, i - 1, j));
  } else {
    value = extended_derivative(DirZ, prolonged_rule(dir, i, j - 1));
  }
  std::lock_guard<std::mutex> lock(memo_->mu);
  auto [it, fresh] = memo_->rules.emplace(key, value);
  (void)fresh;
  return it->second;
}

std::vector<Covering::Residual> Covering::zero_curvature(int depth) const {
  std::vector<Residual> out;
  auto check = [&](int a, int b, const RationalExpr& target, const std::string& tname) {
    RationalExpr r = extended_derivative(a, extended_derivative(b, target)) -
                     extended_derivative(b, extended_derivative(a, target));
    std::string name = std::string("[D") + dir_letter(a) + ",D" + dir_letter(b) + "](" + tname + ")";
    out.push_back({name, r});
  };
  RationalExpr u = RationalExpr::from_symbol(chart_->jet(MultiIndex::empty()));
  const std::string uname = chart_->config().dependent;
  const std::string vname = chart_->config().fibre;
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      check(a, b, u, uname);
      for (int i = 0; i <= depth; ++i) {
        for (int j = 0; i + j <= depth; ++j) {
          RationalExpr v = RationalExpr::from_symbol(chart_->fibre(i, j));
          check(a, b, v,
                vname + "[" + std::to_string(i) + "," + std::to_string(j) + "]");
        }
      }
    }
  }
  return out;
}

bool Covering::is_zero_curvature(int depth) const {
  for (const Residual& r : zero_curvature(depth))
    if (!r.value.is_zero()) return false;
  return true;
}

int Covering::rule_fibre_order() const {
  int best = 0;
  for (int dir : {DirT, DirX}) {
    std::set<SymbolId> syms;
    rules_[static_cast<std::size_t>(dir)].collect_symbols(syms);
    for (SymbolId s : syms) {
      auto fj = chart_->fibre_index(s);
      if (fj) best = std::max(best, fj->first + fj->second);
    }
  }
  return best;
}

WeForm covering_to_we(const Covering& cov) {
  const JetChart& chart = *cov.chart();
  auto ctx = ext::CoframeContext::create();
  WeForm w;
  for (int d = 0; d < 4; ++d)
    w.base_diff[static_cast<std::size_t>(d)] = ctx->add_coordinate(chart.base(d));
  w.fibre_diff = ctx->add_coordinate(chart.fibre(0, 0));
  w.ctx = ctx;
  Form omega = Form::basis(w.ctx, w.fibre_diff);
  omega -= Form::basis(w.ctx, w.base_diff[DirT]).scaled(cov.rule(DirT));
  omega -= Form::basis(w.ctx, w.base_diff[DirX]).scaled(cov.rule(DirX));
  omega -= Form::basis(w.ctx, w.base_diff[DirY])
               .scaled(RationalExpr::from_symbol(chart.fibre(1, 0)));
  omega -= Form::basis(w.ctx, w.base_diff[DirZ])
               .scaled(RationalExpr::from_symbol(chart.fibre(0, 1)));
  w.omega = omega;
  return w;
}

WeReading we_to_covering(const ext::Form& omega, const JetChartPtr& chart) {
  if (omega.degree() != 1) throw Error("a covering form must be a 1-form");
  ext::ContextPtr ctx = omega.context();
  if (!ctx) throw Error("covering form has no context");
  std::array<ext::BasisId, 4> base_diff{};
  for (int d = 0; d < 4; ++d) {
    auto b = ctx->coordinate_basis(chart->base(d));
    if (!b)
      throw Error(std::string("context lacks the differential of base coordinate ") +
                  dir_letter(d));
    base_diff[static_cast<std::size_t>(d)] = *b;
  }
  auto dv = ctx->coordinate_basis(chart->fibre(0, 0));
  if (!dv) throw Error("context lacks the differential of the fibre variable");

  std::set<ext::BasisId> allowed(base_diff.begin(), base_diff.end());
  allowed.insert(*dv);
  for (const auto& [m, c] : omega.components()) {
    for (ext::BasisId e : m.oneforms)
      if (!allowed.count(e))
        throw Error("covering form uses an unexpected differential: " + ctx->basis_name(e));
    if (m.has_slots()) throw Error("covering form carries unknown differentials");
  }

  RationalExpr a = omega.coefficient(*dv);
  if (a.is_zero())
    throw Error("the coefficient of the fibre differential vanishes identically");
  SideConditionSet side;
  if (!a.is_constant()) side.assume_nonzero(a);

  auto normalized = [&](int d) {
    return chart->reduce(-omega.coefficient(base_diff[static_cast<std::size_t>(d)]) / a);
  };
  RationalExpr want_vy = RationalExpr::from_symbol(chart->fibre(1, 0));
  RationalExpr want_vz = RationalExpr::from_symbol(chart->fibre(0, 1));
  if (normalized(DirY) != want_vy)
    throw Error("the dy coefficient does not reduce to the first fibre coordinate");
  if (normalized(DirZ) != want_vz)
    throw Error("the dz coefficient does not reduce to the second fibre coordinate");

  WeReading reading{Covering(chart, normalized(DirT), normalized(DirX)), side};
  return reading;
}

AffineBaseMap AffineBaseMap::identity() {
  AffineBaseMap m;
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      m.jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          RationalExpr(i == k ? 1 : 0);
  for (int i = 0; i < 4; ++i) m.shift[static_cast<std::size_t>(i)] = RationalExpr();
  return m;
}

namespace {

void validate_map_entries(const JetChart& chart, const AffineBaseMap& map) {
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      std::set<SymbolId> syms;
      map.jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].collect_symbols(syms);
      for (SymbolId s : syms)
        if (!chart.is_param(s))
          throw Error("base map entries may contain parameters only; found " + symbol_name(s));
    }
  }
}

RationalExpr transform_jet(const JetChart& chart, const AffineBaseMap& map,
                           const MultiIndex& idx) {
  std::vector<int> letters;
  for (int d = 0; d < 4; ++d)
    for (int r = 0; r < idx.c[static_cast<std::size_t>(d)]; ++r) letters.push_back(d);
  RationalExpr acc;
  std::function<void(std::size_t, MultiIndex, RationalExpr)> rec =
      [&](std::size_t pos, MultiIndex cur, RationalExpr coef) {
        if (pos == letters.size()) {
          acc += coef * RationalExpr::from_symbol(chart.jet(cur));
          return;
        }
        for (int i = 0; i < 4; ++i) {
          const RationalExpr& a =
              map.jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(letters[pos])];
          if (a.is_zero()) continue;
          rec(pos + 1, cur.plus(i), coef * a);
        }
      };
  rec(0, MultiIndex::empty(), RationalExpr(1));
  return acc;
}

// Substitution of every jet symbol in e through the prolonged base map.
std::map<SymbolId, RationalExpr> jet_bindings(const JetChart& chart, const AffineBaseMap& map,
                                              const std::vector<RationalExpr>& exprs) {
  std::map<SymbolId, RationalExpr> bind;
  for (const RationalExpr& e : exprs) {
    std::set<SymbolId> syms;
    e.collect_symbols(syms);
    for (SymbolId s : syms) {
      if (bind.count(s)) continue;
      auto idx = chart.jet_index(s);
      if (idx && idx->order() > 0) bind.emplace(s, transform_jet(chart, map, *idx));
    }
  }
  return bind;
}

}  // namespace

TransformReport apply_point_transform(const Covering& cov, const AffineBaseMap& map) {
  const JetChartPtr& chart = cov.chart();
  validate_map_entries(*chart, map);
  TransformReport report;

  // the relation must be carried to itself
  RationalExpr principal = RationalExpr::from_symbol(chart->jet(chart->principal()));
  RationalExpr relation_residual = principal - chart->relation_rhs();
  auto bind_rel = jet_bindings(*chart, map, {relation_residual});
  report.equation_residual = chart->reduce(relation_residual.substituted(bind_rel));
  report.equation_preserved = report.equation_residual.is_zero();
  if (!report.equation_preserved) return report;

  if (cov.rule_fibre_order() > 1)
    throw Error("point transforms support rules with first-order fibre jets only");

  SymbolId vhat_t = intern_symbol("vhat_t", SymbolKind::Unknown);
  SymbolId vhat_x = intern_symbol("vhat_x", SymbolKind::Unknown);
  std::array<RationalExpr, 4> vhat{
      RationalExpr::from_symbol(vhat_t), RationalExpr::from_symbol(vhat_x),
      RationalExpr::from_symbol(chart->fibre(1, 0)),
      RationalExpr::from_symbol(chart->fibre(0, 1))};

  std::vector<RationalExpr> rules{cov.rule(DirT), cov.rule(DirX)};
  auto bind = jet_bindings(*chart, map, rules);
  auto fibre_row = [&](int k) {
    RationalExpr s;
    for (int i = 0; i < 4; ++i)
      s += map.jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
           vhat[static_cast<std::size_t>(i)];
    return s;
  };
  bind.emplace(chart->fibre(1, 0), fibre_row(DirY));
  bind.emplace(chart->fibre(0, 1), fibre_row(DirZ));

  LinearSystem system;
  system.unknowns = {vhat_t, vhat_x};
  system.equations = {fibre_row(DirT) - cov.rule(DirT).substituted(bind),
                      fibre_row(DirX) - cov.rule(DirX).substituted(bind)};
  LinearSolution sol = solve_linear(system);
  if (sol.kind != LinearSolution::Kind::Unique)
    throw Error("base map does not determine the transformed covering rules");
  report.side.merge(sol.side);
  auto values = sol.canonical_assignment();
  report.transformed.emplace(chart, values.at(vhat_t), values.at(vhat_x));
  return report;
}

namespace {

// Characteristic of the symmetry on the dependent variable.
RationalExpr u_characteristic(const JetChart& chart, const PointSymmetry& sym) {
  RationalExpr q = sym.eta;
  for (int a = 0; a < 4; ++a)
    q -= sym.xi[static_cast<std::size_t>(a)] *
         RationalExpr::from_symbol(chart.jet(MultiIndex::of(a)));
  return chart.reduce(q);
}

// Iterated total derivative D_I applied to an expression without fibre jets.
RationalExpr iterated_total(const JetChart& chart, const MultiIndex& idx,
                            const RationalExpr& e) {
  RationalExpr r = e;
  for (int d = 0; d < 4; ++d)
    for (int k = 0; k < idx.c[static_cast<std::size_t>(d)]; ++k)
      r = chart.total_derivative(d, r);
  return r;
}

}  // namespace

RationalExpr lift_residual(const Covering& cov, const PointSymmetry& sym, int dir,
                           const RationalExpr& phi) {
  const JetChart& chart = *cov.chart();
  if (dir != DirT && dir != DirX)
    throw Error("determining equations exist for the t and x directions only");
  if (cov.rule_fibre_order() > 1)
    throw Error("lift analysis supports rules with first-order fibre jets only");

  RationalExpr q = u_characteristic(chart, sym);
  std::array<RationalExpr, 4> v{
      cov.rule(DirT), cov.rule(DirX), RationalExpr::from_symbol(chart.fibre(1, 0)),
      RationalExpr::from_symbol(chart.fibre(0, 1))};
  RationalExpr phi_char = phi;
  for (int a = 0; a < 4; ++a)
    phi_char -= sym.xi[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(a)];

  const RationalExpr& f = cov.rule(dir);
  RationalExpr linearized;
  std::set<SymbolId> syms;
  f.collect_symbols(syms);
  for (SymbolId s : syms) {
    RationalExpr coef = f.derivative(s);
    if (coef.is_zero()) continue;
    auto idx = chart.jet_index(s);
    if (idx) {
      linearized += coef * iterated_total(chart, *idx, q);
      continue;
    }
    auto fj = chart.fibre_index(s);
    if (fj) {
      auto [i, j] = *fj;
      RationalExpr dphi = phi_char;
      for (int k = 0; k < i; ++k) dphi = cov.extended_derivative(DirY, dphi);
      for (int k = 0; k < j; ++k) dphi = cov.extended_derivative(DirZ, dphi);
      linearized += coef * dphi;
    }
    // parameters contribute nothing
  }
  return cov.extended_derivative(dir, phi_char) - linearized;
}

LiftReport lift_obstruction(const Covering& cov, const PointSymmetry& sym, int ansatz_order) {
  const JetChart& chart = *cov.chart();
  if (cov.rule_fibre_order() > 1)
    throw Error("lift analysis supports rules with first-order fibre jets only");
  LiftReport report;
  report.ansatz_order = ansatz_order;

  // ansatz coordinates phi may depend on
  std::vector<SymbolId> ansatz;
  for (int d = 0; d < 4; ++d) ansatz.push_back(chart.base(d));
  for (SymbolId p : chart.params()) ansatz.push_back(p);
  for (const MultiIndex& idx : chart.internal_jet_indices(ansatz_order))
    ansatz.push_back(chart.jet(idx));
  for (int i = 0; i <= ansatz_order; ++i)
    for (int j = 0; i + j <= ansatz_order; ++j) ansatz.push_back(chart.fibre(i, j));

  SymbolId phi_sym = intern_symbol("lift_phi", SymbolKind::Unknown);
  std::vector<SymbolId> unknowns{phi_sym};
  std::map<SymbolId, SymbolId> partial;
  for (SymbolId c : ansatz) {
    SymbolId w = intern_symbol("lift_phi_d_" + symbol_name(c), SymbolKind::Unknown);
    partial.emplace(c, w);
    unknowns.push_back(w);
  }
  std::set<SymbolId> unknown_set(unknowns.begin(), unknowns.end());

  std::array<RationalExpr, 4> v{
      cov.rule(DirT), cov.rule(DirX), RationalExpr::from_symbol(chart.fibre(1, 0)),
      RationalExpr::from_symbol(chart.fibre(0, 1))};

  // formal characteristic phi - xi^a v_a with phi kept symbolic
  RationalExpr phi_head = RationalExpr::from_symbol(phi_sym);
  RationalExpr phi_tail;  // the explicit part
  for (int a = 0; a < 4; ++a)
    phi_tail -= sym.xi[static_cast<std::size_t>(a)] * v[static_cast<std::size_t>(a)];

  // extended derivative of the characteristic, expanding d(phi) over the
  // unknown first partials
  auto d_phi_char = [&](int b) {
    RationalExpr r;
    for (SymbolId c : ansatz) {
      RationalExpr dc = cov.extended_derivative(b, RationalExpr::from_symbol(c));
      if (!dc.is_zero()) r += RationalExpr::from_symbol(partial.at(c)) * dc;
    }
    return r + cov.extended_derivative(b, phi_tail);
  };

  RationalExpr q = u_characteristic(chart, sym);

  std::vector<RationalExpr> equations;
  std::vector<std::string> names;
  for (int dir : {DirT, DirX}) {
    const RationalExpr& f = cov.rule(dir);
    RationalExpr residual = d_phi_char(dir);
    std::set<SymbolId> syms;
    f.collect_symbols(syms);
    for (SymbolId s : syms) {
      RationalExpr coef = f.derivative(s);
      if (coef.is_zero()) continue;
      auto idx = chart.jet_index(s);
      if (idx) {
        residual -= coef * iterated_total(chart, *idx, q);
        continue;
      }
      auto fj = chart.fibre_index(s);
      if (!fj) continue;
      auto [i, j] = *fj;
      if (i == 0 && j == 0) {
        residual -= coef * (phi_head + phi_tail);
      } else if (i == 1 && j == 0) {
        residual -= coef * d_phi_char(DirY);
      } else {
        residual -= coef * d_phi_char(DirZ);
      }
    }

    // identity in the remaining jet coordinates: split the numerator by
    // monomials in symbols outside the ansatz set
    std::set<SymbolId> den_syms;
    residual.den().collect_symbols(den_syms);
    for (SymbolId s : den_syms)
      if (unknown_set.count(s))
        throw NonlinearSystem("determining equation has an unknown in a denominator");

    std::map<sym::Monomial, Poly, sym::MonomialGrlexGreater> groups;
    for (const auto& term : residual.num().terms()) {
      sym::Monomial outside = sym::Monomial::one();
      sym::Monomial inside = sym::Monomial::one();
      for (const auto& [s, e] : term.first.factors) {
        bool is_ansatz = unknown_set.count(s) > 0;
        if (!is_ansatz)
          for (SymbolId c : ansatz)
            if (c == s) {
              is_ansatz = true;
              break;
            }
        sym::Monomial f1 = sym::Monomial::var(s, e);
        if (is_ansatz)
          inside = inside * f1;
        else
          outside = outside * f1;
      }
      groups[outside] = groups[outside] + Poly::term(inside, term.second);
    }
    for (const auto& [outside, p] : groups) {
      equations.push_back(RationalExpr(p));
      std::string nm = std::string("D") + dir_letter(dir) + "-equation";
      if (!outside.is_one()) {
        nm += " | coefficient of ";
        nm += Poly::term(outside, 1).to_string();
      }
      names.push_back(nm);
    }
  }

  // The split equations constrain the first partials of phi as independent
  // unknowns; obstructions hiding in the integrability of those partials
  // surface after one prolongation. Differentiate every split equation by
  // every ansatz coordinate, writing second partials as fresh unknowns.
  std::map<std::pair<SymbolId, SymbolId>, SymbolId> second;
  std::map<SymbolId, SymbolId> coordinate_of;
  for (const auto& [c, w] : partial) coordinate_of.emplace(w, c);
  auto second_partial = [&](SymbolId head, SymbolId c) -> SymbolId {
    if (head == phi_sym) return partial.at(c);
    SymbolId a = coordinate_of.at(head);
    SymbolId b = c;
    if (symbol_name(b) < symbol_name(a)) std::swap(a, b);
    std::pair<SymbolId, SymbolId> key{a, b};
    auto it = second.find(key);
    if (it != second.end()) return it->second;
    SymbolId w2 = intern_symbol("lift_phi_d2_" + symbol_name(a) + "__" + symbol_name(b),
                                SymbolKind::Unknown);
    second.emplace(key, w2);
    return w2;
  };
  std::size_t first_level = equations.size();
  for (std::size_t i = 0; i < first_level; ++i) {
    std::set<SymbolId> present;
    equations[i].collect_symbols(present);
    for (SymbolId c : ansatz) {
      RationalExpr de = equations[i].derivative(c);
      for (SymbolId u : present) {
        if (!unknown_set.count(u)) continue;
        RationalExpr coef = equations[i].derivative(u);
        if (!coef.is_zero())
          de += coef * RationalExpr::from_symbol(second_partial(u, c));
      }
      if (de.is_zero()) continue;
      equations.push_back(de);
      names.push_back(names[i] + ", d/d " + symbol_name(c));
    }
  }
  for (const auto& [key, w2] : second) unknowns.push_back(w2);

  LinearSystem system;
  system.unknowns = unknowns;
  system.equations = equations;
  report.unknown_count = unknowns.size();
  report.equation_count = equations.size();
  LinearSolution sol = solve_linear(system);
  report.side_conditions = sol.side.to_strings();
  if (sol.kind == LinearSolution::Kind::Inconsistent) {
    report.status = LiftReport::Status::Obstructed;
    for (const auto& [idx, mult] : sol.certificate)
      report.certificate.push_back("(" + mult.to_string() + ") * [" + names[idx] + "]");
    report.certificate.push_back("= " + sol.certificate_value.to_string() + ", which is nonzero");
  } else {
    report.status = LiftReport::Status::Liftable;
    auto values = sol.canonical_assignment();
    for (SymbolId u : unknowns) {
      auto it = values.find(u);
      RationalExpr val = it == values.end() ? RationalExpr() : it->second;
      report.assignment.emplace_back(symbol_name(u), val.to_string());
    }
  }
  return report;
}

}  // namespace eds::cov
