#include "engine/structure_set.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "symkernel/errors.hpp"

namespace eds::eng {

using ext::Form;
using sym::RationalExpr;

namespace {

bool is_free_name(const std::string& name) {
  static const std::set<std::string> free_names = [] {
    std::set<std::string> s;
    for (const auto& n : free_form_names()) s.insert(n);
    return s;
  }();
  return free_names.count(name) != 0;
}

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

mpq_class draw_rational(uint64_t& state) {
  mpq_class q(static_cast<long>(splitmix64(state) % 19) - 9,
              static_cast<long>(splitmix64(state) % 3) + 1);
  q.canonicalize();
  return q;
}

std::size_t gauss_rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] == 0) continue;
      mpq_class factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

StructureSet::StructureSet(std::map<std::string, StructureRule> rules) : rules_(std::move(rules)) {
  auto ctx = ext::CoframeContext::create();
  for (const auto& name : ruled_form_names()) ctx->add_formal(name);
  for (const auto& name : free_form_names()) ctx->add_free(name);
  ext::ContextPtr view = ctx;
  for (const auto& [name, rule] : rules_) {
    auto id = ctx->find_basis(name);
    if (!id) throw Error("rule for unknown form " + name);
    ctx->set_d_rule(*id, rule_to_form(view, rule));
  }
  ctx_ = ctx;
}

Form StructureSet::basis_form(const std::string& name) const {
  auto b = ctx_->find_basis(name);
  if (!b) throw Error("structure set has no form named " + name);
  return Form::basis(ctx_, *b);
}

Form StructureSet::d_form(const std::string& name) const {
  return basis_form(name).ext_d(ext::Form::DMode::Partial);
}

Form rule_to_form(const ext::ContextPtr& ctx, const StructureRule& rule) {
  Form out(ctx, 2);
  for (const auto& term : rule) {
    auto l = ctx->find_basis(term.left);
    auto r = ctx->find_basis(term.right);
    if (!l || !r)
      throw Error("rule references a form outside the context: " + term.left + "^" + term.right);
    out += Form::basis(ctx, *l).wedge(Form::basis(ctx, *r)).scaled(RationalExpr(term.coef));
  }
  return out;
}

StructureSet::ClosureCheck StructureSet::closure_check(const std::string& name) const {
  auto it = rules_.find(name);
  if (it == rules_.end()) throw Error("no structure rule for " + name);

  ClosureCheck out;
  out.name = "d2(" + name + ")";

  // Partners of the free-form terms span the ideal that absorbs the unknown
  // differentials: d^2 = 0 forces the slot-free remainder into it.
  std::set<std::string> partners;
  for (const auto& term : it->second) {
    if (is_free_name(term.left)) partners.insert(term.right);
    if (is_free_name(term.right)) partners.insert(term.left);
  }

  Form d2 = basis_form(name).ext_d(ext::Form::DMode::Partial).ext_d(ext::Form::DMode::Partial);
  if (partners.empty()) {
    out.mode = "full";
    out.pass = d2.is_zero();
    out.residual_terms = d2.term_count();
    return out;
  }

  Form remainder = d2.project_dropping({});
  std::string mode = "partial mod <";
  std::vector<Form> gens;
  bool first = true;
  for (const auto& p : partners) {
    if (!first) mode += ",";
    first = false;
    mode += p;
    gens.push_back(basis_form(p));
  }
  out.mode = mode + ">";
  ext::IdealBasis basis = ext::triangularize_ideal(gens);
  Form reduced = ext::reduce_mod_ideal(remainder, basis);
  bool member = reduced.is_zero();
  if (member != ext::in_ideal_wedge_test(remainder, gens))
    throw Error("closure_check: reduction and wedge-out membership disagree for " + out.name);
  out.pass = member;
  out.residual_terms = reduced.term_count();
  return out;
}

std::vector<StructureSet::ClosureCheck> StructureSet::closure_all() const {
  std::vector<ClosureCheck> out;
  for (const auto& name : ruled_form_names()) out.push_back(closure_check(name));
  return out;
}

std::vector<std::string> StructureSet::rules_mentioning(const std::string& name) const {
  std::vector<std::string> out;
  for (const auto& [lhs, rule] : rules_) {
    for (const auto& term : rule) {
      if (term.left == name || term.right == name) {
        out.push_back(lhs);
        break;
      }
    }
  }
  return out;
}

std::vector<std::array<std::optional<int>, 4>> structure_tableau() {
  const auto& rules = structure_rules();
  std::vector<std::array<std::optional<int>, 4>> rows;
  for (int k = 7; k <= 22; ++k) {
    std::array<std::optional<int>, 4> row;
    const auto& rule = rules.at("eta" + std::to_string(k));
    for (const auto& term : rule) {
      if (!is_free_name(term.left)) continue;
      if (term.right.rfind("xi", 0) != 0) continue;  // theta partners sit outside the tableau
      int dir = term.right[2] - '1';
      if (dir < 0 || dir > 3) throw Error("unexpected xi name " + term.right);
      row[dir] = std::stoi(term.left.substr(3));
    }
    rows.push_back(row);
  }
  return rows;
}

CartanReport cartan_characters(uint64_t seed) {
  auto rows = structure_tableau();

  // Column index per free form 23..42.
  std::map<int, std::size_t> col;
  for (const auto& row : rows)
    for (const auto& e : row)
      if (e && !col.count(*e)) col.emplace(*e, col.size());
  const std::size_t nfree = col.size();

  uint64_t state = seed;
  auto tableau_matrix = [&](const std::array<mpq_class, 4>& v) {
    std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(nfree, 0));
    for (std::size_t k = 0; k < rows.size(); ++k)
      for (int i = 0; i < 4; ++i)
        if (rows[k][i]) m[k][col.at(*rows[k][i])] += v[i];
    return m;
  };

  CartanReport report;
  // Stack tableau matrices for 1..4 generic covectors; the rank jumps are the
  // reduced characters. Draw until the ranks stop improving, a few retries.
  std::vector<std::size_t> best(4, 0);
  for (int attempt = 0; attempt < 5; ++attempt) {
    std::vector<std::vector<mpq_class>> stacked;
    std::vector<std::size_t> ranks;
    for (int j = 0; j < 4; ++j) {
      std::array<mpq_class, 4> v;
      for (auto& q : v) q = draw_rational(state);
      auto m = tableau_matrix(v);
      stacked.insert(stacked.end(), m.begin(), m.end());
      ranks.push_back(gauss_rank(stacked));
    }
    ++report.draws_used;
    if (ranks > best) best = ranks;
    if (best[0] == rows.size() && best.back() == nfree) break;
  }
  report.characters[0] = best[0];
  for (int j = 1; j < 4; ++j) report.characters[j] = best[j] - best[j - 1];

  // Prolongation: one unknown per (free form, direction); row k and direction
  // pair i<j force symmetry when both entries exist and vanishing when only
  // one does.
  const std::size_t unknowns = nfree * 4;
  std::vector<std::vector<mpq_class>> eqs;
  auto unknown_at = [&](int f, int j) { return col.at(f) * 4 + static_cast<std::size_t>(j); };
  for (const auto& row : rows) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (!row[i] && !row[j]) continue;
        std::vector<mpq_class> eq(unknowns, 0);
        if (row[i]) eq[unknown_at(*row[i], j)] += 1;
        if (row[j]) eq[unknown_at(*row[j], i)] -= 1;
        eqs.push_back(std::move(eq));
      }
    }
  }
  report.prolongation_dim = unknowns - gauss_rank(eqs);

  std::size_t cartan_bound = 0;
  for (int j = 0; j < 4; ++j) cartan_bound += (j + 1) * report.characters[j];
  report.involutive = report.prolongation_dim == cartan_bound;
  return report;
}

}  // namespace eds::eng
