#include "symkernel/linear_solver.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "symkernel/errors.hpp"

namespace eds::sym {

namespace {

struct Row {
  std::map<uint32_t, RationalExpr> coefs;  // unknown index -> coefficient
  RationalExpr cst;
  std::map<std::size_t, RationalExpr> mult;  // original equation -> multiplier
};

std::size_t complexity(const RationalExpr& e) {
  return e.num().term_count() + e.den().term_count();
}

}  // namespace

std::map<SymbolId, RationalExpr> LinearSolution::canonical_assignment() const {
  std::map<SymbolId, RationalExpr> zeroed;
  for (SymbolId s : free_unknowns) zeroed[s] = RationalExpr::zero();
  std::map<SymbolId, RationalExpr> out = zeroed;
  for (const auto& [s, e] : assignment) out[s] = e.substituted(zeroed);
  return out;
}

LinearSolution solve_linear(const LinearSystem& system) {
  LinearSolution sol;

  std::unordered_map<SymbolId, uint32_t> index_of;
  for (uint32_t i = 0; i < system.unknowns.size(); ++i)
    index_of.emplace(system.unknowns[i], i);
  if (index_of.size() != system.unknowns.size())
    throw Error("solve_linear: duplicate unknown");

  // Row extraction with affine validation.
  std::vector<Row> rows;
  rows.reserve(system.equations.size());
  for (std::size_t ei = 0; ei < system.equations.size(); ++ei) {
    const RationalExpr& eq = system.equations[ei];
    std::set<SymbolId> den_syms;
    eq.den().collect_symbols(den_syms);
    for (SymbolId s : den_syms) {
      if (index_of.count(s))
        throw NonlinearSystem("equation " + std::to_string(ei) +
                              " has unknown '" + symbol_name(s) + "' in a denominator");
    }
    Row row;
    RationalExpr inv_den = RationalExpr(eq.den()).inverse();
    std::map<uint32_t, Poly> coef_polys;
    Poly cst_poly;
    for (const auto& [m, c] : eq.num().terms()) {
      SymbolId found = kNoSymbol;
      for (const auto& [s, e] : m.factors) {
        if (!index_of.count(s)) continue;
        if (found != kNoSymbol || e > 1)
          throw NonlinearSystem("equation " + std::to_string(ei) +
                                " is not affine in the unknowns (term contains '" +
                                symbol_name(s) + "' nonlinearly)");
        found = s;
      }
      if (found == kNoSymbol) {
        cst_poly += Poly::term(m, c);
      } else {
        Monomial rest;
        for (const auto& [s, e] : m.factors)
          if (s != found) rest.factors.emplace_back(s, e);
        coef_polys[index_of[found]] += Poly::term(rest, c);
      }
    }
    for (auto& [idx, p] : coef_polys) {
      if (p.is_zero()) continue;
      row.coefs[idx] = RationalExpr(p) * inv_den;
    }
    row.cst = RationalExpr(cst_poly) * inv_den;
    row.mult[ei] = RationalExpr::one();
    if (row.coefs.empty() && row.cst.is_zero()) continue;  // trivial 0 = 0
    rows.push_back(std::move(row));
  }

  // Column index: unknown -> set of row positions that reference it.
  std::vector<std::set<std::size_t>> columns(system.unknowns.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [idx, c] : rows[r].coefs) columns[idx].insert(r);

  std::vector<bool> is_pivot_row(rows.size(), false);
  std::vector<std::pair<uint32_t, std::size_t>> pivots;  // unknown index, row
  std::unordered_set<uint32_t> pivoted;

  auto check_degenerate = [&](std::size_t r) -> bool {
    // Returns true (and finalizes) when row r proves inconsistency.
    if (!rows[r].coefs.empty() || rows[r].cst.is_zero()) return false;
    sol.kind = LinearSolution::Kind::Inconsistent;
    sol.certificate.assign(rows[r].mult.begin(), rows[r].mult.end());
    sol.certificate_value = rows[r].cst;
    return true;
  };

  for (std::size_t r = 0; r < rows.size(); ++r)
    if (check_degenerate(r)) return sol;

  while (true) {
    // Pick the active row with the fewest unknowns.
    std::size_t best_row = rows.size();
    std::size_t best_size = SIZE_MAX;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (is_pivot_row[r] || rows[r].coefs.empty()) continue;
      if (rows[r].coefs.size() < best_size) {
        best_size = rows[r].coefs.size();
        best_row = r;
      }
    }
    if (best_row == rows.size()) break;
    Row& prow = rows[best_row];

    // Pick the pivot coefficient: constants first, then cheapest expression.
    uint32_t piv_idx = prow.coefs.begin()->first;
    bool have_const = false;
    std::size_t best_cx = SIZE_MAX;
    for (const auto& [idx, c] : prow.coefs) {
      if (c.is_constant()) {
        piv_idx = idx;
        have_const = true;
        break;
      }
      std::size_t cx = complexity(c);
      if (cx < best_cx) {
        best_cx = cx;
        piv_idx = idx;
      }
    }
    RationalExpr pc = prow.coefs[piv_idx];
    if (!have_const) sol.side.assume_nonzero(pc);

    // Normalize the pivot row.
    RationalExpr inv = pc.inverse();
    for (auto& [idx, c] : prow.coefs) c *= inv;
    prow.cst *= inv;
    for (auto& [ei, m] : prow.mult) m *= inv;
    is_pivot_row[best_row] = true;
    pivots.emplace_back(piv_idx, best_row);
    pivoted.insert(piv_idx);

    // Eliminate the pivot unknown everywhere else.
    std::set<std::size_t> users = columns[piv_idx];
    for (std::size_t r : users) {
      if (r == best_row) continue;
      Row& row = rows[r];
      auto it = row.coefs.find(piv_idx);
      if (it == row.coefs.end()) continue;
      RationalExpr f = it->second;
      row.coefs.erase(it);
      columns[piv_idx].erase(r);
      for (const auto& [idx, c] : prow.coefs) {
        if (idx == piv_idx) continue;
        RationalExpr delta = f * c;
        auto jt = row.coefs.find(idx);
        if (jt == row.coefs.end()) {
          row.coefs[idx] = -delta;
          columns[idx].insert(r);
        } else {
          jt->second -= delta;
          if (jt->second.is_zero()) {
            row.coefs.erase(jt);
            columns[idx].erase(r);
          }
        }
      }
      row.cst -= f * prow.cst;
      for (const auto& [ei, m] : prow.mult) {
        auto mt = row.mult.find(ei);
        if (mt == row.mult.end()) {
          row.mult[ei] = -(f * m);
        } else {
          mt->second -= f * m;
          if (mt->second.is_zero()) row.mult.erase(mt);
        }
      }
      if (!is_pivot_row[r] && check_degenerate(r)) return sol;
    }
    columns[piv_idx].clear();
    columns[piv_idx].insert(best_row);
  }

  // Free unknowns: never pivoted.
  for (uint32_t i = 0; i < system.unknowns.size(); ++i)
    if (!pivoted.count(i)) sol.free_unknowns.push_back(system.unknowns[i]);

  // Read the assignment off the (Jordan-reduced) pivot rows.
  std::sort(pivots.begin(), pivots.end());
  for (const auto& [idx, r] : pivots) {
    const Row& row = rows[r];
    RationalExpr value = -row.cst;
    for (const auto& [j, c] : row.coefs) {
      if (j == idx) continue;
      value -= c * RationalExpr::from_symbol(system.unknowns[j]);
    }
    sol.assignment.emplace_back(system.unknowns[idx], value);
  }
  sol.kind = sol.free_unknowns.empty() ? LinearSolution::Kind::Unique
                                       : LinearSolution::Kind::Parametric;
  return sol;
}

}  // namespace eds::sym
