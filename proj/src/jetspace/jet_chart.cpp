#include "jetspace/jet_chart.hpp"

#include "symkernel/errors.hpp"
#include "symkernel/symbol.hpp"

namespace eds::jet {

using sym::intern_symbol;
using sym::Poly;
using sym::symbol_name;
using sym::SymbolKind;

namespace {

void enumerate_indices(int max_order, std::vector<MultiIndex>& out) {
  for (int n = 0; n <= max_order; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b)
        for (int c = 0; a + b + c <= n; ++c) {
          int d = n - a - b - c;
          MultiIndex m;
          m.c = {static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c),
                 static_cast<uint8_t>(d)};
          out.push_back(m);
        }
}

}  // namespace

JetChart::JetChart(const Config& cfg) : cfg_(cfg) {
  if (cfg_.jet_order < 1) throw Error("jet order must be at least 1");
  static const char* base_names[4] = {"t", "x", "y", "z"};
  for (int i = 0; i < 4; ++i)
    base_[static_cast<std::size_t>(i)] = intern_symbol(base_names[i], SymbolKind::BaseVar);

  std::vector<MultiIndex> idxs;
  enumerate_indices(cfg_.jet_order, idxs);
  std::sort(idxs.begin(), idxs.end());
  for (const MultiIndex& m : idxs) {
    std::string name = cfg_.dependent;
    if (m.order() > 0) name += "_" + m.suffix();
    SymbolId s = intern_symbol(name, SymbolKind::Jet);
    jets_.emplace(m, s);
    jet_of_.emplace(s, m);
  }

  if (!cfg_.fibre.empty()) {
    for (int n = 0; n <= cfg_.fibre_order; ++n) {
      for (int i = n; i >= 0; --i) {
        int j = n - i;
        std::string name = cfg_.fibre;
        if (n > 0) {
          name += "_";
          name += std::string(static_cast<std::size_t>(i), 'y');
          name += std::string(static_cast<std::size_t>(j), 'z');
        }
        SymbolId s = intern_symbol(name, SymbolKind::FibreJet);
        fibre_.emplace(std::make_pair(i, j), s);
        fibre_of_.emplace(s, std::make_pair(i, j));
      }
    }
  }

  for (const std::string& p : cfg_.params) {
    SymbolId s = intern_symbol(p, SymbolKind::Parameter);
    params_.push_back(s);
    param_by_name_.emplace(p, s);
  }
}

SymbolId JetChart::jet(const MultiIndex& idx) const {
  auto it = jets_.find(idx);
  if (it == jets_.end())
    throw OrderOverflow("jet " + cfg_.dependent + "_" + idx.suffix() +
                        " exceeds chart order " + std::to_string(cfg_.jet_order));
  return it->second;
}

SymbolId JetChart::fibre(int i, int j) const {
  auto it = fibre_.find(std::make_pair(i, j));
  if (it == fibre_.end())
    throw OrderOverflow("fibre jet (" + std::to_string(i) + "," + std::to_string(j) +
                        ") exceeds fibre order " + std::to_string(cfg_.fibre_order));
  return it->second;
}

SymbolId JetChart::param(const std::string& name) const {
  auto it = param_by_name_.find(name);
  if (it == param_by_name_.end())
    throw UnknownSymbolError("chart has no parameter '" + name + "'");
  return it->second;
}

std::optional<MultiIndex> JetChart::jet_index(SymbolId s) const {
  auto it = jet_of_.find(s);
  if (it == jet_of_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::pair<int, int>> JetChart::fibre_index(SymbolId s) const {
  auto it = fibre_of_.find(s);
  if (it == fibre_of_.end()) return std::nullopt;
  return it->second;
}

bool JetChart::is_base(SymbolId s) const {
  for (SymbolId b : base_)
    if (b == s) return true;
  return false;
}

bool JetChart::is_param(SymbolId s) const {
  for (SymbolId p : params_)
    if (p == s) return true;
  return false;
}

bool JetChart::owns(SymbolId s) const {
  return is_base(s) || is_param(s) || jet_of_.count(s) > 0 || fibre_of_.count(s) > 0;
}

std::vector<MultiIndex> JetChart::jet_indices(int max_order) const {
  std::vector<MultiIndex> out;
  for (const auto& [m, s] : jets_)
    if (m.order() <= max_order) out.push_back(m);
  return out;
}

std::vector<MultiIndex> JetChart::internal_jet_indices(int max_order) const {
  std::vector<MultiIndex> out;
  for (const auto& [m, s] : jets_)
    if (m.order() <= max_order && is_internal(m)) out.push_back(m);
  return out;
}

void JetChart::set_relation(const MultiIndex& principal, const RationalExpr& rhs) {
  if (relation_) throw Error("chart already has a relation");
  if (principal.order() < 1 || principal.order() > cfg_.jet_order)
    throw Error("principal derivative order out of range");
  principal_ = principal;
  if (!is_internal_expr(rhs)) {
    principal_.reset();
    throw Error("relation right side must be internal (free of the principal pattern)");
  }
  std::set<SymbolId> syms;
  rhs.collect_symbols(syms);
  for (SymbolId s : syms) {
    auto idx = jet_index(s);
    if (idx && idx->order() > principal.order()) {
      principal_.reset();
      throw Error("relation right side contains a jet above the principal order");
    }
  }
  relation_ = rhs;
}

const MultiIndex& JetChart::principal() const {
  if (!principal_) throw Error("chart has no relation");
  return *principal_;
}

const RationalExpr& JetChart::relation_rhs() const {
  if (!relation_) throw Error("chart has no relation");
  return *relation_;
}

bool JetChart::is_internal(const MultiIndex& idx) const {
  if (!principal_) return true;
  return !idx.dominates(*principal_);
}

bool JetChart::is_internal_expr(const RationalExpr& e) const {
  std::set<SymbolId> syms;
  e.collect_symbols(syms);
  for (SymbolId s : syms) {
    auto idx = jet_index(s);
    if (idx && !is_internal(*idx)) return false;
  }
  return true;
}

RationalExpr JetChart::reduce(const RationalExpr& e) const {
  std::set<SymbolId> syms;
  e.collect_symbols(syms);
  std::map<SymbolId, RationalExpr> repl;
  for (SymbolId s : syms) {
    auto idx = jet_index(s);
    if (idx && !is_internal(*idx)) repl.emplace(s, prolonged_rhs(idx->minus(*principal_)));
  }
  if (repl.empty()) return e;
  return e.substituted(repl);
}

RationalExpr JetChart::prolonged_rhs(const MultiIndex& extra) const {
  if (!relation_) throw Error("chart has no relation");
  {
    std::lock_guard<std::mutex> lock(memo_mu_);
    auto it = prolong_memo_.find(extra);
    if (it != prolong_memo_.end()) return it->second;
  }
  RationalExpr result;
  if (extra.order() == 0) {
    result = *relation_;
  } else {
    int d = extra.first_direction();
    MultiIndex parent = extra;
    --parent.c[static_cast<std::size_t>(d)];
    result = total_derivative(d, prolonged_rhs(parent));
  }
  std::lock_guard<std::mutex> lock(memo_mu_);
  auto [it, fresh] = prolong_memo_.emplace(extra, result);
  return it->second;
}

RationalExpr JetChart::symbol_derivative(int dir, SymbolId s) const {
  if (is_base(s))
    return s == base(dir) ? RationalExpr::one() : RationalExpr::zero();
  if (is_param(s)) return RationalExpr::zero();
  auto idx = jet_index(s);
  if (idx) {
    MultiIndex shifted = idx->plus(dir);
    if (shifted.order() > cfg_.jet_order)
      throw OrderOverflow("total derivative needs jet " + cfg_.dependent + "_" +
                          shifted.suffix() + " beyond chart order " +
                          std::to_string(cfg_.jet_order));
    if (is_internal(shifted)) return RationalExpr::from_symbol(jet(shifted));
    return prolonged_rhs(shifted.minus(*principal_));
  }
  if (fibre_of_.count(s))
    throw Error("fibre jet '" + symbol_name(s) +
                "' has no plain total derivative; use the covering's extended derivative");
  throw UnknownSymbolError("symbol '" + symbol_name(s) + "' does not belong to the chart");
}

RationalExpr JetChart::total_derivative(int dir, const RationalExpr& e) const {
  RationalExpr red = reduce(e);
  std::set<SymbolId> syms;
  red.collect_symbols(syms);
  RationalExpr acc;
  for (SymbolId s : syms) {
    RationalExpr ds = symbol_derivative(dir, s);
    if (ds.is_zero()) continue;
    acc += red.derivative(s) * ds;
  }
  return acc;
}

}  // namespace eds::jet
