#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "jetspace/multi_index.hpp"
#include "symkernel/rational_expr.hpp"

namespace eds::jet {

using sym::RationalExpr;
using sym::SymbolId;

// Finite-order jet chart over base (t, x, y, z) with one dependent variable,
// optional fibre variable with jets v_{i,j} counted by (y, z) derivatives,
// and scalar parameters. When a solved relation u_P = rhs is installed, every
// jet whose index dominates P is non-internal and reduce() rewrites it via
// the prolonged relation.
class JetChart {
public:
  struct Config {
    std::string dependent = "u";
    int jet_order = 4;
    std::string fibre;  // empty: no fibre jets
    int fibre_order = 3;
    std::vector<std::string> params;
  };

  explicit JetChart(const Config& cfg);

  const Config& config() const { return cfg_; }
  int jet_order() const { return cfg_.jet_order; }
  int fibre_order() const { return cfg_.fibre_order; }
  bool has_fibre() const { return !cfg_.fibre.empty(); }

  SymbolId base(int dir) const { return base_[static_cast<std::size_t>(dir)]; }
  SymbolId jet(const MultiIndex& idx) const;       // includes order zero (u itself)
  SymbolId fibre(int i, int j) const;              // v_{i,j}
  SymbolId param(const std::string& name) const;
  const std::vector<SymbolId>& params() const { return params_; }

  std::optional<MultiIndex> jet_index(SymbolId s) const;
  std::optional<std::pair<int, int>> fibre_index(SymbolId s) const;
  bool is_base(SymbolId s) const;
  bool is_param(SymbolId s) const;
  bool owns(SymbolId s) const;

  // All jet indices with order <= k, ascending.
  std::vector<MultiIndex> jet_indices(int max_order) const;
  std::vector<MultiIndex> internal_jet_indices(int max_order) const;

  // Solved relation. rhs must be internal and must not contain jets above
  // the chart order.
  void set_relation(const MultiIndex& principal, const RationalExpr& rhs);
  bool has_relation() const { return relation_.has_value(); }
  const MultiIndex& principal() const;
  const RationalExpr& relation_rhs() const;

  bool is_internal(const MultiIndex& idx) const;
  bool is_internal_expr(const RationalExpr& e) const;

  // Rewrites every non-internal jet through the prolonged relation.
  RationalExpr reduce(const RationalExpr& e) const;

  // Prolonged right side for u_{principal + extra}, fully internal.
  RationalExpr prolonged_rhs(const MultiIndex& extra) const;

  // Reduced total derivative restricted to base + jets + params (fibre jets
  // are rejected; coverings supply the extended derivative). Throws
  // OrderOverflow when a jet above the chart order would be needed.
  RationalExpr total_derivative(int dir, const RationalExpr& e) const;

  // Derivative of a single chart symbol in the given base direction, reduced.
  RationalExpr symbol_derivative(int dir, SymbolId s) const;

private:
  Config cfg_;
  std::array<SymbolId, 4> base_{};
  std::map<MultiIndex, SymbolId> jets_;
  std::map<SymbolId, MultiIndex> jet_of_;
  std::map<std::pair<int, int>, SymbolId> fibre_;
  std::map<SymbolId, std::pair<int, int>> fibre_of_;
  std::vector<SymbolId> params_;
  std::map<std::string, SymbolId> param_by_name_;

  std::optional<MultiIndex> principal_;
  std::optional<RationalExpr> relation_;

  mutable std::mutex memo_mu_;
  mutable std::map<MultiIndex, RationalExpr> prolong_memo_;
};

using JetChartPtr = std::shared_ptr<JetChart>;

}  // namespace eds::jet
