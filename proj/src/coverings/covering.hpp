#pragma once

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "exterior/form.hpp"
#include "jetspace/jet_chart.hpp"
#include "symkernel/side_conditions.hpp"

namespace eds::cov {

using ext::Form;
using jet::JetChartPtr;
using jet::MultiIndex;
using sym::RationalExpr;
using sym::SideConditionSet;
using sym::SymbolId;

// Differential covering over a chart with a solved relation: rules
// v_t = F, v_x = G close the t- and x-derivatives of the fibre variable,
// while v_{i,j} are free fibre coordinates counted by (y, z)-derivatives.
class Covering {
public:
  Covering(JetChartPtr chart, RationalExpr rule_t, RationalExpr rule_x);

  const JetChartPtr& chart() const { return chart_; }
  // Defining rule for v_t (dir DirT) or v_x (dir DirX).
  const RationalExpr& rule(int dir) const;

  // Extended total derivative: chart derivative plus the fibre chain rule,
  // with v_t- and v_x-jets eliminated through the prolonged rules.
  RationalExpr extended_derivative(int dir, const RationalExpr& e) const;

  // D_y^i D_z^j of rule(dir), memoized.
  RationalExpr prolonged_rule(int dir, int i, int j) const;

  struct Residual {
    std::string name;
    RationalExpr value;
  };

  // Commutators of extended derivatives over all six direction pairs,
  // applied to the dependent variable and to every fibre jet of order
  // <= depth. All residuals vanish exactly when the rules define a covering.
  std::vector<Residual> zero_curvature(int depth = 1) const;
  bool is_zero_curvature(int depth = 1) const;

  // Largest fibre-jet order appearing in either rule.
  int rule_fibre_order() const;

private:
  struct Memo {
    std::mutex mu;
    std::map<std::tuple<int, int, int>, RationalExpr> rules;
  };

  JetChartPtr chart_;
  std::array<RationalExpr, 4> rules_;
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();
};

// 1-form encoding of a covering over coordinates (base, v):
// omega = dv - F dt - G dx - v_y dy - v_z dz.
struct WeForm {
  ext::ContextPtr ctx;
  ext::Form omega;
  std::array<ext::BasisId, 4> base_diff;
  ext::BasisId fibre_diff;
};

WeForm covering_to_we(const Covering& cov);

struct WeReading {
  Covering covering;
  SideConditionSet side;
};

// Reads a covering back from any 1-form proportional to a covering form.
// The dv coefficient must be nonzero and the dy, dz coefficients must match
// the first-order fibre coordinates after normalization.
WeReading we_to_covering(const ext::Form& omega, const JetChartPtr& chart);

// Affine base map: new^i = sum_k jacobian[i][k] old^k + shift[i]. Entries may
// contain parameters but no chart coordinates.
struct AffineBaseMap {
  std::array<std::array<RationalExpr, 4>, 4> jacobian;
  std::array<RationalExpr, 4> shift;

  static AffineBaseMap identity();
};

struct TransformReport {
  bool equation_preserved = false;
  RationalExpr equation_residual;       // reduced residual of the transformed relation
  std::optional<Covering> transformed;  // set when the equation is preserved
  SideConditionSet side;
};

// Transforms a covering by the prolonged affine base map. The relation must
// be mapped to itself (the report carries the residual otherwise). Rules may
// depend on fibre jets of order <= 1.
TransformReport apply_point_transform(const Covering& cov, const AffineBaseMap& map);

// Point symmetry of the base equation: X = xi^a d_a + eta d_u with xi^a
// functions of the base coordinates and eta a function of base coordinates
// and jets of order <= 1.
struct PointSymmetry {
  std::array<RationalExpr, 4> xi;
  RationalExpr eta;
};

// Residual of the covering's determining equation in direction dir
// (DirT or DirX) for an explicit fibre component phi.
RationalExpr lift_residual(const Covering& cov, const PointSymmetry& sym, int dir,
                           const RationalExpr& phi);

struct LiftReport {
  enum class Status { Liftable, Obstructed };
  Status status = Status::Obstructed;
  int ansatz_order = 0;
  std::size_t unknown_count = 0;
  std::size_t equation_count = 0;
  // Obstructed: human-readable certificate lines combining the split
  // determining equations into a contradiction.
  std::vector<std::string> certificate;
  // Nonvanishing assumptions made while solving.
  std::vector<std::string> side_conditions;
  // Liftable: one consistent assignment for phi and its first partials
  // (free values sent to zero).
  std::vector<std::pair<std::string, std::string>> assignment;
};

// Decides whether the symmetry admits a lift whose fibre component depends
// only on base coordinates, parameters, jets and fibre jets of order
// <= ansatz_order. Obstruction certificates are exact: they exhibit a linear
// combination of split determining equations equal to a nonzero quantity.
LiftReport lift_obstruction(const Covering& cov, const PointSymmetry& sym, int ansatz_order);

}  // namespace eds::cov
