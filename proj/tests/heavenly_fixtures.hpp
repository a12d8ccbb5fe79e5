#pragma once

#include "coverings/covering.hpp"
#include "jetspace/jet_chart.hpp"

namespace fixtures {

using eds::jet::JetChart;
using eds::jet::MultiIndex;
using eds::sym::RationalExpr;

// Chart for the second heavenly equation with the mixed x,z derivative solved
// for: u_xz = u_ty + u_yy*u_zz - u_yz^2.
inline std::shared_ptr<JetChart> heavenly_chart(int jet_order = 4, bool with_fibre = true,
                                                int fibre_order = 3,
                                                std::vector<std::string> extra_params = {}) {
  JetChart::Config cfg;
  cfg.dependent = "u";
  cfg.jet_order = jet_order;
  if (with_fibre) {
    cfg.fibre = "v";
    cfg.fibre_order = fibre_order;
  }
  cfg.params = {"lambda"};
  for (auto& p : extra_params) cfg.params.push_back(p);
  auto chart = std::make_shared<JetChart>(cfg);

  auto J = [&](std::initializer_list<int> dirs) {
    MultiIndex m;
    for (int d : dirs) m = m.plus(d);
    return m;
  };
  using eds::jet::DirT;
  using eds::jet::DirX;
  using eds::jet::DirY;
  using eds::jet::DirZ;
  auto u = [&](std::initializer_list<int> dirs) {
    return RationalExpr::from_symbol(chart->jet(J(dirs)));
  };
  RationalExpr rhs = u({DirT, DirY}) + u({DirY, DirY}) * u({DirZ, DirZ}) -
                     u({DirY, DirZ}) * u({DirY, DirZ});
  chart->set_relation(J({DirX, DirZ}), rhs);
  return chart;
}

// One-parameter covering: v_t = (u_yz + lambda) v_z - u_zz v_y,
//                         v_x = u_yy v_z - (u_yz - lambda) v_y.
inline eds::cov::Covering linear_covering(const std::shared_ptr<JetChart>& chart) {
  using eds::jet::DirY;
  using eds::jet::DirZ;
  auto u2 = [&](int a, int b) {
    return RationalExpr::from_symbol(chart->jet(MultiIndex::of(a, b)));
  };
  RationalExpr lam = RationalExpr::from_symbol(chart->param("lambda"));
  RationalExpr vy = RationalExpr::from_symbol(chart->fibre(1, 0));
  RationalExpr vz = RationalExpr::from_symbol(chart->fibre(0, 1));
  RationalExpr f = (u2(DirY, DirZ) + lam) * vz - u2(DirZ, DirZ) * vy;
  RationalExpr g = u2(DirY, DirY) * vz - (u2(DirY, DirZ) - lam) * vy;
  return eds::cov::Covering(chart, f, g);
}

// Parameter-free variant with the fibre variable itself in the parameter
// slot: v_t = (u_yz + v) v_z - u_zz v_y, v_x = u_yy v_z - (u_yz - v) v_y.
inline eds::cov::Covering nonlinear_covering(const std::shared_ptr<JetChart>& chart) {
  using eds::jet::DirY;
  using eds::jet::DirZ;
  auto u2 = [&](int a, int b) {
    return RationalExpr::from_symbol(chart->jet(MultiIndex::of(a, b)));
  };
  RationalExpr v = RationalExpr::from_symbol(chart->fibre(0, 0));
  RationalExpr vy = RationalExpr::from_symbol(chart->fibre(1, 0));
  RationalExpr vz = RationalExpr::from_symbol(chart->fibre(0, 1));
  RationalExpr f = (u2(DirY, DirZ) + v) * vz - u2(DirZ, DirZ) * vy;
  RationalExpr g = u2(DirY, DirY) * vz - (u2(DirY, DirZ) - v) * vy;
  return eds::cov::Covering(chart, f, g);
}

}  // namespace fixtures
