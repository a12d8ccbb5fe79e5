#include <doctest.h>

#include <random>

#include "coverings/covering.hpp"
#include "heavenly_fixtures.hpp"
#include "symkernel/errors.hpp"

using namespace eds;
using namespace eds::cov;
using jet::DirT;
using jet::DirX;
using jet::DirY;
using jet::DirZ;
using jet::MultiIndex;
using sym::RationalExpr;
using sym::SymbolId;

namespace {

RationalExpr u2(const jet::JetChartPtr& chart, int a, int b) {
  return RationalExpr::from_symbol(chart->jet(MultiIndex::of(a, b)));
}

}  // namespace

TEST_CASE("the one-parameter pair of rules has zero curvature") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  auto residuals = cov.zero_curvature(1);
  // 6 direction pairs, each checked on u and on v[0,0], v[1,0], v[0,1]
  CHECK(residuals.size() == 24);
  for (const auto& r : residuals) {
    INFO(r.name);
    CHECK(r.value.is_zero());
  }
  CHECK(cov.is_zero_curvature(1));
}

TEST_CASE("the parameter-free nonlinear pair of rules has zero curvature") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::nonlinear_covering(chart);
  for (const auto& r : cov.zero_curvature(1)) {
    INFO(r.name);
    CHECK(r.value.is_zero());
  }
}

TEST_CASE("every single sign flip in the rules breaks zero curvature") {
  auto chart = fixtures::heavenly_chart();
  RationalExpr lam = RationalExpr::from_symbol(chart->param("lambda"));
  RationalExpr vy = RationalExpr::from_symbol(chart->fibre(1, 0));
  RationalExpr vz = RationalExpr::from_symbol(chart->fibre(0, 1));
  RationalExpr uyy = u2(chart, DirY, DirY);
  RationalExpr uyz = u2(chart, DirY, DirZ);
  RationalExpr uzz = u2(chart, DirZ, DirZ);

  // the six terms, with their reference signs
  // v_t = uyz*vz + lam*vz - uzz*vy ; v_x = uyy*vz - uyz*vy + lam*vy
  for (int flip = 0; flip < 6; ++flip) {
    std::array<int, 6> s{1, 1, 1, 1, 1, 1};
    s[static_cast<std::size_t>(flip)] = -1;
    RationalExpr f = uyz * vz * RationalExpr(s[0]) + lam * vz * RationalExpr(s[1]) -
                     uzz * vy * RationalExpr(s[2]);
    RationalExpr g = uyy * vz * RationalExpr(s[3]) - uyz * vy * RationalExpr(s[4]) +
                     lam * vy * RationalExpr(s[5]);
    Covering mutant(chart, f, g);
    INFO("flipped term ", flip);
    CHECK_FALSE(mutant.is_zero_curvature(1));
  }
}

TEST_CASE("extended derivatives commute in the fibre directions") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);

  std::mt19937 rng(61'803);
  auto pick = [&](int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
  };
  std::vector<SymbolId> pool;
  for (int d = 0; d < 4; ++d) pool.push_back(chart->base(d));
  for (const auto& idx : chart->internal_jet_indices(1)) pool.push_back(chart->jet(idx));
  pool.push_back(chart->fibre(0, 0));
  pool.push_back(chart->fibre(1, 0));
  pool.push_back(chart->fibre(0, 1));
  pool.push_back(chart->param("lambda"));

  int ran = 0;
  for (int it = 0; it < 100; ++it) {
    RationalExpr e(pick(-2, 2));
    int nt = pick(1, 3);
    for (int t = 0; t < nt; ++t) {
      RationalExpr m(pick(-3, 3));
      int nf = pick(1, 2);
      for (int f = 0; f < nf; ++f)
        m *= RationalExpr::from_symbol(pool[static_cast<std::size_t>(
            pick(0, static_cast<int>(pool.size()) - 1))]);
      e += m;
    }
    RationalExpr yz = cov.extended_derivative(DirY, cov.extended_derivative(DirZ, e));
    RationalExpr zy = cov.extended_derivative(DirZ, cov.extended_derivative(DirY, e));
    CHECK(yz == zy);
    if (it % 5 == 0) {
      RationalExpr ty = cov.extended_derivative(DirT, cov.extended_derivative(DirY, e));
      RationalExpr yt = cov.extended_derivative(DirY, cov.extended_derivative(DirT, e));
      CHECK(ty == yt);
    }
    ++ran;
  }
  CHECK(ran == 100);
}

TEST_CASE("prolonged rules agree across derivative orders") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  for (int dir : {DirT, DirX}) {
    RationalExpr via_y = cov.extended_derivative(DirY, cov.prolonged_rule(dir, 0, 1));
    RationalExpr via_z = cov.extended_derivative(DirZ, cov.prolonged_rule(dir, 1, 0));
    CHECK(via_y == via_z);
    CHECK(via_y == cov.prolonged_rule(dir, 1, 1));
  }
}

TEST_CASE("covering and 1-form encodings convert both ways") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  WeForm w = covering_to_we(cov);
  CHECK(w.omega.degree() == 1);
  CHECK(RationalExpr::compare(w.omega.coefficient(w.fibre_diff), RationalExpr(1)) == 0);

  WeReading back = we_to_covering(w.omega, chart);
  CHECK(back.covering.rule(DirT) == cov.rule(DirT));
  CHECK(back.covering.rule(DirX) == cov.rule(DirX));
  CHECK(back.side.to_strings().empty());

  // reading is projective: any nonzero multiple gives the same covering
  RationalExpr scale = u2(chart, DirY, DirY) + RationalExpr(3);
  WeReading scaled = we_to_covering(w.omega.scaled(scale), chart);
  CHECK(scaled.covering.rule(DirT) == cov.rule(DirT));
  CHECK(scaled.covering.rule(DirX) == cov.rule(DirX));
  CHECK_FALSE(scaled.side.to_strings().empty());

  // tampering with the dy coefficient is rejected
  ext::Form bad = w.omega + ext::Form::basis(w.ctx, w.base_diff[DirY]);
  CHECK_THROWS_AS(we_to_covering(bad, chart), Error);

  // a form with no dv component is rejected
  ext::Form no_dv = ext::Form::basis(w.ctx, w.base_diff[DirT]);
  CHECK_THROWS_AS(we_to_covering(no_dv, chart), Error);
}

TEST_CASE("the shear flow moving y along x and z along t preserves the equation") {
  auto chart = fixtures::heavenly_chart(4, true, 3, {"eps"});
  Covering cov = fixtures::linear_covering(chart);
  RationalExpr eps = RationalExpr::from_symbol(chart->param("eps"));

  AffineBaseMap map = AffineBaseMap::identity();
  map.jacobian[DirY][DirX] = eps;  // new y = y + eps*x
  map.jacobian[DirZ][DirT] = eps;  // new z = z + eps*t

  TransformReport rep = apply_point_transform(cov, map);
  CHECK(rep.equation_preserved);
  REQUIRE(rep.transformed.has_value());

  // the parameter moves: rules of the image equal the rules with
  // lambda replaced by lambda - eps
  RationalExpr lam = RationalExpr::from_symbol(chart->param("lambda"));
  std::map<SymbolId, RationalExpr> shift{{chart->param("lambda"), lam - eps}};
  CHECK(rep.transformed->rule(DirT) == cov.rule(DirT).substituted(shift));
  CHECK(rep.transformed->rule(DirX) == cov.rule(DirX).substituted(shift));

  // so the parameter-free rules generate the whole family
  std::map<SymbolId, RationalExpr> kill{{chart->param("lambda"), RationalExpr()}};
  Covering plain(chart, cov.rule(DirT).substituted(kill), cov.rule(DirX).substituted(kill));
  TransformReport family = apply_point_transform(plain, map);
  REQUIRE(family.transformed.has_value());
  std::map<SymbolId, RationalExpr> neg{{chart->param("lambda"), -eps}};
  CHECK(family.transformed->rule(DirT) == cov.rule(DirT).substituted(neg));
  CHECK(family.transformed->rule(DirX) == cov.rule(DirX).substituted(neg));
}

TEST_CASE("the transposed shear fails to preserve the equation") {
  auto chart = fixtures::heavenly_chart(4, true, 3, {"eps"});
  Covering cov = fixtures::linear_covering(chart);
  RationalExpr eps = RationalExpr::from_symbol(chart->param("eps"));

  AffineBaseMap map = AffineBaseMap::identity();
  map.jacobian[DirY][DirT] = eps;  // new y = y + eps*t
  map.jacobian[DirZ][DirX] = eps;  // new z = z + eps*x

  TransformReport rep = apply_point_transform(cov, map);
  CHECK_FALSE(rep.equation_preserved);
  CHECK_FALSE(rep.transformed.has_value());
  RationalExpr expected = eps * (u2(chart, DirZ, DirZ) - u2(chart, DirY, DirY));
  CHECK(rep.equation_residual == expected);
}

TEST_CASE("identity and invertible scalings act trivially on the equation") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  TransformReport rep = apply_point_transform(cov, AffineBaseMap::identity());
  CHECK(rep.equation_preserved);
  REQUIRE(rep.transformed.has_value());
  CHECK(rep.transformed->rule(DirT) == cov.rule(DirT));
  CHECK(rep.transformed->rule(DirX) == cov.rule(DirX));
}

TEST_CASE("translations lift with a vanishing fibre component") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  for (int a = 0; a < 4; ++a) {
    PointSymmetry sym;
    for (int b = 0; b < 4; ++b) sym.xi[static_cast<std::size_t>(b)] = RationalExpr(a == b ? 1 : 0);
    sym.eta = RationalExpr();
    for (int dir : {DirT, DirX}) {
      INFO("translation ", a, " direction ", dir);
      CHECK(lift_residual(cov, sym, dir, RationalExpr()).is_zero());
    }
  }

  PointSymmetry dt;
  dt.xi = {RationalExpr(1), RationalExpr(), RationalExpr(), RationalExpr()};
  dt.eta = RationalExpr();
  LiftReport rep = lift_obstruction(cov, dt, 1);
  CHECK(rep.status == LiftReport::Status::Liftable);
  CHECK(rep.unknown_count > 0);
  CHECK(rep.equation_count > 0);
}

TEST_CASE("the shear symmetry admits no lift with first-order fibre component") {
  auto chart = fixtures::heavenly_chart();
  Covering cov = fixtures::linear_covering(chart);
  PointSymmetry shear;
  shear.xi = {RationalExpr(), RationalExpr(),
              RationalExpr::from_symbol(chart->base(DirX)),
              RationalExpr::from_symbol(chart->base(DirT))};
  shear.eta = RationalExpr();

  // no constant fibre component works
  CHECK_FALSE(lift_residual(cov, shear, DirT, RationalExpr()).is_zero());

  LiftReport rep = lift_obstruction(cov, shear, 1);
  CHECK(rep.status == LiftReport::Status::Obstructed);
  CHECK_FALSE(rep.certificate.empty());
}

TEST_CASE("rule validation rejects foreign symbols and missing fibre") {
  auto chart = fixtures::heavenly_chart();
  SymbolId foreign = sym::intern_symbol("cov_foreign", sym::SymbolKind::Invariant);
  CHECK_THROWS_AS(Covering(chart, RationalExpr::from_symbol(foreign), RationalExpr()), Error);
  auto bare = fixtures::heavenly_chart(4, false);
  CHECK_THROWS_AS(Covering(bare, RationalExpr(), RationalExpr()), Error);
}
