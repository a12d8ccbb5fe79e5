#include <doctest.h>

#include <map>
#include <set>
#include <string>

#include "coframe/heavenly_coframe.hpp"
#include "engine/structure_table.hpp"
#include "exterior/form.hpp"
#include "symkernel/errors.hpp"

using namespace eds;
using cfm::build_explicit_coframe;
using cfm::CoframeOptions;
using cfm::ExplicitCoframe;
using cfm::IdentityCheck;
using cfm::verify_one_identity;
using cfm::verify_structure_identities;
using eng::StructureRule;
using eng::StructureTerm;
using ext::Form;
using sym::RationalExpr;

namespace {

std::map<std::string, IdentityCheck> by_name(const std::vector<IdentityCheck>& checks) {
  std::map<std::string, IdentityCheck> m;
  for (const auto& c : checks) m[c.name] = c;
  return m;
}

RationalExpr pr(const ExplicitCoframe& cf, const char* name) {
  return RationalExpr::from_symbol(cf.chart->param(name));
}

Form dparam(const ExplicitCoframe& cf, const char* name) {
  return Form::basis(cf.ctx, *cf.ctx->coordinate_basis(cf.chart->param(name)));
}

}  // namespace

TEST_CASE("explicit coframe satisfies the full structure identity battery") {
  ExplicitCoframe cf = build_explicit_coframe();
  auto checks = verify_structure_identities(cf);
  REQUIRE(checks.size() == 19);

  std::size_t exact = 0, reduced = 0;
  for (const auto& c : checks) {
    std::string label = c.name + " " + c.mode + " residual terms " +
                        std::to_string(c.residual_terms);
    INFO(label);
    CHECK(c.pass);
    if (c.mode == "exact")
      ++exact;
    else
      ++reduced;
  }
  CHECK(exact == 7);
  CHECK(reduced == 12);

  auto m = by_name(checks);
  for (const char* n : {"d(th0)", "d(xi1)", "d(xi2)", "d(xi3)", "d(xi4)", "d(eta5)", "d(vt0)"})
    CHECK(m.at(n).mode == "exact");
  for (const char* n : {"d(th1)", "d(th2)", "d(th33)", "d(th34)", "d(th44)", "d(eta6)"})
    CHECK(m.at(n).mode == "mod <xi1,xi2,xi3,xi4>");
  for (const char* n : {"d(th3)", "d(th4)", "d(eta1)", "d(eta2)", "d(eta3)", "d(eta4)"})
    CHECK(m.at(n).mode == "mod <xi1,xi2>");
}

TEST_CASE("independence: the 18 forms have full rank over the 40 differentials") {
  ExplicitCoframe cf = build_explicit_coframe();
  sym::SideConditionSet side;
  CHECK(cfm::coframe_independent(cf, 20260819u, &side));
  CHECK(cfm::coframe_independent(cf, 424242u));

  RationalExpr b0 = pr(cf, "b11") * pr(cf, "b22") - pr(cf, "b12") * pr(cf, "b21");
  CHECK(cf.side.contains(b0.num()));
  CHECK(cf.side.contains(pr(cf, "b3").num()));
}

TEST_CASE("th4 scale adjudication: b3^2 passes, b3^1 breaks d(th0)") {
  CoframeOptions bad;
  bad.theta4_b3_squared = false;
  ExplicitCoframe cf = build_explicit_coframe(bad);
  CHECK_FALSE(verify_one_identity(cf, "th0").pass);
  CHECK_FALSE(verify_one_identity(cf, "th4").pass);

  ExplicitCoframe good = build_explicit_coframe();
  CHECK(verify_one_identity(good, "th0").pass);
  CHECK(verify_one_identity(good, "th4").pass);
}

TEST_CASE("xi3 dx-coefficient adjudication: u_yz + b4 passes, u_yz - b4 fails") {
  CoframeOptions bad;
  bad.xi3_dx_plus_b4 = false;
  ExplicitCoframe cf = build_explicit_coframe(bad);
  CHECK_FALSE(verify_one_identity(cf, "th0").pass);
  CHECK_FALSE(verify_one_identity(cf, "xi3").pass);
}

TEST_CASE("xi4 dt-coefficient adjudication: only the reversed sign passes") {
  CoframeOptions bad;
  bad.xi4_dt_flipped = false;
  ExplicitCoframe cf = build_explicit_coframe(bad);
  CHECK_FALSE(verify_one_identity(cf, "th0").pass);
  CHECK_FALSE(verify_one_identity(cf, "xi4").pass);
}

TEST_CASE("eta3/eta4 adjudication: inhomogeneous two-step shape breaks d(xi2)") {
  CoframeOptions bad;
  bad.eta34_combined = false;
  ExplicitCoframe cf = build_explicit_coframe(bad);
  CHECK(verify_one_identity(cf, "xi1").pass);  // eta1, eta2 are unaffected
  CHECK_FALSE(verify_one_identity(cf, "xi2").pass);
}

TEST_CASE("d(th3) sign adjudication: the eta5 coefficient must be +2/3") {
  ExplicitCoframe cf = build_explicit_coframe();
  CHECK(verify_one_identity(cf, "th3").pass);

  StructureRule flipped;
  for (StructureTerm t : eng::structure_rules().at("th3")) {
    if (t.left == "eta5") t.coef = -t.coef;
    flipped.push_back(t);
  }
  CHECK_FALSE(verify_one_identity(cf, "th3", flipped).pass);
}

TEST_CASE("rule perturbations are detected by the battery") {
  ExplicitCoframe cf = build_explicit_coframe();

  StructureRule r = eng::structure_rules().at("xi3");
  for (auto& t : r)
    if (t.left == "th34") t.coef = 1;  // printed coefficient is 2
  CHECK_FALSE(verify_one_identity(cf, "xi3", r).pass);

  r = eng::structure_rules().at("th34");
  for (auto& t : r)
    if (t.left == "eta3") t.coef = -t.coef;
  CHECK_FALSE(verify_one_identity(cf, "th34", r).pass);
}

TEST_CASE("combined eta forms equal the homogeneous two-step expressions") {
  ExplicitCoframe cf = build_explicit_coframe();
  RationalExpr b11 = pr(cf, "b11"), b12 = pr(cf, "b12"), b21 = pr(cf, "b21"),
               b22 = pr(cf, "b22"), b3 = pr(cf, "b3");
  RationalExpr b0 = b11 * b22 - b12 * b21;
  Form db11 = dparam(cf, "b11"), db12 = dparam(cf, "b12"), db21 = dparam(cf, "b21"),
       db22 = dparam(cf, "b22"), db3 = dparam(cf, "b3");

  auto uj = [&](std::initializer_list<int> dirs) {
    jet::MultiIndex m;
    for (int d : dirs) m = m.plus(d);
    return RationalExpr::from_symbol(cf.chart->jet(m));
  };
  using jet::DirY;
  using jet::DirZ;
  RationalExpr uyyy = uj({DirY, DirY, DirY}), uyyz = uj({DirY, DirY, DirZ}),
               uyzz = uj({DirY, DirZ, DirZ}), uzzz = uj({DirZ, DirZ, DirZ});

  const Form& xi1 = cf.form("xi1");
  const Form& xi2 = cf.form("xi2");

  RationalExpr c33 = b21 * b21 * uyyy - RationalExpr(2) * b21 * b22 * uyyz + b22 * b22 * uyzz;
  RationalExpr c34 = b11 * b21 * uyyy - (b11 * b22 + b12 * b21) * uyyz + b12 * b22 * uyzz;
  Form eta3_steps = (db21.scaled(b12 * b22) - db11.scaled(b22 * b22) - db22.scaled(b12 * b21) +
                     db12.scaled(b21 * b22))
                        .scaled((b12 * b0).inverse()) +
                    cf.form("eta1").scaled(b22 / b12) +
                    (xi1.scaled(c33) - xi2.scaled(c34)).scaled((b12 * b0).inverse());
  CHECK(eta3_steps == cf.form("eta3"));

  RationalExpr c43 = (b11 * b22 + b12 * b21) * uyzz - b11 * b21 * uyyz - b12 * b22 * uzzz;
  RationalExpr c44 = b11 * b11 * uyyz - RationalExpr(2) * b11 * b12 * uyzz + b12 * b12 * uzzz;
  Form eta4_steps = (db11.scaled(b12 * b21) - db12.scaled(b11 * b21) - db21.scaled(b11 * b12) +
                     db22.scaled(b11 * b11))
                        .scaled((b11 * b0).inverse()) +
                    cf.form("eta2").scaled(b21 / b11) +
                    (xi1.scaled(c43) + xi2.scaled(c44)).scaled((b11 * b0).inverse());
  CHECK(eta4_steps == cf.form("eta4"));

  // eta5 is the logarithmic differential of the th0 scale factor b3^3 b0.
  Form dlog = db3.scaled(RationalExpr(3) / b3) + ext::d_scalar(cf.ctx, b0).scaled(b0.inverse());
  CHECK(dlog == cf.form("eta5"));
}

TEST_CASE("restricted contact forms repeat the equation in two slots") {
  ExplicitCoframe cf = build_explicit_coframe();
  using jet::DirT;
  using jet::DirX;
  using jet::DirY;
  using jet::DirZ;

  auto uj = [&](std::initializer_list<int> dirs) {
    jet::MultiIndex m;
    for (int d : dirs) m = m.plus(d);
    return RationalExpr::from_symbol(cf.chart->jet(m));
  };
  RationalExpr R = uj({DirT, DirY}) + uj({DirY, DirY}) * uj({DirZ, DirZ}) -
                   uj({DirY, DirZ}) * uj({DirY, DirZ});

  auto dbase = [&](int a) { return Form::basis(cf.ctx, *cf.ctx->coordinate_basis(cf.chart->base(a))); };
  RationalExpr dz_coef_vt2 = cf.contact_form("vt2").coefficient(
      *cf.ctx->coordinate_basis(cf.chart->base(DirZ)));
  RationalExpr dx_coef_vt4 = cf.contact_form("vt4").coefficient(
      *cf.ctx->coordinate_basis(cf.chart->base(DirX)));
  CHECK(dz_coef_vt2 == -R);
  CHECK(dx_coef_vt4 == -R);

  // d(vt0) telescopes through the first-order contact forms.
  Form res = cf.contact_form("vt0").ext_d();
  const char* names[4] = {"vt1", "vt2", "vt3", "vt4"};
  for (int a = 0; a < 4; ++a) res -= dbase(a).wedge(cf.contact_form(names[a]));
  CHECK(res.is_zero());
}

TEST_CASE("structure table shape: 40 ruled forms, 20 free forms, no th24") {
  const auto& rules = eng::structure_rules();
  CHECK(rules.size() == 40);
  CHECK(eng::ruled_form_names().size() == 40);
  CHECK(eng::free_form_names().size() == 20);
  CHECK(rules.count("th24") == 0);
  CHECK(rules.at("eta5").empty());

  std::set<std::string> known(eng::ruled_form_names().begin(), eng::ruled_form_names().end());
  std::set<std::string> free(eng::free_form_names().begin(), eng::free_form_names().end());
  const std::set<std::string> partners = {"xi1", "xi2", "xi3", "xi4",
                                          "th1", "th2", "th3", "th4"};
  for (const auto& [name, rule] : rules) {
    CHECK(known.count(name) == 1);
    CHECK(free.count(name) == 0);
    for (const auto& t : rule) {
      CHECK(t.coef != 0);
      CHECK((known.count(t.left) || free.count(t.left)));
      CHECK((known.count(t.right) || free.count(t.right)));
      // a free form never meets another free form, and its partner is
      // always one of the eight first-level forms
      bool lf = free.count(t.left) > 0, rf = free.count(t.right) > 0;
      CHECK(!(lf && rf));
      if (lf) CHECK(partners.count(t.right) == 1);
      if (rf) CHECK(partners.count(t.left) == 1);
    }
  }
}
