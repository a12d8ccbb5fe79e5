#include <doctest.h>

#include <random>

#include "symkernel/errors.hpp"
#include "symkernel/linear_solver.hpp"
#include "symkernel/poly.hpp"
#include "symkernel/rational_expr.hpp"
#include "symkernel/symbol.hpp"

using namespace eds;
using namespace eds::sym;

namespace {

SymbolId sym_param(const char* name) { return intern_symbol(name, SymbolKind::Parameter); }

struct Gen {
  std::mt19937 rng;
  std::vector<SymbolId> pool;

  explicit Gen(uint32_t seed) : rng(seed) {
    for (const char* n : {"ka", "kb", "kc", "kx", "ky", "kz"}) pool.push_back(sym_param(n));
  }

  int irange(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
  }

  Poly poly(int max_terms = 4) {
    Poly p;
    int terms = irange(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      int c = irange(-5, 5);
      if (c == 0) c = 1;
      Monomial m;
      int nf = irange(0, 3);
      std::vector<std::pair<SymbolId, uint32_t>> fs;
      for (int f = 0; f < nf; ++f)
        fs.emplace_back(pool[static_cast<std::size_t>(irange(0, static_cast<int>(pool.size()) - 1))],
                        static_cast<uint32_t>(irange(1, 2)));
      std::sort(fs.begin(), fs.end());
      for (auto& [s, e] : fs) {
        if (!m.factors.empty() && m.factors.back().first == s)
          m.factors.back().second += e;
        else
          m.factors.emplace_back(s, e);
      }
      p += Poly::term(m, mpq_class(c));
    }
    return p;
  }

  Poly nonzero_poly(int max_terms = 4) {
    for (;;) {
      Poly p = poly(max_terms);
      if (!p.is_zero()) return p;
    }
  }

  RationalExpr expr() { return RationalExpr(poly(), nonzero_poly(3)); }

  RationalExpr nonzero_expr() {
    for (;;) {
      RationalExpr e = expr();
      if (!e.is_zero()) return e;
    }
  }
};

}  // namespace

TEST_CASE("symbol interning gives reference equality for equal names") {
  SymbolId a1 = intern_symbol("intern_probe", SymbolKind::Parameter);
  SymbolId a2 = intern_symbol("intern_probe", SymbolKind::Parameter);
  CHECK(a1 == a2);
  CHECK(symbol_name(a1) == "intern_probe");
  CHECK(symbol_kind(a1) == SymbolKind::Parameter);
  CHECK_THROWS_AS(intern_symbol("intern_probe", SymbolKind::Jet), UnknownSymbolError);
  CHECK(lookup_symbol("never_interned_name") == kNoSymbol);
}

TEST_CASE("graded-lex term order ranks by degree first") {
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  Monomial x2 = Monomial::var(x, 2);
  Monomial xy = Monomial::var(x) * Monomial::var(y);
  Monomial y1 = Monomial::var(y);
  CHECK(grlex_compare(x2, y1) > 0);   // degree 2 beats degree 1
  CHECK(grlex_compare(x2, xy) > 0);   // same degree, earlier variable wins
  CHECK(grlex_compare(xy, xy) == 0);
  CHECK(grlex_compare(y1, x2) < 0);
}

TEST_CASE("polynomial arithmetic basics") {
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  Poly px = Poly::var(x), py = Poly::var(y);
  Poly p = (px + py) * (px - py);
  Poly q = px * px - py * py;
  CHECK(p == q);
  CHECK((p - q).is_zero());
  CHECK(p.degree_in(x) == 2);
  CHECK(p.total_degree() == 2);
  Poly binom = (px + Poly::constant(1)).pow(3);
  Poly expect = px.pow(3) + px.pow(2).scaled(3) + px.scaled(3) + Poly::constant(1);
  CHECK(binom == expect);
}

TEST_CASE("derivative satisfies the product rule on random polynomials") {
  Gen g(2026);
  for (int i = 0; i < 128; ++i) {
    Poly a = g.poly(), b = g.poly();
    SymbolId s = g.pool[static_cast<std::size_t>(g.irange(0, 5))];
    Poly lhs = (a * b).derivative(s);
    Poly rhs = a.derivative(s) * b + a * b.derivative(s);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("exact division round-trips products") {
  Gen g(11);
  for (int i = 0; i < 128; ++i) {
    Poly a = g.nonzero_poly(), b = g.nonzero_poly();
    Poly prod = a * b;
    auto q = prod.divide_exact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  auto fail = (Poly::var(x) + Poly::constant(1)).divide_exact(Poly::var(y));
  CHECK(!fail.has_value());
}

TEST_CASE("gcd of constructed common factors") {
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  Poly px = Poly::var(x), py = Poly::var(y);
  Poly d = px - py;
  Poly a = d * (px + py);
  Poly b = d * (px + py.scaled(2));
  Poly g = poly_gcd(a, b);
  CHECK(g == d);  // d is already primitive with positive leading coefficient

  // Coprime inputs.
  CHECK(poly_gcd(px + Poly::constant(1), py).is_one());

  // Contents are units in Q[x]: the gcd stays primitive.
  CHECK(poly_gcd(px.scaled(mpq_class(4, 3)), px.scaled(6)) == px);
}

TEST_CASE("gcd divides both inputs and is divisible by planted factors") {
  Gen g(77);
  for (int i = 0; i < 96; ++i) {
    Poly f = g.nonzero_poly(3);
    Poly a = g.nonzero_poly(3) * f;
    Poly b = g.nonzero_poly(3) * f;
    Poly d = poly_gcd(a, b);
    REQUIRE(!d.is_zero());
    CHECK(a.divide_exact(d).has_value());
    CHECK(b.divide_exact(d).has_value());
    Poly fprim = f.content_and_primitive().second;
    CHECK(d.divide_exact(fprim).has_value());
  }
}

TEST_CASE("rational expressions satisfy field axioms on random samples") {
  Gen g(404);
  for (int i = 0; i < 128; ++i) {
    RationalExpr a = g.expr(), b = g.expr(), c = g.expr();
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK(a + RationalExpr::zero() == a);
    CHECK(a * RationalExpr::one() == a);
    RationalExpr nz = g.nonzero_expr();
    CHECK(nz * nz.inverse() == RationalExpr::one());
    CHECK((a / nz) * nz == a);
  }
}

TEST_CASE("normalization is idempotent and keeps the denominator monic") {
  Gen g(505);
  for (int i = 0; i < 128; ++i) {
    RationalExpr e = g.expr();
    RationalExpr again(e.num(), e.den());
    CHECK(again == e);
    if (!e.is_zero()) {
      CHECK(e.den().leading_coefficient() == 1);
      CHECK(poly_gcd(e.num(), e.den()).is_one());
    } else {
      CHECK(e.den().is_one());
    }
  }
}

TEST_CASE("quotient rule for rational derivatives") {
  Gen g(606);
  for (int i = 0; i < 64; ++i) {
    RationalExpr a = g.expr(), b = g.nonzero_expr();
    SymbolId s = g.pool[static_cast<std::size_t>(g.irange(0, 5))];
    RationalExpr lhs = (a / b).derivative(s);
    RationalExpr rhs = (a.derivative(s) * b - a * b.derivative(s)) / (b * b);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("substitution is simultaneous and rejects vanishing denominators") {
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  RationalExpr e = (RationalExpr::from_symbol(x) + RationalExpr::from_symbol(y)) /
                   (RationalExpr::from_symbol(x) - RationalExpr::from_symbol(y));
  std::map<SymbolId, RationalExpr> at_x_2y{{x, RationalExpr::from_symbol(y) * RationalExpr(2)}};
  CHECK(e.substituted(at_x_2y) == RationalExpr(3));

  // x -> y, y -> x swaps simultaneously rather than cascading.
  std::map<SymbolId, RationalExpr> swap_xy{{x, RationalExpr::from_symbol(y)},
                                           {y, RationalExpr::from_symbol(x)}};
  CHECK(e.substituted(swap_xy) == -e);

  std::map<SymbolId, RationalExpr> collapse{{x, RationalExpr::from_symbol(y)}};
  CHECK_THROWS_AS(e.substituted(collapse), VanishingDenominator);
}

TEST_CASE("solve_linear matches Cramer on random 3x3 systems") {
  Gen g(707);
  SymbolId u1 = intern_symbol("lin_u1", SymbolKind::Unknown);
  SymbolId u2 = intern_symbol("lin_u2", SymbolKind::Unknown);
  SymbolId u3 = intern_symbol("lin_u3", SymbolKind::Unknown);
  int solved = 0;
  for (int iter = 0; iter < 200 && solved < 100; ++iter) {
    mpq_class m[3][3], rhs[3];
    for (auto& row : m)
      for (auto& e : row) e = g.irange(-6, 6);
    for (auto& e : rhs) e = g.irange(-6, 6);

    mpq_class det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (det == 0) continue;
    ++solved;

    LinearSystem sys;
    sys.unknowns = {u1, u2, u3};
    SymbolId us[3] = {u1, u2, u3};
    for (int i = 0; i < 3; ++i) {
      RationalExpr eq = RationalExpr(-rhs[i]);
      for (int j = 0; j < 3; ++j)
        eq += RationalExpr(m[i][j]) * RationalExpr::from_symbol(us[j]);
      sys.equations.push_back(eq);
    }
    LinearSolution sol = solve_linear(sys);
    REQUIRE(sol.kind == LinearSolution::Kind::Unique);

    for (int j = 0; j < 3; ++j) {
      // Cramer: replace column j by the right-hand side.
      mpq_class cm[3][3];
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) cm[r][c] = (c == j) ? rhs[r] : m[r][c];
      mpq_class detj = cm[0][0] * (cm[1][1] * cm[2][2] - cm[1][2] * cm[2][1]) -
                       cm[0][1] * (cm[1][0] * cm[2][2] - cm[1][2] * cm[2][0]) +
                       cm[0][2] * (cm[1][0] * cm[2][1] - cm[1][1] * cm[2][0]);
      mpq_class expect = detj / det;
      bool found = false;
      for (const auto& [s, v] : sol.assignment) {
        if (s == us[j]) {
          CHECK(v == RationalExpr(expect));
          found = true;
        }
      }
      CHECK(found);
    }
  }
  CHECK(solved >= 100);
}

TEST_CASE("solve_linear reports certificates for inconsistent systems") {
  SymbolId ux = intern_symbol("lin_cx", SymbolKind::Unknown);
  SymbolId uy = intern_symbol("lin_cy", SymbolKind::Unknown);
  LinearSystem sys;
  sys.unknowns = {ux, uy};
  RationalExpr x = RationalExpr::from_symbol(ux), y = RationalExpr::from_symbol(uy);
  sys.equations = {x + y - RationalExpr(1), x + y - RationalExpr(2)};
  LinearSolution sol = solve_linear(sys);
  REQUIRE(sol.kind == LinearSolution::Kind::Inconsistent);
  // Replay the certificate against the original equations.
  RationalExpr combo;
  for (const auto& [ei, mult] : sol.certificate) combo += mult * sys.equations[ei];
  CHECK(combo == sol.certificate_value);
  CHECK(!sol.certificate_value.is_zero());
  CHECK(!sol.certificate_value.contains(ux));
  CHECK(!sol.certificate_value.contains(uy));
}

TEST_CASE("solve_linear records pivot side conditions on parameters") {
  SymbolId ux = intern_symbol("lin_px", SymbolKind::Unknown);
  SymbolId a = sym_param("lin_pa");
  SymbolId b = sym_param("lin_pb");
  LinearSystem sys;
  sys.unknowns = {ux};
  sys.equations = {RationalExpr::from_symbol(a) * RationalExpr::from_symbol(ux) -
                   RationalExpr::from_symbol(b)};
  LinearSolution sol = solve_linear(sys);
  REQUIRE(sol.kind == LinearSolution::Kind::Unique);
  CHECK(sol.assignment.size() == 1);
  CHECK(sol.assignment[0].second ==
        RationalExpr::from_symbol(b) / RationalExpr::from_symbol(a));
  CHECK(sol.side.contains(Poly::var(a)));
}

TEST_CASE("solve_linear handles parametric systems canonically") {
  SymbolId ux = intern_symbol("lin_fx", SymbolKind::Unknown);
  SymbolId uy = intern_symbol("lin_fy", SymbolKind::Unknown);
  SymbolId uz = intern_symbol("lin_fz", SymbolKind::Unknown);
  LinearSystem sys;
  sys.unknowns = {ux, uy, uz};
  RationalExpr x = RationalExpr::from_symbol(ux), y = RationalExpr::from_symbol(uy),
               z = RationalExpr::from_symbol(uz);
  sys.equations = {x + y + z - RationalExpr(6), x - y - RationalExpr(1)};
  LinearSolution sol = solve_linear(sys);
  REQUIRE(sol.kind == LinearSolution::Kind::Parametric);
  CHECK(sol.free_unknowns.size() == 1);
  auto canon = sol.canonical_assignment();
  // Whatever pivots were chosen, the canonical assignment solves the system.
  std::map<SymbolId, RationalExpr> full = canon;
  for (const auto& eq : sys.equations) CHECK(eq.substituted(full).is_zero());
}

TEST_CASE("solve_linear rejects nonlinear occurrences") {
  SymbolId ux = intern_symbol("lin_nx", SymbolKind::Unknown);
  LinearSystem sys;
  sys.unknowns = {ux};
  RationalExpr x = RationalExpr::from_symbol(ux);
  sys.equations = {x * x - RationalExpr(1)};
  CHECK_THROWS_AS(solve_linear(sys), NonlinearSystem);
  LinearSystem sys2;
  sys2.unknowns = {ux};
  sys2.equations = {RationalExpr(1) / x};
  CHECK_THROWS_AS(solve_linear(sys2), NonlinearSystem);
}

TEST_CASE("canonical printing is stable and name-ordered") {
  SymbolId x = sym_param("kx"), y = sym_param("ky");
  Poly p = Poly::var(y) * Poly::var(y) + Poly::var(x).scaled(-2) + Poly::constant(7);
  CHECK(p.to_string() == "ky^2 - 2*kx + 7");
  RationalExpr e = RationalExpr(Poly::var(x), Poly::var(y).scaled(3));
  CHECK(e.den().leading_coefficient() == 1);
  CHECK(e.to_string() == "1/3*kx/ky");
}
