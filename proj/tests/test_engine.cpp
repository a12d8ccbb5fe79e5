#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "engine/structure_set.hpp"
#include "engine/structure_table.hpp"

using namespace eds;
using eng::StructureSet;

namespace {

uint64_t mix(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

bool is_free(const std::string& name) {
  const auto& fr = eng::free_form_names();
  return std::find(fr.begin(), fr.end(), name) != fr.end();
}

}  // namespace

TEST_CASE("structure set exposes the full basis and its rules") {
  StructureSet set;
  CHECK(set.context()->basis_size() == 60);
  CHECK(set.context()->basis_kind(*set.context()->find_basis("th0")) == ext::BasisKind::Formal);
  CHECK(set.context()->basis_kind(*set.context()->find_basis("eta23")) == ext::BasisKind::Free);
  CHECK(set.rules().size() == 40);

  // d(th0) = (eta1 + eta4) ^ th0 + xi-tail, as a 2-form over the basis.
  ext::Form dth0 = set.d_form("th0");
  CHECK(dth0.degree() == 2);
  ext::Form expect = eng::rule_to_form(set.context(), set.rules().at("th0"));
  CHECK((dth0 - expect).is_zero());
}

TEST_CASE("every structure rule is d2-consistent") {
  StructureSet set;
  auto checks = set.closure_all();
  REQUIRE(checks.size() == 40);

  std::size_t full = 0, partial = 0;
  for (const auto& c : checks) {
    std::string label = c.name + " [" + c.mode + "]";
    INFO(label);
    CHECK(c.pass);
    if (c.mode == "full")
      ++full;
    else
      ++partial;
  }
  CHECK(full == 24);
  CHECK(partial == 16);

  std::map<std::string, std::string> modes;
  for (const auto& c : checks) modes[c.name] = c.mode;
  CHECK(modes["d2(th0)"] == "full");
  CHECK(modes["d2(eta6)"] == "full");
  CHECK(modes["d2(th44)"] == "full");
  CHECK(modes["d2(eta7)"] == "partial mod <xi1,xi2,xi3,xi4>");
  CHECK(modes["d2(eta9)"] == "partial mod <xi1,xi2>");
  CHECK(modes["d2(eta15)"] == "partial mod <th3,th4,xi1,xi2,xi3,xi4>");
  CHECK(modes["d2(eta19)"] == "partial mod <th1,th2,th3,th4,xi1,xi2,xi3,xi4>");
  CHECK(modes["d2(eta22)"] == "partial mod <th1,th2,th3,th4,xi1,xi2,xi3,xi4>");
}

TEST_CASE("flipping the eta5 term of the th3 rule breaks closure") {
  auto rules = eng::structure_rules();
  bool touched = false;
  for (auto& term : rules["th3"]) {
    if (term.left == "eta5" && term.right == "th3") {
      term.coef = -term.coef;
      touched = true;
    }
  }
  REQUIRE(touched);
  StructureSet mutant(rules);
  CHECK_FALSE(mutant.closure_check("th0").pass);
  CHECK(StructureSet().closure_check("th0").pass);
}

TEST_CASE("random sign flips of ruled terms are detected by closure") {
  // Candidate terms: both factors ruled. Free-form factors are sign
  // conventions (they rescale the free form) and are excluded.
  std::vector<std::pair<std::string, std::size_t>> spots;
  const auto base = eng::structure_rules();
  for (const auto& [name, rule] : base)
    for (std::size_t i = 0; i < rule.size(); ++i)
      if (!is_free(rule[i].left) && !is_free(rule[i].right)) spots.emplace_back(name, i);
  REQUIRE(spots.size() > 100);

  uint64_t state = 20260819u;
  int detected = 0;
  const int kCases = 100;
  for (int it = 0; it < kCases; ++it) {
    auto [name, idx] = spots[mix(state) % spots.size()];
    auto rules = base;
    rules[name][idx].coef = -rules[name][idx].coef;
    StructureSet mutant(rules);

    std::set<std::string> affected{name};
    for (const auto& other : mutant.rules_mentioning(name)) affected.insert(other);
    bool caught = false;
    for (const auto& a : affected)
      if (!mutant.closure_check(a).pass) {
        caught = true;
        break;
      }
    std::string label = "flip " + name + "[" + std::to_string(idx) + "] escaped the closure battery";
    INFO(label);
    CHECK(caught);
    detected += caught;
  }
  CHECK(detected == kCases);
}

TEST_CASE("tableau rows follow the free terms of the eta rules") {
  auto rows = eng::structure_tableau();
  REQUIRE(rows.size() == 16);

  auto entry = [](int a, int b, int c, int d) {
    std::array<std::optional<int>, 4> r;
    if (a) r[0] = a;
    if (b) r[1] = b;
    if (c) r[2] = c;
    if (d) r[3] = d;
    return r;
  };
  CHECK(rows[0] == entry(23, 24, 25, 26));   // eta7
  CHECK(rows[1] == entry(24, 27, 28, 25));   // eta8
  CHECK(rows[2] == entry(25, 28, 0, 0));     // eta9
  CHECK(rows[3] == entry(26, 25, 0, 0));     // eta10
  CHECK(rows[8] == entry(33, 34, 24, 23));   // eta15
  CHECK(rows[15] == entry(42, 41, 36, 37));  // eta22

  int complete = 0, half = 0;
  std::set<int> used;
  for (const auto& r : rows) {
    int n = 0;
    for (const auto& e : r)
      if (e) {
        ++n;
        used.insert(*e);
      }
    if (n == 4) ++complete;
    if (n == 2) ++half;
  }
  CHECK(complete == 12);
  CHECK(half == 4);
  CHECK(used.size() == 20);
  CHECK(*used.begin() == 23);
  CHECK(*used.rbegin() == 42);
}

TEST_CASE("reduced characters and prolongation pass the involutivity test") {
  for (uint64_t seed : {20260819ull, 424242ull}) {
    auto report = eng::cartan_characters(seed);
    CHECK(report.characters[0] == 16);
    CHECK(report.characters[1] == 4);
    CHECK(report.characters[2] == 0);
    CHECK(report.characters[3] == 0);
    CHECK(report.prolongation_dim == 24);
    CHECK(report.involutive);
  }
}

TEST_CASE("characters are stable across one hundred seeds") {
  uint64_t state = 7u;
  for (int i = 0; i < 100; ++i) {
    auto report = eng::cartan_characters(mix(state));
    CHECK(report.characters == std::array<std::size_t, 4>{16, 4, 0, 0});
    CHECK(report.prolongation_dim == 24);
    CHECK(report.involutive);
  }
}
