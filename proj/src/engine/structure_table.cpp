#include "engine/structure_table.hpp"

namespace eds::eng {

namespace {

StructureTerm t(long num, long den, const char* l, const char* r) {
  StructureTerm s;
  s.coef = mpq_class(num, den);
  s.coef.canonicalize();
  s.left = l;
  s.right = r;
  return s;
}

StructureTerm t(long c, const char* l, const char* r) { return t(c, 1, l, r); }

std::map<std::string, StructureRule> make_rules() {
  std::map<std::string, StructureRule> m;

  m["th0"] = {t(1, "eta5", "th0"), t(1, "xi1", "th1"), t(1, "xi2", "th2"),
              t(1, "xi3", "th3"), t(1, "xi4", "th4")};

  m["th1"] = {t(1, "eta5", "th1"),  t(-1, "eta1", "th1"), t(-1, "eta3", "th2"),
              t(-1, "th44", "th3"), t(1, "eta6", "th4"),  t(1, "xi1", "th11"),
              t(1, "xi2", "th12"),  t(1, "xi3", "th13"),  t(1, "xi4", "th14")};

  m["th2"] = {t(-1, "eta2", "th1"), t(1, "eta5", "th2"), t(-1, "eta4", "th2"),
              t(1, "eta6", "th3"),  t(-2, "th34", "th3"), t(1, "th33", "th4"),
              t(1, "xi1", "th12"),  t(1, "xi2", "th22"), t(1, "xi3", "th23"),
              t(1, "xi4", "th13")};

  // The eta5 coefficient is +2/3: d(d(th0)) = 0 forces it, and the explicit
  // realization satisfies only this sign.
  m["th3"] = {t(1, 3, "eta1", "th3"), t(-2, 3, "eta4", "th3"), t(2, 3, "eta5", "th3"),
              t(-1, "eta2", "th4"),   t(1, "xi1", "th13"),     t(1, "xi2", "th23"),
              t(1, "xi3", "th33"),    t(1, "xi4", "th34")};

  m["th4"] = {t(-1, "eta3", "th3"), t(1, 3, "eta4", "th4"), t(-2, 3, "eta1", "th4"),
              t(2, 3, "eta5", "th4"), t(1, "xi1", "th14"),  t(1, "xi2", "th13"),
              t(1, "xi3", "th34"),    t(1, "xi4", "th44")};

  m["xi1"] = {t(1, "eta1", "xi1"), t(1, "eta2", "xi2")};
  m["xi2"] = {t(1, "eta3", "xi1"), t(1, "eta4", "xi2")};

  m["xi3"] = {t(1, "th44", "xi1"),     t(-1, "eta6", "xi2"),    t(2, "th34", "xi2"),
              t(1, 3, "eta5", "xi3"),  t(-1, 3, "eta1", "xi3"), t(2, 3, "eta4", "xi3"),
              t(1, "eta3", "xi4")};

  m["xi4"] = {t(-1, "eta6", "xi1"),    t(-1, "th33", "xi2"),   t(1, "eta2", "xi3"),
              t(1, 3, "eta5", "xi4"),  t(2, 3, "eta1", "xi4"), t(-1, 3, "eta4", "xi4")};

  m["th11"] = {t(-1, "eta12", "th1"), t(1, "eta14", "th2"), t(1, "eta13", "th3"),
               t(-1, "eta11", "th4"), t(1, "eta5", "th11"), t(-2, "eta1", "th11"),
               t(-2, "eta3", "th12"), t(-2, "th44", "th13"), t(2, "eta6", "th14"),
               t(-1, "xi1", "eta22"), t(-1, "xi2", "eta21"), t(-1, "xi3", "eta17"),
               t(-1, "xi4", "eta18")};

  m["th12"] = {t(-1, "eta10", "th1"), t(1, "eta12", "th2"),  t(1, "eta11", "th3"),
               t(-1, "eta7", "th4"),  t(-1, "eta2", "th11"), t(1, "eta5", "th12"),
               t(-1, "eta1", "th12"), t(-1, "eta4", "th12"), t(2, "eta6", "th13"),
               t(-2, "th34", "th13"), t(1, "th33", "th14"),  t(-1, "eta3", "th22"),
               t(-1, "th44", "th23"), t(-1, "xi1", "eta21"), t(-1, "xi2", "eta19"),
               t(-1, "xi3", "eta15"), t(-1, "xi4", "eta17")};

  m["th13"] = {t(1, "eta12", "th3"),    t(-1, "eta10", "th4"),   t(2, 3, "eta5", "th13"),
               t(-2, 3, "eta1", "th13"), t(-2, 3, "eta4", "th13"), t(-1, "eta2", "th14"),
               t(-1, "eta3", "th23"),   t(-1, "th44", "th33"),   t(1, "eta6", "th34"),
               t(-1, "xi1", "eta17"),   t(-1, "xi2", "eta15"),   t(-1, "xi3", "eta7"),
               t(-1, "xi4", "eta11")};

  m["th14"] = {t(1, "eta14", "th3"),    t(-1, "eta12", "th4"),    t(-2, "eta3", "th13"),
               t(1, 3, "eta4", "th14"), t(-5, 3, "eta1", "th14"), t(2, 3, "eta5", "th14"),
               t(1, "eta6", "th44"),    t(1, "th34", "th44"),     t(-1, "xi1", "eta18"),
               t(-1, "xi2", "eta17"),   t(-1, "xi3", "eta11"),    t(-1, "xi4", "eta13")};

  m["th22"] = {t(-1, "eta9", "th1"),  t(1, "eta10", "th2"),  t(1, "eta7", "th3"),
               t(-1, "eta8", "th4"),  t(-2, "eta2", "th12"), t(2, "th33", "th13"),
               t(1, "eta5", "th22"),  t(-2, "eta4", "th22"), t(2, "eta6", "th23"),
               t(-4, "th34", "th23"), t(-1, "xi1", "eta19"), t(-1, "xi2", "eta20"),
               t(-1, "xi3", "eta16"), t(-1, "xi4", "eta15")};

  m["th23"] = {t(1, "eta10", "th3"),    t(-1, "eta9", "th4"),     t(-2, "eta2", "th13"),
               t(1, 3, "eta1", "th23"), t(-5, 3, "eta4", "th23"), t(2, 3, "eta5", "th23"),
               t(1, "eta6", "th33"),    t(-3, "th34", "th33"),    t(-1, "xi1", "eta15"),
               t(-1, "xi2", "eta16"),   t(-1, "xi3", "eta8"),     t(-1, "xi4", "eta7")};

  m["th33"] = {t(1, 3, "eta5", "th33"), t(2, 3, "eta1", "th33"), t(-4, 3, "eta4", "th33"),
               t(-2, "eta2", "th34"),   t(-1, "xi1", "eta7"),    t(-1, "xi2", "eta8"),
               t(-1, "xi3", "eta9"),    t(-1, "xi4", "eta10")};

  m["th34"] = {t(-1, "eta3", "th33"),    t(1, 3, "eta5", "th34"), t(-1, 3, "eta1", "th34"),
               t(-1, 3, "eta4", "th34"), t(-1, "eta2", "th44"),   t(-1, "xi1", "eta11"),
               t(-1, "xi2", "eta7"),     t(-1, "xi3", "eta10"),   t(-1, "xi4", "eta12")};

  m["th44"] = {t(-2, "eta3", "th34"),   t(1, 3, "eta5", "th44"), t(-4, 3, "eta1", "th44"),
               t(2, 3, "eta4", "th44"), t(-1, "xi1", "eta13"),   t(-1, "xi2", "eta11"),
               t(-1, "xi3", "eta12"),   t(-1, "xi4", "eta14")};

  m["eta1"] = {t(1, "eta2", "eta3"), t(-1, "eta12", "xi1"), t(-1, "eta10", "xi2")};

  m["eta2"] = {t(1, "eta1", "eta2"), t(-1, "eta4", "eta2"), t(-1, "eta10", "xi1"),
               t(-1, "eta9", "xi2")};

  m["eta3"] = {t(1, "eta4", "eta3"), t(-1, "eta1", "eta3"), t(1, "eta14", "xi1"),
               t(1, "eta12", "xi2")};

  m["eta4"] = {t(-1, "eta2", "eta3"), t(1, "eta12", "xi1"), t(1, "eta10", "xi2")};

  m["eta5"] = {};

  m["eta6"] = {t(1, 3, "eta5", "eta6"), t(-1, 3, "eta1", "eta6"), t(-1, 3, "eta4", "eta6"),
               t(-1, "eta3", "th33"),   t(-1, "eta2", "th44"),    t(1, "eta11", "xi1"),
               t(1, "eta7", "xi2"),     t(1, "eta10", "xi3"),     t(1, "eta12", "xi4")};

  // The eta4 coefficient is -4/3: the torus grading and d(d(eta6)) = 0 both
  // force it (with -1/3 every weight audit of this rule fails).
  m["eta7"] = {t(1, 3, "eta5", "eta7"), t(-1, 3, "eta1", "eta7"), t(-4, 3, "eta4", "eta7"),
               t(-2, "eta2", "eta11"),  t(-1, "eta3", "eta8"),    t(1, "eta6", "eta10"),
               t(-2, "eta12", "th33"),  t(2, "eta10", "th34"),    t(1, "eta9", "th44"),
               t(1, "eta23", "xi1"),    t(1, "eta24", "xi2"),     t(1, "eta25", "xi3"),
               t(1, "eta26", "xi4")};

  m["eta8"] = {t(1, 3, "eta5", "eta8"), t(2, 3, "eta1", "eta8"), t(-7, 3, "eta4", "eta8"),
               t(-3, "eta2", "eta7"),   t(1, "eta6", "eta9"),    t(-3, "eta10", "th33"),
               t(4, "eta9", "th34"),    t(1, "eta24", "xi1"),    t(1, "eta27", "xi2"),
               t(1, "eta28", "xi3"),    t(1, "eta25", "xi4")};

  m["eta9"] = {t(1, "eta1", "eta9"), t(-2, "eta4", "eta9"), t(-3, "eta2", "eta10"),
               t(1, "eta25", "xi1"), t(1, "eta28", "xi2")};

  m["eta10"] = {t(-2, "eta2", "eta12"), t(-1, "eta3", "eta9"), t(-1, "eta4", "eta10"),
                t(1, "eta26", "xi1"),   t(1, "eta25", "xi2")};

  // The eta1 coefficient is -4/3, mirroring the eta7 rule (grading + closure).
  // The eta14 term carries a minus sign: d(d(eta11)) (and the whole th-block
  // downstream of it) only closes with -eta14 ^ th33.
  m["eta11"] = {t(1, 3, "eta5", "eta11"), t(-4, 3, "eta1", "eta11"),
                t(-1, 3, "eta4", "eta11"), t(-1, "eta2", "eta13"),
                t(-2, "eta3", "eta7"),    t(1, "eta6", "eta12"),
                t(-1, "eta14", "th33"),    t(2, "eta10", "th44"),
                t(1, "eta29", "xi1"),     t(1, "eta23", "xi2"),
                t(1, "eta26", "xi3"),     t(1, "eta30", "xi4")};

  m["eta12"] = {t(-1, "eta1", "eta12"), t(-1, "eta2", "eta14"), t(-2, "eta3", "eta10"),
                t(1, "eta30", "xi1"),   t(1, "eta26", "xi2")};

  m["eta13"] = {t(1, 3, "eta5", "eta13"), t(-7, 3, "eta1", "eta13"),
                t(2, 3, "eta4", "eta13"), t(-3, "eta3", "eta11"),
                t(1, "eta6", "eta14"),    t(2, "th34", "eta14"),
                t(3, "eta12", "th44"),    t(1, "eta31", "xi1"),
                t(1, "eta29", "xi2"),     t(1, "eta30", "xi3"),
                t(1, "eta32", "xi4")};

  m["eta14"] = {t(1, "eta4", "eta14"), t(-2, "eta1", "eta14"), t(-3, "eta3", "eta12"),
                t(1, "eta32", "xi1"),  t(1, "eta30", "xi2")};

  m["eta15"] = {t(2, 3, "eta5", "eta15"), t(-5, 3, "eta4", "eta15"),
                t(-2, 3, "eta1", "eta15"), t(-2, "eta2", "eta17"),
                t(-1, "eta3", "eta16"),   t(2, "eta6", "eta7"),
                t(1, "eta26", "th3"),     t(-1, "eta25", "th4"),
                t(1, "eta10", "th13"),    t(1, "eta9", "th14"),
                t(-2, "eta12", "th23"),   t(-2, "eta11", "th33"),
                t(3, "eta7", "th34"),     t(1, "eta8", "th44"),
                t(1, "eta33", "xi1"),     t(1, "eta34", "xi2"),
                t(1, "eta24", "xi3"),     t(1, "eta23", "xi4")};

  // The eta7 term carries -3: closure of d(d(eta16)) and d(d(eta20)) forces it.
  m["eta16"] = {t(1, 3, "eta1", "eta16"), t(-8, 3, "eta4", "eta16"),
                t(2, 3, "eta5", "eta16"), t(-3, "eta2", "eta15"),
                t(2, "eta6", "eta8"),     t(1, "eta25", "th3"),
                t(-1, "eta28", "th4"),    t(3, "eta9", "th13"),
                t(-3, "eta10", "th23"),   t(-3, "eta7", "th33"),
                t(5, "eta8", "th34"),     t(1, "eta34", "xi1"),
                t(1, "eta35", "xi2"),     t(1, "eta27", "xi3"),
                t(1, "eta24", "xi4")};

  m["eta17"] = {t(2, 3, "eta5", "eta17"), t(-5, 3, "eta1", "eta17"),
                t(-2, 3, "eta4", "eta17"), t(-1, "eta2", "eta18"),
                t(-2, "eta3", "eta15"),   t(2, "eta6", "eta11"),
                t(1, "eta30", "th3"),     t(-1, "eta26", "th4"),
                t(-1, "eta12", "th13"),   t(2, "eta10", "th14"),
                t(-1, "eta14", "th23"),   t(-1, "eta13", "th33"),
                t(1, "eta11", "th34"),    t(2, "eta7", "th44"),
                t(1, "eta36", "xi1"),     t(1, "eta33", "xi2"),
                t(1, "eta23", "xi3"),     t(1, "eta29", "xi4")};

  m["eta18"] = {t(1, 3, "eta4", "eta18"), t(-8, 3, "eta1", "eta18"),
                t(2, 3, "eta5", "eta18"), t(-3, "eta3", "eta17"),
                t(2, "eta6", "eta13"),    t(1, "eta32", "th3"),
                t(-1, "eta30", "th4"),    t(-3, "eta14", "th13"),
                t(3, "eta12", "th14"),    t(-1, "eta13", "th34"),
                t(3, "eta11", "th44"),    t(1, "eta37", "xi1"),
                t(1, "eta36", "xi2"),     t(1, "eta29", "xi3"),
                t(1, "eta31", "xi4")};

  m["eta19"] = {t(1, "eta5", "eta19"),  t(-1, "eta1", "eta19"), t(-2, "eta4", "eta19"),
                t(-2, "eta2", "eta21"), t(-1, "eta3", "eta20"), t(3, "eta6", "eta15"),
                t(-1, "eta25", "th1"),  t(1, "eta26", "th2"),   t(1, "eta23", "th3"),
                t(-1, "eta24", "th4"),  t(1, "eta9", "th11"),   t(1, "eta10", "th12"),
                t(1, "eta7", "th13"),   t(1, "eta8", "th14"),   t(-2, "eta12", "th22"),
                t(-2, "eta11", "th23"), t(-2, "eta17", "th33"), t(4, "eta15", "th34"),
                t(1, "eta16", "th44"),  t(1, "eta38", "xi1"),   t(1, "eta39", "xi2"),
                t(1, "eta34", "xi3"),   t(1, "eta33", "xi4")};

  m["eta20"] = {t(1, "eta5", "eta20"),  t(-3, "eta4", "eta20"), t(-3, "eta2", "eta19"),
                t(3, "eta6", "eta16"),  t(-1, "eta28", "th1"),  t(1, "eta25", "th2"),
                t(1, "eta24", "th3"),   t(-1, "eta27", "th4"),  t(3, "eta9", "th12"),
                t(3, "eta8", "th13"),   t(-3, "eta10", "th22"), t(-3, "eta7", "th23"),
                t(-3, "eta15", "th33"), t(6, "eta16", "th34"),  t(1, "eta39", "xi1"),
                t(1, "eta40", "xi2"),   t(1, "eta35", "xi3"),   t(1, "eta34", "xi4")};

  m["eta21"] = {t(1, "eta5", "eta21"),  t(-2, "eta1", "eta21"), t(-1, "eta4", "eta21"),
                t(-1, "eta2", "eta22"), t(-2, "eta3", "eta19"), t(3, "eta6", "eta17"),
                t(-2, "th34", "eta17"), t(-1, "eta26", "th1"),  t(1, "eta30", "th2"),
                t(1, "eta29", "th3"),   t(-1, "eta23", "th4"),  t(2, "eta10", "th11"),
                t(-1, "eta12", "th12"), t(-1, "eta11", "th13"), t(2, "eta7", "th14"),
                t(-1, "eta14", "th22"), t(-1, "eta13", "th23"), t(-1, "eta18", "th33"),
                t(2, "eta15", "th44"),  t(1, "eta41", "xi1"),   t(1, "eta38", "xi2"),
                t(1, "eta33", "xi3"),   t(1, "eta36", "xi4")};

  m["eta22"] = {t(1, "eta5", "eta22"),  t(-3, "eta1", "eta22"), t(-3, "eta3", "eta21"),
                t(3, "eta6", "eta18"),  t(-1, "eta30", "th1"),  t(1, "eta32", "th2"),
                t(1, "eta31", "th3"),   t(-1, "eta29", "th4"),  t(3, "eta12", "th11"),
                t(-3, "eta14", "th12"), t(-3, "eta13", "th13"), t(3, "eta11", "th14"),
                t(3, "eta17", "th44"),  t(1, "eta42", "xi1"),   t(1, "eta41", "xi2"),
                t(1, "eta36", "xi3"),   t(1, "eta37", "xi4")};

  return m;
}

}  // namespace

const std::vector<std::string>& ruled_form_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v{"th0", "th1", "th2", "th3", "th4", "xi1", "xi2", "xi3", "xi4"};
    for (const char* n : {"th11", "th12", "th13", "th14", "th22", "th23", "th33", "th34", "th44"})
      v.push_back(n);
    for (int i = 1; i <= 22; ++i) v.push_back("eta" + std::to_string(i));
    return v;
  }();
  return names;
}

const std::vector<std::string>& free_form_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (int i = 23; i <= 42; ++i) v.push_back("eta" + std::to_string(i));
    return v;
  }();
  return names;
}

const std::map<std::string, StructureRule>& structure_rules() {
  static const std::map<std::string, StructureRule> rules = make_rules();
  return rules;
}

}  // namespace eds::eng
