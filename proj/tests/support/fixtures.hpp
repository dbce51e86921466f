#ifndef SHIFTALG_TESTS_FIXTURES_HPP
#define SHIFTALG_TESTS_FIXTURES_HPP

#include "shiftalg/set_algebra.hpp"
#include "shiftalg/subshift.hpp"

namespace shiftalg::fixtures {

inline SubshiftPtr full2() {
  return Subshift::sft(Alphabet::symbols({"0", "1"}), {}, "full2");
}

inline SubshiftPtr golden() {
  Alphabet a = Alphabet::symbols({"0", "1"});
  return Subshift::sft(a, {word_parse(a, "11")}, "golden");
}

// the 0<->1 mirror of the golden mean: forbidden word 00
inline SubshiftPtr golden_mirror() {
  Alphabet a = Alphabet::symbols({"0", "1"});
  return Subshift::sft(a, {word_parse(a, "00")}, "golden-mirror");
}

// even shift: 1s separated by an even number of 0s; right-resolving
// presentation with two vertices
inline SubshiftPtr even() {
  Alphabet a = Alphabet::symbols({"0", "1"});
  Letter z = *a.find("0"), o = *a.find("1");
  return Subshift::sofic(a, 2, {{0, o, 0}, {0, z, 1}, {1, z, 0}}, "even");
}

// renewal shift as the edge shift of its ultragraph: s(e_i) = i,
// r(e_1) = all vertices, r(e_j) = {j-1} for j > 1
inline SubshiftPtr renewal() {
  RuleFamilySpec e;
  e.display = "e";
  e.indices = IntDomain::half_line(1);
  RuleClause first;
  first.when = FinCofin::single(1);
  first.source = AffineMap{1, 0};
  first.range_all = true;
  RuleClause rest;
  rest.when = FinCofin{true, {1}};
  rest.source = AffineMap{1, 0};
  rest.range_affine = true;
  rest.range_offset = -1;
  e.clauses = {first, rest};
  return Subshift::rule_graph(IntDomain::half_line(1), {e}, "renewal");
}

// the graph of Example theorPropfail: vertices v=0, w=1; edges e_n: v -> w
// for n in N, f: w -> w
inline SubshiftPtr theorpropfail() {
  RuleFamilySpec e;
  e.display = "e";
  e.indices = IntDomain::half_line(0);
  RuleClause ce;
  ce.when = FinCofin::all();
  ce.source = AffineMap{0, 0};
  ce.range_set = FinCofin::single(1);
  e.clauses = {ce};
  RuleFamilySpec f;
  f.display = "f";
  f.indices = IntDomain::finite({0});
  f.show_index = false;
  RuleClause cf;
  cf.when = FinCofin::all();
  cf.source = AffineMap{0, 1};
  cf.range_set = FinCofin::single(1);
  f.clauses = {cf};
  return Subshift::rule_graph(IntDomain::finite({0, 1}), {e, f}, "theorpropfail");
}

inline std::vector<SubshiftPtr> finite_fixtures() { return {full2(), golden(), even()}; }

inline Word w(const SubshiftPtr& s, const std::string& text) {
  return word_parse(s->alphabet(), text);
}

inline EvPeriodic pt(const SubshiftPtr& s, const std::string& pre, const std::string& per) {
  EvPeriodic x;
  x.pre = word_parse(s->alphabet(), pre);
  x.per = word_parse(s->alphabet(), per);
  x.canonicalize();
  return x;
}

}  // namespace shiftalg::fixtures

#endif
