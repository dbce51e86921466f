#include "doctest.h"
#include "shiftalg/bridges.hpp"
#include "support/fixtures.hpp"

using namespace shiftalg;
using namespace shiftalg::fixtures;

namespace {
const RingTag Z{RingTag::Z, 0};
}

TEST_CASE("edge shifts of simple graphs") {
  Graph rose = Graph::rose(2);
  SubshiftPtr s = graph_edge_shift(rose);
  CHECK(s->enumerate_language(2, 100).words.size() == 4);  // full 2-shift

  Graph c2 = Graph::cycle(2);
  SubshiftPtr s2 = graph_edge_shift(c2);
  CHECK(s2->enumerate_language(1, 100).words.size() == 2);
  CHECK(s2->enumerate_language(2, 100).words.size() == 2);  // strictly alternating

  Graph sink;
  sink.vertices = {"a", "b"};
  sink.edges = {{"e", 0, 1}};
  CHECK(sink.has_sink());
  CHECK_THROWS_AS(lpa_generators(sink, Z), Error);
}

TEST_CASE("rose-2 satisfies the Leavitt L2 relations") {
  Graph rose = Graph::rose(2);
  auto rep = verify_lpa_relations(rose, Z);
  for (auto& item : rep.items) {
    INFO(item.relation << " witness " << item.witness);
    CHECK(item.ok());
  }
  // CK2 at the single vertex is p_X = s_e s_e^* + s_f s_f^*
  auto gen = lpa_generators(rose, Z);
  AlgebraElement sum = AlgebraElement::zero(gen.shift, Z, Flavor::B);
  for (auto& [name, te] : gen.t) sum = sum.plus(te.times(gen.t_star.at(name)));
  CHECK(sum.equals(gen.q.at("v")));
  CHECK(gen.q.at("v").as_unital().equals(AlgebraElement::one(gen.shift, Z, Flavor::U)));
}

TEST_CASE("3-cycle satisfies the LPA relations and q_v via ranges") {
  Graph c3 = Graph::cycle(3);
  auto rep = verify_lpa_relations(c3, Z);
  for (auto& item : rep.items) {
    INFO(item.relation << " witness " << item.witness);
    CHECK(item.ok());
  }
  auto gen = lpa_generators(c3, Z);
  // q_{v2} = p_{C(c1, omega)}: the range of the edge into v2
  SubshiftPtr s = gen.shift;
  Word c1 = word_parse(s->alphabet(), "c1");
  CHECK(gen.q.at("v2").equals(AlgebraElement::gen_p(f_set(s, c1), Z, Flavor::B)));
}

TEST_CASE("two-cycle q generators use the incoming range") {
  Graph c2 = Graph::cycle(2);
  auto gen = lpa_generators(c2, Z);
  SubshiftPtr s = gen.shift;
  CHECK(gen.q.at("v1").equals(
      AlgebraElement::gen_p(f_set(s, word_parse(s->alphabet(), "c2")), Z, Flavor::B)));
  auto rep = verify_lpa_relations(c2, Z);
  for (auto& item : rep.items) CHECK(item.ok());
}

TEST_CASE("Phi is degree-preserving on generators") {
  for (auto g : {Graph::rose(2), Graph::cycle(3)}) {
    auto gen = lpa_generators(g, Z);
    for (auto& [name, te] : gen.t) {
      int d = 0;
      CHECK(te.homogeneous(&d));
      CHECK(d == 1);
    }
    for (auto& [name, qv] : gen.q) {
      int d = 0;
      CHECK(qv.homogeneous(&d));
      CHECK(d == 0);
    }
  }
}

TEST_CASE("rose-n Leavitt relation for n=3") {
  Graph rose = Graph::rose(3);
  auto gen = lpa_generators(rose, Z);
  AlgebraElement sum = AlgebraElement::zero(gen.shift, Z, Flavor::B);
  for (auto& [name, te] : gen.t) sum = sum.plus(te.times(gen.t_star.at(name)));
  CHECK(sum.as_unital().equals(AlgebraElement::one(gen.shift, Z, Flavor::U)));
}

TEST_CASE("renewal ultragraph relations within budget") {
  Ultragraph u = Ultragraph::renewal();
  auto rep = verify_ultragraph_relations(u, 6, Z);
  for (auto& item : rep.items) {
    INFO(item.relation << " witness " << item.witness);
    CHECK(item.ok());
  }
  // q_{r(e1)} = p_X
  SubshiftPtr s = ultragraph_edge_shift(u);
  const auto& e = s->rule_engine();
  Letter e1 = *s->alphabet().find("e1");
  AlgebraElement qr = AlgebraElement::gen_p(se_source_set(s, e.range_of(e1), Flavor::B), Z,
                                            Flavor::B);
  CHECK(qr.as_unital().equals(AlgebraElement::one(s, Z, Flavor::U)));
  // disjoint singleton vertex projections multiply to zero
  AlgebraElement q3 = AlgebraElement::gen_p(se_source_set(s, FinCofin::single(3), Flavor::B), Z,
                                            Flavor::B);
  AlgebraElement q5 = AlgebraElement::gen_p(se_source_set(s, FinCofin::single(5), Flavor::B), Z,
                                            Flavor::B);
  CHECK(q3.times(q5).is_zero());
  CHECK(!q3.is_zero());
}

TEST_CASE("generalized vertices are closed under pairwise lattice operations") {
  Ultragraph u = Ultragraph::renewal();
  SubshiftPtr s = ultragraph_edge_shift(u);
  const auto& e = s->rule_engine();
  auto gv = generalized_vertices(u, s, 4);
  CHECK(gv.size() > 3);
  for (std::size_t i = 0; i < gv.size() && i < 8; ++i)
    for (std::size_t j = i + 1; j < gv.size() && j < 8; ++j) {
      FinCofin un = fc_union(gv[i], gv[j], e.vertices);
      FinCofin in = fc_intersect(gv[i], gv[j], e.vertices);
      CHECK(std::find(gv.begin(), gv.end(), un) != gv.end());
      CHECK(std::find(gv.begin(), gv.end(), in) != gv.end());
    }
}

TEST_CASE("infinite emitters violate the LPAU hypothesis") {
  // theorPropfail's v emits e_n for every n
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
  Ultragraph u;
  u.vertices = IntDomain::finite({0, 1});
  u.families = {e, f};
  CHECK_THROWS_AS(verify_ultragraph_relations(u, 4, Z), Error);
}

TEST_CASE("unitality of the bridge fixtures") {
  CHECK(is_unital(ultragraph_edge_shift(Ultragraph::renewal())) == Ternary::Yes);
  CHECK(is_unital(theorpropfail()) == Ternary::No);
  CHECK(is_unital(graph_edge_shift(Graph::rose(2))) == Ternary::Yes);
}

TEST_CASE("source vertices use the sum-of-ranges projection") {
  // a -> b, b -> b: 'a' is a source, 'b' is not
  Graph g;
  g.vertices = {"a", "b"};
  g.edges = {{"e", 0, 1}, {"f", 1, 1}};
  CHECK(!g.has_sink());
  auto gen = lpa_generators(g, Z);
  SubshiftPtr s = gen.shift;
  Letter e = *s->alphabet().find("e");
  AlgebraElement expect = AlgebraElement::gen_s(s, e, Z, Flavor::B)
                              .times(AlgebraElement::gen_s_star(s, e, Z, Flavor::B));
  CHECK(gen.q.at("a").equals(expect));
  auto rep = verify_lpa_relations(g, Z);
  for (auto& item : rep.items) {
    INFO(item.relation << " witness " << item.witness);
    CHECK(item.ok());
  }
}

TEST_CASE("finite ultragraph with a two-vertex range") {
  // e from v0 with range {v1, v2}; loops g1: v1->v1, g2: v2->v2 keep it sink-free
  RuleFamilySpec e;
  e.display = "e";
  e.indices = IntDomain::finite({0});
  e.show_index = false;
  RuleClause ce;
  ce.when = FinCofin::all();
  ce.source = AffineMap{0, 0};
  ce.range_set = FinCofin::of({1, 2});
  e.clauses = {ce};
  RuleFamilySpec g;
  g.display = "g";
  g.indices = IntDomain::finite({1, 2});
  RuleClause cg;
  cg.when = FinCofin::all();
  cg.source = AffineMap{1, 0};
  cg.range_affine = true;
  cg.range_offset = 0;
  g.clauses = {cg};
  Ultragraph u;
  u.vertices = IntDomain::finite({0, 1, 2});
  u.families = {e, g};
  auto rep = verify_ultragraph_relations(u, 3, Z);
  for (auto& item : rep.items) {
    INFO(item.relation << " witness " << item.witness);
    CHECK(item.ok());
  }
  // generalized-vertex union/intersection laws include the 2-vertex range
  SubshiftPtr s = ultragraph_edge_shift(u);
  auto gv = generalized_vertices(u, s, 3);
  CHECK(std::find(gv.begin(), gv.end(), FinCofin::of({1, 2})) != gv.end());
}
