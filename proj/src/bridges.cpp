#include "shiftalg/bridges.hpp"

#include <algorithm>

namespace shiftalg {

std::vector<int> Graph::out_edges(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].src == v) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<int> Graph::in_edges(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (edges[i].dst == v) out.push_back(static_cast<int>(i));
  return out;
}

bool Graph::has_sink() const {
  for (std::size_t v = 0; v < vertices.size(); ++v)
    if (out_edges(static_cast<int>(v)).empty()) return true;
  return false;
}

Graph Graph::rose(int petals) {
  Graph g;
  g.vertices = {"v"};
  for (int i = 0; i < petals; ++i)
    g.edges.push_back(Edge{std::string(1, static_cast<char>('e' + i)), 0, 0});
  return g;
}

Graph Graph::cycle(int length) {
  Graph g;
  for (int i = 0; i < length; ++i) g.vertices.push_back("v" + std::to_string(i + 1));
  for (int i = 0; i < length; ++i)
    g.edges.push_back(Edge{"c" + std::to_string(i + 1), i, (i + 1) % length});
  return g;
}

SubshiftPtr graph_edge_shift(const Graph& g) {
  std::vector<std::string> names;
  for (const auto& e : g.edges) names.push_back(e.name);
  Alphabet alpha = Alphabet::symbols(names);
  std::vector<Word> forbidden;
  for (const auto& e : g.edges)
    for (const auto& f : g.edges) {
      if (e.dst == f.src) continue;
      forbidden.push_back(Word{{*alpha.find(e.name), *alpha.find(f.name)}});
    }
  return Subshift::sft(alpha, forbidden, "edges");
}

LpaGenerators lpa_generators(const Graph& g, RingTag ring) {
  if (g.has_sink()) fail(Errc::HypothesisViolated, "graph has a sink");
  // finite graphs have no infinite emitters, so the source clause is safe
  LpaGenerators out;
  out.shift = graph_edge_shift(g);
  const SubshiftPtr& s = out.shift;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    auto in = g.in_edges(static_cast<int>(v));
    if (!in.empty()) {
      Word e{{*s->alphabet().find(g.edges[static_cast<std::size_t>(in[0])].name)}};
      out.q.emplace(g.vertices[v], AlgebraElement::gen_p(f_set(s, e), ring, Flavor::B));
    } else {
      AlgebraElement acc = AlgebraElement::zero(s, ring, Flavor::B);
      for (int ei : g.out_edges(static_cast<int>(v))) {
        Letter a = *s->alphabet().find(g.edges[static_cast<std::size_t>(ei)].name);
        acc = acc.plus(AlgebraElement::gen_s(s, a, ring, Flavor::B)
                           .times(AlgebraElement::gen_s_star(s, a, ring, Flavor::B)));
      }
      out.q.emplace(g.vertices[v], acc);
    }
  }
  for (const auto& e : g.edges) {
    Letter a = *s->alphabet().find(e.name);
    out.t.emplace(e.name, AlgebraElement::gen_s(s, a, ring, Flavor::B));
    out.t_star.emplace(e.name, AlgebraElement::gen_s_star(s, a, ring, Flavor::B));
  }
  return out;
}

RelationReport verify_lpa_relations(const Graph& g, RingTag ring) {
  RelationReport rep;
  LpaGenerators gen = lpa_generators(g, ring);
  auto item = [&](const std::string& name) {
    rep.items.push_back(RelationReport::Item{name, 0, 0, 0, ""});
    return &rep.items.back();
  };
  auto check = [&](RelationReport::Item* it, bool ok, const std::string& wit) {
    ++it->checked;
    if (ok)
      ++it->passed;
    else if (it->witness.empty())
      it->witness = wit;
  };
  {
    auto* it = item("lpa.V");
    for (const auto& [v, qv] : gen.q)
      for (const auto& [w, qw] : gen.q) {
        AlgebraElement prod = qv.times(qw);
        bool ok = v == w ? prod.equals(qv) : prod.is_zero();
        check(it, ok, v + "," + w);
      }
  }
  {
    auto* it = item("lpa.E1");
    for (const auto& e : g.edges) {
      const auto& te = gen.t.at(e.name);
      bool ok = gen.q.at(g.vertices[static_cast<std::size_t>(e.src)]).times(te).equals(te) &&
                te.times(gen.q.at(g.vertices[static_cast<std::size_t>(e.dst)])).equals(te);
      check(it, ok, e.name);
    }
  }
  {
    auto* it = item("lpa.E2");
    for (const auto& e : g.edges) {
      const auto& ts = gen.t_star.at(e.name);
      bool ok = gen.q.at(g.vertices[static_cast<std::size_t>(e.dst)]).times(ts).equals(ts) &&
                ts.times(gen.q.at(g.vertices[static_cast<std::size_t>(e.src)])).equals(ts);
      check(it, ok, e.name);
    }
  }
  {
    auto* it = item("lpa.CK1");
    for (const auto& e : g.edges)
      for (const auto& f : g.edges) {
        AlgebraElement prod = gen.t_star.at(e.name).times(gen.t.at(f.name));
        bool ok = e.name == f.name
                      ? prod.equals(gen.q.at(g.vertices[static_cast<std::size_t>(e.dst)]))
                      : prod.is_zero();
        check(it, ok, e.name + "," + f.name);
      }
  }
  {
    auto* it = item("lpa.CK2");
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      auto out = g.out_edges(static_cast<int>(v));
      AlgebraElement sum = AlgebraElement::zero(gen.shift, ring, Flavor::B);
      for (int ei : out) {
        const auto& name = g.edges[static_cast<std::size_t>(ei)].name;
        sum = sum.plus(gen.t.at(name).times(gen.t_star.at(name)));
      }
      check(it, sum.equals(gen.q.at(g.vertices[v])), g.vertices[v]);
    }
  }
  return rep;
}

Ultragraph Ultragraph::renewal() {
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
  Ultragraph u;
  u.vertices = IntDomain::half_line(1);
  u.families = {e};
  return u;
}

SubshiftPtr ultragraph_edge_shift(const Ultragraph& u, std::string name) {
  return Subshift::rule_graph(u.vertices, u.families, std::move(name));
}

std::vector<FinCofin> generalized_vertices(const Ultragraph& u, const SubshiftPtr& s,
                                           std::size_t vertex_budget) {
  const auto& e = s->rule_engine();
  std::vector<FinCofin> base;
  base.push_back(FinCofin::none());
  for (Letter a : s->alphabet().window(vertex_budget)) base.push_back(e.range_of(a));
  long v = u.vertices.infinite ? u.vertices.min : 0;
  for (std::size_t i = 0; i < vertex_budget; ++i) {
    long vv = u.vertices.infinite ? v + static_cast<long>(i)
                                  : (i < u.vertices.elems.size() ? u.vertices.elems[i] : -1);
    if (vv >= 0 || !u.vertices.infinite)
      base.push_back(fc_normalize(FinCofin::single(vv), e.vertices));
  }
  // close under pairwise union and intersection, budget-bounded
  std::vector<FinCofin> out = base;
  auto push = [&](const FinCofin& f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  std::size_t cap = 4 * vertex_budget + 16;
  for (std::size_t round = 0; round < 2; ++round) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n && out.size() < cap; ++i)
      for (std::size_t j = i + 1; j < n && out.size() < cap; ++j) {
        push(fc_union(out[i], out[j], e.vertices));
        push(fc_intersect(out[i], out[j], e.vertices));
      }
  }
  return out;
}

RelationReport verify_ultragraph_relations(const Ultragraph& u, std::size_t vertex_budget,
                                           RingTag ring) {
  RelationReport rep;
  SubshiftPtr s = ultragraph_edge_shift(u);
  const auto& e = s->rule_engine();
  auto item = [&](const std::string& name) {
    rep.items.push_back(RelationReport::Item{name, 0, 0, 0, ""});
    return &rep.items.back();
  };
  auto check = [&](RelationReport::Item* it, bool ok, const std::string& wit) {
    ++it->checked;
    if (ok)
      ++it->passed;
    else if (it->witness.empty())
      it->witness = wit;
  };

  // hypothesis: every vertex regular (0 < out-degree < infinity). A constant
  // source clause over an infinite index set is an infinite emitter.
  for (std::size_t f = 0; f < u.families.size(); ++f) {
    const auto& fam = u.families[f];
    for (const auto& cl : fam.clauses) {
      if (cl.source.slope == 0 && !fc_finite(cl.when, fam.indices))
        fail(Errc::HypothesisViolated,
             "vertex " + std::to_string(cl.source.offset) + " is an infinite emitter");
    }
  }
  std::vector<long> verts;
  if (u.vertices.infinite) {
    for (std::size_t i = 0; i < vertex_budget; ++i)
      verts.push_back(u.vertices.min + static_cast<long>(i));
  } else {
    verts = u.vertices.elems;
    if (verts.size() > vertex_budget) verts.resize(vertex_budget);
  }
  for (long v : verts) {
    std::size_t deg = 0;
    for (std::size_t f = 0; f < u.families.size(); ++f) {
      FinCofin idx = e.indices_with_source_in(static_cast<int>(f), FinCofin::single(v));
      if (!fc_finite(idx, u.families[f].indices)) fail(Errc::HypothesisViolated, "infinite emitter");
      deg += fc_members(idx, u.families[f].indices).size();
    }
    if (deg == 0) fail(Errc::HypothesisViolated, "vertex " + std::to_string(v) + " is a sink");
  }

  auto q = [&](const FinCofin& a) {
    return AlgebraElement::gen_p(se_source_set(s, a, Flavor::B), ring, Flavor::B);
  };
  auto letters = s->alphabet().window(vertex_budget);
  std::vector<Letter> lang;
  for (Letter a : letters)
    if (s->in_language(Word{{a}})) lang.push_back(a);

  auto gv = generalized_vertices(u, s, vertex_budget);
  {
    auto* it = item("ultra.1");
    check(it, q(FinCofin::none()).is_zero(), "p_empty");
    for (std::size_t i = 0; i < gv.size(); i += 2)
      for (std::size_t j = 0; j < gv.size(); j += 3) {
        AlgebraElement qa = q(gv[i]), qb = q(gv[j]);
        bool ok1 = qa.times(qb).equals(q(fc_intersect(gv[i], gv[j], e.vertices)));
        bool ok2 = q(fc_union(gv[i], gv[j], e.vertices))
                       .equals(qa.plus(qb).minus(q(fc_intersect(gv[i], gv[j], e.vertices))));
        check(it, ok1 && ok2, "gv " + std::to_string(i) + "," + std::to_string(j));
      }
  }
  {
    auto* it = item("ultra.2");
    for (Letter a : lang) {
      AlgebraElement se = AlgebraElement::gen_s(s, a, ring, Flavor::B);
      AlgebraElement st = AlgebraElement::gen_s_star(s, a, ring, Flavor::B);
      AlgebraElement qs = q(FinCofin::single(e.source_of(a)));
      AlgebraElement qr = q(e.range_of(a));
      bool ok = qs.times(se).equals(se) && se.times(qr).equals(se) && qr.times(st).equals(st) &&
                st.times(qs).equals(st);
      check(it, ok, s->letter_str(a));
    }
  }
  {
    auto* it = item("ultra.3");
    for (Letter a : lang)
      for (Letter b : lang) {
        AlgebraElement prod = AlgebraElement::gen_s_star(s, a, ring, Flavor::B)
                                  .times(AlgebraElement::gen_s(s, b, ring, Flavor::B));
        bool ok = a == b ? prod.equals(q(e.range_of(a))) : prod.is_zero();
        check(it, ok, s->letter_str(a) + "," + s->letter_str(b));
      }
  }
  {
    auto* it = item("ultra.4");
    for (long v : verts) {
      AlgebraElement sum = AlgebraElement::zero(s, ring, Flavor::B);
      for (std::size_t f = 0; f < u.families.size(); ++f) {
        FinCofin idx = e.indices_with_source_in(static_cast<int>(f), FinCofin::single(v));
        for (long i : fc_members(idx, u.families[f].indices)) {
          Letter a{static_cast<int>(f), i};
          sum = sum.plus(AlgebraElement::gen_s(s, a, ring, Flavor::B)
                             .times(AlgebraElement::gen_s_star(s, a, ring, Flavor::B)));
        }
      }
      check(it, sum.equals(q(FinCofin::single(v))), "vertex " + std::to_string(v));
    }
  }
  return rep;
}

}  // namespace shiftalg
