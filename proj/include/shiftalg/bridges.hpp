#ifndef SHIFTALG_BRIDGES_HPP
#define SHIFTALG_BRIDGES_HPP

#include <map>

#include "shiftalg/algebra.hpp"

namespace shiftalg {

// Finite directed graph with named edges.
struct Graph {
  std::vector<std::string> vertices;
  struct Edge {
    std::string name;
    int src = 0;
    int dst = 0;
  };
  std::vector<Edge> edges;

  std::vector<int> out_edges(int v) const;
  std::vector<int> in_edges(int v) const;
  bool has_sink() const;
  static Graph rose(int petals);
  static Graph cycle(int length);
};

// edge subshift: forbidden words { ef : r(e) != s(f) }
SubshiftPtr graph_edge_shift(const Graph& g);

struct LpaGenerators {
  SubshiftPtr shift;
  std::map<std::string, AlgebraElement> q;       // vertex projections
  std::map<std::string, AlgebraElement> t;       // edge partial isometries
  std::map<std::string, AlgebraElement> t_star;
};

// q_v = p_{C(e,w)} for e into v, or sum of s_e s_e^* at sources; t_e = s_e
LpaGenerators lpa_generators(const Graph& g, RingTag ring);
RelationReport verify_lpa_relations(const Graph& g, RingTag ring);

// Ultragraph in the affine rule class. Families play the role of edge
// bundles; source/range maps live in the clauses.
struct Ultragraph {
  IntDomain vertices;
  std::vector<RuleFamilySpec> families;
  static Ultragraph renewal();
};

SubshiftPtr ultragraph_edge_shift(const Ultragraph& u, std::string name = "ultragraph");

// Generalised vertices reachable within the budget: singletons, edge ranges
// over the letter window, closed under union/intersection (bounded).
std::vector<FinCofin> generalized_vertices(const Ultragraph& u, const SubshiftPtr& s,
                                           std::size_t vertex_budget);

RelationReport verify_ultragraph_relations(const Ultragraph& u, std::size_t vertex_budget,
                                           RingTag ring);

}  // namespace shiftalg

#endif
