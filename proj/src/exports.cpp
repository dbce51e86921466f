#include "shiftalg/exports.hpp"

#include "json.hpp"

namespace shiftalg {

namespace {

std::string dq(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string dot_graph(const Graph& g) {
  std::string out = "digraph G {\n";
  for (const auto& v : g.vertices) out += "  " + dq(v) + ";\n";
  for (const auto& e : g.edges)
    out += "  " + dq(g.vertices[static_cast<std::size_t>(e.src)]) + " -> " +
           dq(g.vertices[static_cast<std::size_t>(e.dst)]) + " [label=" + dq(e.name) +
           "];\n";
  out += "}\n";
  return out;
}

std::string dot_ultragraph(const Ultragraph& u, const SubshiftPtr& s, std::size_t budget) {
  const auto& e = s->rule_engine();
  std::string out = "digraph G {\n";
  std::vector<long> verts;
  if (u.vertices.infinite) {
    for (std::size_t i = 0; i < budget; ++i) verts.push_back(u.vertices.min + static_cast<long>(i));
    out += "  more [label=\"...\", shape=plaintext];\n";
  } else {
    verts = u.vertices.elems;
  }
  for (long v : verts) out += "  v" + std::to_string(v) + ";\n";
  for (Letter a : s->alphabet().window(budget)) {
    long src = e.source_of(a);
    if (std::find(verts.begin(), verts.end(), src) == verts.end()) continue;
    FinCofin r = e.range_of(a);
    std::string label = s->letter_str(a);
    if (r.cofinite) {
      out += "  v" + std::to_string(src) + " -> more [label=" + dq(label + ":" + fc_str(r)) +
             "];\n";
      continue;
    }
    for (long t : r.elems) {
      if (std::find(verts.begin(), verts.end(), t) == verts.end()) continue;
      out += "  v" + std::to_string(src) + " -> v" + std::to_string(t) +
             " [label=" + dq(label) + "];\n";
    }
  }
  out += "}\n";
  return out;
}

std::string dot_atom_tree(const SubshiftPtr& s, std::size_t from_depth, std::size_t to_depth,
                          std::size_t window) {
  GenSetPtr coarse = canonical_generators(s, from_depth, window);
  GenSetPtr fine = canonical_generators(s, to_depth, window);
  std::string out = "digraph atoms {\n  rankdir=LR;\n";
  out += "  // depth " + std::to_string(from_depth) + " -> depth " + std::to_string(to_depth) +
         "\n";
  for (std::size_t i = 0; i < coarse->atoms.size(); ++i)
    out += "  c" + std::to_string(i) + " [label=" + dq(se_str(coarse->atoms[i])) + "];\n";
  for (std::size_t j = 0; j < fine->atoms.size(); ++j)
    out += "  f" + std::to_string(j) + " [label=" + dq(se_str(fine->atoms[j])) + "];\n";
  for (std::size_t i = 0; i < coarse->atoms.size(); ++i)
    for (std::size_t j = 0; j < fine->atoms.size(); ++j)
      if (se_subset(fine->atoms[j], coarse->atoms[i]))
        out += "  c" + std::to_string(i) + " -> f" + std::to_string(j) + ";\n";
  out += "}\n";
  return out;
}

std::string dot_groupoid(const SubshiftPtr& s, std::size_t depth, std::size_t window) {
  GenSetPtr fine = canonical_generators(s, depth, window);
  GenSetPtr coarse = canonical_generators(s, depth ? depth - 1 : 0, window);
  std::string out = "digraph groupoid {\n";
  out += "  // sigma-hat arrows, depth " + std::to_string(depth) + "\n";
  for (std::size_t i = 0; i < fine->atoms.size(); ++i)
    out += "  a" + std::to_string(i) + " [label=" + dq(se_str(fine->atoms[i])) + "];\n";
  for (std::size_t j = 0; j < coarse->atoms.size(); ++j)
    out += "  b" + std::to_string(j) + " [label=" + dq(se_str(coarse->atoms[j])) + "];\n";
  for (std::size_t i = 0; i < fine->atoms.size(); ++i) {
    UltraApprox xi{fine, fine->atoms[i], std::nullopt};
    if (!in_sigma_domain(xi)) continue;
    UltraApprox im = sigma_hat(xi);
    for (std::size_t j = 0; j < coarse->atoms.size(); ++j) {
      if (se_subset(im.atom, coarse->atoms[j])) {
        out += "  a" + std::to_string(i) + " -> b" + std::to_string(j) + " [label=\"1\"];\n";
        break;
      }
    }
  }
  out += "}\n";
  return out;
}

std::string json_atoms(const GenSetPtr& gens) {
  nlohmann::json j;
  j["depth"] = gens->depth_label;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : gens->gens) j["generators"].push_back(se_str(g));
  j["atoms"] = nlohmann::json::array();
  for (const auto& a : gens->atoms) j["atoms"].push_back(se_str(a));
  return j.dump(2);
}

std::string json_fiber(const SubshiftPtr& s, const OTWPoint& x, std::size_t depth,
                       std::size_t window) {
  auto fiber = cover_fiber(s, x, depth, window);
  nlohmann::json j;
  j["depth"] = depth;
  j["point"] = otw_point_str(s, x);
  j["count"] = fiber.size();
  j["atoms"] = nlohmann::json::array();
  for (const auto& xi : fiber) {
    PiResult p = pi(xi);
    nlohmann::json a;
    a["atom"] = se_str(xi.atom);
    a["pi_prefix"] = s->word_text(p.prefix);
    a["pi_status"] = p.status == PiResult::Status::Exact
                         ? "exact"
                         : p.status == PiResult::Status::Zero ? "zero" : "truncated";
    j["atoms"].push_back(a);
  }
  return j.dump(2);
}

}  // namespace shiftalg
