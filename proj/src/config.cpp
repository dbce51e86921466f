#include "shiftalg/config.hpp"

#include <fstream>
#include <set>

#include "json.hpp"

namespace shiftalg {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(Errc::ConfigError, "unknown key '" + it.key() + "' in " + where);
}

IntDomain parse_domain(const json& j, const std::string& where) {
  if (j.is_array()) {
    std::vector<long> xs;
    for (auto& v : j) xs.push_back(v.get<long>());
    return IntDomain::finite(std::move(xs));
  }
  if (j.is_object()) {
    check_keys(j, {"nat_from"}, where);
    return IntDomain::half_line(j.at("nat_from").get<long>());
  }
  fail(Errc::ConfigError, where + " must be an index list or {\"nat_from\": n}");
}

FinCofin parse_fincofin(const json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "*") return FinCofin::all();
  if (j.is_array()) {
    std::vector<long> xs;
    for (auto& v : j) xs.push_back(v.get<long>());
    return FinCofin::of(std::move(xs));
  }
  if (j.is_object()) {
    check_keys(j, {"not"}, where);
    std::vector<long> xs;
    for (auto& v : j.at("not")) xs.push_back(v.get<long>());
    FinCofin f = FinCofin::of(std::move(xs));
    f.cofinite = true;
    return f;
  }
  fail(Errc::ConfigError, where + " must be \"*\", a list, or {\"not\": [...]}");
}

Graph parse_graph(const json& j) {
  check_keys(j, {"kind", "vertices", "edges"}, "graph");
  Graph g;
  for (auto& v : j.at("vertices")) g.vertices.push_back(v.get<std::string>());
  auto vid = [&](const std::string& name) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (g.vertices[i] == name) return static_cast<int>(i);
    fail(Errc::ConfigError, "unknown vertex '" + name + "'");
  };
  for (auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3) fail(Errc::ConfigError, "edge must be [name, src, dst]");
    g.edges.push_back(Graph::Edge{e.at(0).get<std::string>(), vid(e.at(1).get<std::string>()),
                                  vid(e.at(2).get<std::string>())});
  }
  return g;
}

Ultragraph parse_ultragraph(const json& j) {
  check_keys(j, {"kind", "vertices", "families"}, "ultragraph_rules");
  Ultragraph u;
  u.vertices = parse_domain(j.at("vertices"), "vertices");
  for (auto& fj : j.at("families")) {
    check_keys(fj, {"name", "indices", "show_index", "clauses"}, "family");
    RuleFamilySpec f;
    f.display = fj.at("name").get<std::string>();
    f.indices = parse_domain(fj.at("indices"), "indices");
    f.show_index = fj.value("show_index", true);
    for (auto& cj : fj.at("clauses")) {
      check_keys(cj, {"when", "source", "range"}, "clause");
      RuleClause cl;
      cl.when = cj.contains("when") ? parse_fincofin(cj.at("when"), "when") : FinCofin::all();
      const json& sj = cj.at("source");
      if (sj.is_object() && sj.contains("const")) {
        check_keys(sj, {"const"}, "source");
        cl.source = AffineMap{0, sj.at("const").get<long>()};
      } else {
        check_keys(sj, {"slope", "offset"}, "source");
        cl.source = AffineMap{sj.value("slope", 1L), sj.value("offset", 0L)};
      }
      const json& rj = cj.at("range");
      if (rj.is_string() && rj.get<std::string>() == "*") {
        cl.range_all = true;
      } else if (rj.is_object() && rj.contains("affine_offset")) {
        check_keys(rj, {"affine_offset"}, "range");
        cl.range_affine = true;
        cl.range_offset = rj.at("affine_offset").get<long>();
      } else {
        cl.range_set = parse_fincofin(rj, "range");
      }
      f.clauses.push_back(std::move(cl));
    }
    u.families.push_back(std::move(f));
  }
  return u;
}

SubshiftPtr parse_subshift(const json& j, std::optional<Graph>* graph_out,
                           std::optional<Ultragraph>* ug_out, const std::string& name) {
  if (!j.is_object() || !j.contains("kind"))
    fail(Errc::ConfigError, "subshift needs a \"kind\"");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "forbidden_words") {
    check_keys(j, {"kind", "alphabet", "forbidden"}, "forbidden_words");
    std::vector<std::string> names;
    for (auto& a : j.at("alphabet")) names.push_back(a.get<std::string>());
    Alphabet alpha = Alphabet::symbols(names);
    std::vector<Word> forb;
    if (j.contains("forbidden"))
      for (auto& w : j.at("forbidden")) forb.push_back(word_parse(alpha, w.get<std::string>()));
    return Subshift::sft(std::move(alpha), std::move(forb), name);
  }
  if (kind == "labelled_graph") {
    check_keys(j, {"kind", "alphabet", "vertices", "edges"}, "labelled_graph");
    std::vector<std::string> names;
    for (auto& a : j.at("alphabet")) names.push_back(a.get<std::string>());
    Alphabet alpha = Alphabet::symbols(names);
    int nv = j.at("vertices").get<int>();
    std::vector<std::tuple<int, Letter, int>> edges;
    for (auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        fail(Errc::ConfigError, "labelled edge must be [src, letter, dst]");
      auto l = alpha.find(e.at(1).get<std::string>());
      if (!l) fail(Errc::ConfigError, "unknown letter in labelled graph");
      edges.emplace_back(e.at(0).get<int>(), *l, e.at(2).get<int>());
    }
    return Subshift::sofic(std::move(alpha), nv, std::move(edges), name);
  }
  if (kind == "graph") {
    Graph g = parse_graph(j);
    if (graph_out) *graph_out = g;
    return graph_edge_shift(g);
  }
  if (kind == "ultragraph_rules") {
    Ultragraph u = parse_ultragraph(j);
    if (ug_out) *ug_out = u;
    return ultragraph_edge_shift(u, name);
  }
  fail(Errc::ConfigError, "unknown subshift kind '" + kind + "'");
}

RingTag parse_ring(const json& j) {
  if (j.is_string()) {
    std::string r = j.get<std::string>();
    if (r == "Z") return RingTag{RingTag::Z, 0};
    if (r == "Q") return RingTag{RingTag::Q, 0};
    fail(Errc::ConfigError, "unknown ring '" + r + "'");
  }
  if (j.is_object()) {
    check_keys(j, {"Fp"}, "ring");
    return RingTag{RingTag::Fp, j.at("Fp").get<std::uint64_t>()};
  }
  fail(Errc::ConfigError, "ring must be \"Z\", \"Q\" or {\"Fp\": p}");
}

BlockCode parse_code(const json& j, SubshiftPtr src, SubshiftPtr dst) {
  check_keys(j, {"memory", "map", "inverse_map"}, "code");
  std::size_t memory = j.value("memory", 0);
  std::map<Word, Letter> table;
  for (auto& e : j.at("map")) {
    if (!e.is_array() || e.size() != 2) fail(Errc::ConfigError, "code map entry must be a pair");
    Word w = word_parse(src->alphabet(), e.at(0).get<std::string>());
    auto l = dst->alphabet().find(e.at(1).get<std::string>());
    if (!l) fail(Errc::ConfigError, "unknown image letter");
    table.emplace(std::move(w), *l);
  }
  BlockCode h = BlockCode::make(src, dst, memory, std::move(table));
  if (j.contains("inverse_map")) {
    std::map<Word, Letter> inv;
    for (auto& e : j.at("inverse_map")) {
      Word w = word_parse(dst->alphabet(), e.at(0).get<std::string>());
      auto l = src->alphabet().find(e.at(1).get<std::string>());
      if (!l) fail(Errc::ConfigError, "unknown image letter in inverse");
      inv.emplace(std::move(w), *l);
    }
    h.inverse = std::make_shared<BlockCode>(BlockCode::make(dst, src, memory, std::move(inv)));
  }
  return h;
}

}  // namespace

WorkbenchConfig load_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  check_keys(j, {"subshift", "target", "code", "ring", "depth", "window", "budget"}, "config");
  WorkbenchConfig cfg;
  if (j.contains("ring")) cfg.ring = parse_ring(j.at("ring"));
  cfg.depth = j.value("depth", 3);
  cfg.window = j.value("window", 5);
  cfg.budget = j.value("budget", 64);
  if (!j.contains("subshift")) fail(Errc::ConfigError, "config needs a \"subshift\"");
  cfg.subshift = parse_subshift(j.at("subshift"), &cfg.graph, &cfg.ultragraph, "subshift");
  if (j.contains("target"))
    cfg.target = parse_subshift(j.at("target"), nullptr, nullptr, "target");
  if (j.contains("code")) {
    if (!cfg.target) fail(Errc::ConfigError, "a code needs a \"target\" subshift");
    cfg.code = parse_code(j.at("code"), cfg.subshift, cfg.target);
  }
  return cfg;
}

WorkbenchConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ConfigError, "cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return load_config_text(text);
}

}  // namespace shiftalg
