// Batch front-end for the subshift algebra workbench.

#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "shiftalg/config.hpp"
#include "shiftalg/exports.hpp"
#include "shiftalg/parse.hpp"

using namespace shiftalg;

namespace {

struct Options {
  std::string config_path;
  std::string format = "table";
  WorkbenchConfig cfg;
};

int report_to_output(const RelationReport& rep, const Options& opt, const std::string& title,
                     const std::string& params) {
  bool ok = rep.all_ok();
  if (opt.format == "json") {
    nlohmann::json j;
    j["suite"] = title;
    j["params"] = params;
    j["pass"] = ok;
    j["items"] = nlohmann::json::array();
    for (auto& it : rep.items) {
      nlohmann::json e;
      e["relation"] = it.relation;
      e["checked"] = it.checked;
      e["passed"] = it.passed;
      e["skipped"] = it.skipped;
      if (!it.ok()) e["witness"] = it.witness;
      j["items"].push_back(e);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "# " << title << " " << params << "\n";
    for (auto& it : rep.items) {
      std::cout << (it.ok() ? "PASS" : "FAIL") << "  " << it.relation << "  " << it.passed << "/"
                << it.checked << " checked, " << it.skipped << " skipped";
      if (!it.ok()) std::cout << "  witness: " << it.witness;
      std::cout << "\n";
    }
    std::cout << (ok ? "all relations hold" : "relation failures found") << "\n";
  }
  return ok ? 0 : 1;
}

Flavor parse_flavor(const std::string& f) {
  if (f == "U" || f == "u") return Flavor::U;
  if (f == "B" || f == "b") return Flavor::B;
  fail(Errc::ConfigError, "flavor must be U or B");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shiftalg: exact workbench for subshift algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config_path, "workbench config file (JSON)")->required();
  app.add_option("--format", opt.format, "output format: table|json|dot")
      ->check(CLI::IsMember({"table", "json", "dot"}));

  // lang
  auto* lang = app.add_subcommand("lang", "language queries");
  std::string lang_word;
  std::size_t lang_len = 2, lang_budget = 0;
  auto* lang_member = lang->add_subcommand("member", "is the word in the language?");
  lang_member->add_option("word", lang_word)->required();
  auto* lang_enum = lang->add_subcommand("enum", "list words of a given length");
  lang_enum->add_option("length", lang_len)->required();
  lang_enum->add_option("--budget", lang_budget, "word budget (infinite alphabets)");

  // set
  auto* set = app.add_subcommand("set", "set-algebra queries");
  std::string set_expr_a, set_expr_b, set_flavor = "U";
  std::vector<std::string> set_gens;
  auto* set_eval = set->add_subcommand("eval", "canonical form of a set expression");
  set_eval->add_option("expr", set_expr_a)->required();
  set_eval->add_option("--flavor", set_flavor);
  auto* set_equal = set->add_subcommand("equal", "decide equality of two set expressions");
  set_equal->add_option("a", set_expr_a)->required();
  set_equal->add_option("b", set_expr_b)->required();
  auto* set_empty = set->add_subcommand("empty", "decide emptiness");
  set_empty->add_option("expr", set_expr_a)->required();
  auto* set_atoms = set->add_subcommand("atoms", "atoms of the subalgebra generated by sets");
  set_atoms->add_option("gens", set_gens);
  auto* set_emitted = set->add_subcommand("emitted", "letters emitted by a set");
  set_emitted->add_option("expr", set_expr_a)->required();
  auto* set_regular = set->add_subcommand("regular", "is the set regular?");
  set_regular->add_option("expr", set_expr_a)->required();
  set->add_subcommand("unital", "unitality of the subshift algebra");

  // alg
  auto* alg = app.add_subcommand("alg", "algebra-engine queries");
  std::string alg_expr_a, alg_expr_b, alg_flavor = "U";
  auto* alg_eval = alg->add_subcommand("eval", "canonical skew form");
  alg_eval->add_option("expr", alg_expr_a)->required();
  alg_eval->add_option("--flavor", alg_flavor);
  auto* alg_equal = alg->add_subcommand("equal", "decide equality");
  alg_equal->add_option("a", alg_expr_a)->required();
  alg_equal->add_option("b", alg_expr_b)->required();
  alg_equal->add_option("--flavor", alg_flavor);
  auto* alg_star = alg->add_subcommand("star", "involution");
  alg_star->add_option("expr", alg_expr_a)->required();
  auto* alg_degree = alg->add_subcommand("degree", "degree decomposition");
  alg_degree->add_option("expr", alg_expr_a)->required();

  // stone
  auto* stone = app.add_subcommand("stone", "Stone-dual and groupoid queries");
  std::string stone_point;
  std::size_t stone_depth = 0, stone_from = 1, stone_to = 2;
  auto* stone_fiber = stone->add_subcommand("fiber", "finite-depth fiber of the cover map");
  stone_fiber->add_option("--point", stone_point)->required();
  stone_fiber->add_option("--depth", stone_depth);
  auto* stone_atoms = stone->add_subcommand("atoms", "atoms of the canonical generator set");
  stone_atoms->add_option("--depth", stone_depth);
  auto* stone_tree = stone->add_subcommand("tree", "atom refinement tree (dot)");
  stone_tree->add_option("--from", stone_from);
  stone_tree->add_option("--to", stone_to);
  auto* stone_grp = stone->add_subcommand("groupoid", "sigma-hat arrows at depth (dot)");
  stone_grp->add_option("--depth", stone_depth);

  // relations
  auto* relations = app.add_subcommand("relations", "run the relation suite");
  int rel_len = 3;
  std::size_t rel_window = 0;
  relations->add_option("--max-len", rel_len, "word length bound");
  relations->add_option("--window", rel_window, "letter window (infinite alphabets)");

  // lpa
  auto* lpa = app.add_subcommand("lpa", "Leavitt path algebra bridges");
  std::size_t lpa_budget = 0;
  auto* lpa_graph = lpa->add_subcommand("graph", "verify the graph LPA relations");
  auto* lpa_ug = lpa->add_subcommand("ultragraph", "verify the ultragraph LPA relations");
  lpa_ug->add_option("--budget", lpa_budget, "vertex budget");
  auto* lpa_dot = lpa->add_subcommand("dot", "export the (ultra)graph as DOT");

  // conj
  auto* conj = app.add_subcommand("conj", "conjugacy checks");
  std::size_t conj_depth = 0, conj_m = 2;
  auto* conj_verify = conj->add_subcommand("verify", "finite-depth conjugacy checks");
  conj_verify->add_option("--depth", conj_depth);
  conj_verify->add_option("--m-budget", conj_m);

  CLI11_PARSE(app, argc, argv);

  try {
    opt.cfg = load_config_file(opt.config_path);
    const SubshiftPtr& s = opt.cfg.subshift;
    const RingTag ring = opt.cfg.ring;
    if (stone_depth == 0) stone_depth = opt.cfg.depth;
    if (conj_depth == 0) conj_depth = opt.cfg.depth;
    if (lpa_budget == 0) lpa_budget = opt.cfg.budget;
    if (rel_window == 0) rel_window = opt.cfg.window;
    if (lang_budget == 0) lang_budget = opt.cfg.budget;

    if (lang_member->parsed()) {
      Word w = word_parse(s->alphabet(), lang_word);
      bool ok = s->in_language(w);
      if (opt.format == "json") {
        nlohmann::json j{{"word", lang_word}, {"member", ok}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (ok ? "yes" : "no") << "\n";
      }
      return 0;
    }
    if (lang_enum->parsed()) {
      auto slice = s->enumerate_language(lang_len, lang_budget);
      if (opt.format == "json") {
        nlohmann::json j;
        j["length"] = lang_len;
        j["budget"] = lang_budget;
        j["truncated"] = slice.truncated;
        j["words"] = nlohmann::json::array();
        for (auto& w : slice.words) j["words"].push_back(s->word_text(w));
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "# length=" << lang_len << " budget=" << lang_budget
                  << (slice.truncated ? " (truncated)" : "") << "\n";
        for (auto& w : slice.words) std::cout << s->word_text(w) << "\n";
      }
      return 0;
    }

    if (set_eval->parsed()) {
      SetExpr e = parse_set_expr(s, set_expr_a, parse_flavor(set_flavor));
      std::cout << se_str(e) << "\n";
      return 0;
    }
    if (set_equal->parsed()) {
      bool eq = se_equal(parse_set_expr(s, set_expr_a), parse_set_expr(s, set_expr_b));
      std::cout << (eq ? "equal" : "different") << "\n";
      return 0;
    }
    if (set_empty->parsed()) {
      std::cout << (parse_set_expr(s, set_expr_a).empty() ? "empty" : "nonempty") << "\n";
      return 0;
    }
    if (set_atoms->parsed()) {
      std::vector<SetExpr> gens;
      for (auto& g : set_gens) gens.push_back(parse_set_expr(s, g));
      auto atoms = boolean_atoms(s, gens);
      if (opt.format == "json") {
        nlohmann::json j;
        j["atoms"] = nlohmann::json::array();
        for (auto& a : atoms) j["atoms"].push_back(se_str(a));
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& a : atoms) std::cout << se_str(a) << "\n";
      }
      return 0;
    }
    if (set_emitted->parsed()) {
      LetterSet em = emitted_letters(parse_set_expr(s, set_expr_a));
      std::cout << em.str(s->alphabet()) << "\n";
      return 0;
    }
    if (set_regular->parsed()) {
      std::cout << (is_regular(parse_set_expr(s, set_expr_a)) ? "regular" : "not regular")
                << "\n";
      return 0;
    }
    if (set->get_subcommand("unital")->parsed()) {
      Ternary u = is_unital(s, opt.cfg.window);
      std::cout << (u == Ternary::Yes ? "yes" : u == Ternary::No ? "no" : "unknown") << "\n";
      return 0;
    }

    if (alg_eval->parsed()) {
      AlgebraElement x = parse_alg_expr(s, alg_expr_a, ring, parse_flavor(alg_flavor));
      std::cout << x.str() << "\n";
      return 0;
    }
    if (alg_equal->parsed()) {
      Flavor fl = parse_flavor(alg_flavor);
      bool eq = parse_alg_expr(s, alg_expr_a, ring, fl)
                    .equals(parse_alg_expr(s, alg_expr_b, ring, fl));
      std::cout << (eq ? "equal" : "different") << "\n";
      return 0;
    }
    if (alg_star->parsed()) {
      std::cout << parse_alg_expr(s, alg_expr_a, ring).star().str() << "\n";
      return 0;
    }
    if (alg_degree->parsed()) {
      auto dec = parse_alg_expr(s, alg_expr_a, ring).degree_decompose();
      if (opt.format == "json") {
        nlohmann::json j;
        for (auto& [d, part] : dec) j[std::to_string(d)] = part.str();
        std::cout << j.dump(2) << "\n";
      } else {
        for (auto& [d, part] : dec) std::cout << d << ": " << part.str() << "\n";
      }
      return 0;
    }

    if (stone_fiber->parsed()) {
      OTWPoint p = parse_point(s, stone_point);
      if (opt.format == "json") {
        std::cout << json_fiber(s, p, stone_depth, opt.cfg.window) << "\n";
      } else {
        auto fiber = cover_fiber(s, p, stone_depth, opt.cfg.window);
        std::cout << "# depth=" << stone_depth << " point=" << otw_point_str(s, p) << "\n";
        std::cout << "count " << fiber.size() << "\n";
        for (auto& xi : fiber) std::cout << se_str(xi.atom) << "\n";
      }
      return 0;
    }
    if (stone_atoms->parsed()) {
      auto gens = canonical_generators(s, stone_depth, opt.cfg.window);
      if (opt.format == "json") {
        std::cout << json_atoms(gens) << "\n";
      } else {
        std::cout << "# depth=" << stone_depth << "\n";
        for (auto& a : gens->atoms) std::cout << se_str(a) << "\n";
      }
      return 0;
    }
    if (stone_tree->parsed()) {
      std::cout << dot_atom_tree(s, stone_from, stone_to, opt.cfg.window);
      return 0;
    }
    if (stone_grp->parsed()) {
      std::cout << dot_groupoid(s, stone_depth, opt.cfg.window);
      return 0;
    }

    if (relations->parsed()) {
      SuiteOptions so;
      so.max_len = rel_len;
      so.window = rel_window;
      so.ring = ring;
      auto rep = relation_suite(s, so);
      return report_to_output(rep, opt, "relation suite on " + s->name(),
                              "max-len=" + std::to_string(rel_len) +
                                  " window=" + std::to_string(rel_window));
    }

    if (lpa_graph->parsed()) {
      if (!opt.cfg.graph) fail(Errc::ConfigError, "config subshift is not a graph");
      auto rep = verify_lpa_relations(*opt.cfg.graph, ring);
      return report_to_output(rep, opt, "graph LPA relations", "");
    }
    if (lpa_ug->parsed()) {
      if (!opt.cfg.ultragraph) fail(Errc::ConfigError, "config subshift is not an ultragraph");
      auto rep = verify_ultragraph_relations(*opt.cfg.ultragraph, lpa_budget, ring);
      return report_to_output(rep, opt, "ultragraph LPA relations",
                              "budget=" + std::to_string(lpa_budget));
    }
    if (lpa_dot->parsed()) {
      if (opt.cfg.graph)
        std::cout << dot_graph(*opt.cfg.graph);
      else if (opt.cfg.ultragraph)
        std::cout << dot_ultragraph(*opt.cfg.ultragraph, s, opt.cfg.budget);
      else
        fail(Errc::ConfigError, "config subshift is not a graph or ultragraph");
      return 0;
    }

    if (conj_verify->parsed()) {
      if (!opt.cfg.code || !opt.cfg.code->inverse)
        fail(Errc::ConfigError, "conj verify needs a code with an inverse_map");
      auto rep = verify_theone(*opt.cfg.code, *opt.cfg.code->inverse, conj_depth, conj_m);
      bool ok = rep.all_passed();
      if (opt.format == "json") {
        nlohmann::json j;
        j["depth"] = rep.depth;
        j["m_budget"] = rep.m_budget;
        j["sample_bound"] = rep.sample_bound;
        j["pass"] = ok;
        j["checks"] = nlohmann::json::array();
        for (auto& c : rep.checks) {
          nlohmann::json e;
          e["name"] = c.name;
          e["status"] = c.status == ConjugacyReport::Status::Pass
                            ? "pass"
                            : c.status == ConjugacyReport::Status::Fail ? "fail" : "unknown";
          if (!c.witness.empty()) e["witness"] = c.witness;
          j["checks"].push_back(e);
        }
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "# depth=" << rep.depth << " m-budget=" << rep.m_budget
                  << " sample-bound=" << rep.sample_bound << "\n";
        for (auto& c : rep.checks) {
          std::cout << (c.status == ConjugacyReport::Status::Pass
                            ? "PASS"
                            : c.status == ConjugacyReport::Status::Fail ? "FAIL" : "????")
                    << "  " << c.name;
          if (!c.witness.empty()) std::cout << "  witness: " << c.witness;
          std::cout << "\n";
        }
        std::cout << (ok ? "all checks pass at this depth" : "checks failed") << "\n";
      }
      return ok ? 0 : 1;
    }

    fail(Errc::ConfigError, "no subcommand action matched");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
