#include <array>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "shiftalg/config.hpp"
#include "shiftalg/parse.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shiftalg;
using namespace shiftalg::fixtures;
using namespace shiftalg::oracles;

namespace {

std::pair<int, std::string> run_cli(const std::string& args) {
  std::string cmd = std::string(SHIFTALG_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  int rc = pclose(p);
  return {WEXITSTATUS(rc), out};
}

std::string fx(const std::string& name) {
  return std::string("--config ") + SHIFTALG_FIXTURES + "/" + name;
}

}  // namespace

TEST_CASE("printed canonical set expressions re-parse to equal values") {
  std::mt19937 rng(123);
  for (auto& s : finite_fixtures()) {
    for (int it = 0; it < 250; ++it) {
      SetExpr e = eval_impl(s, *random_expr(rng, s, 3, 2));
      SetExpr back = parse_set_expr(s, se_str(e));
      CHECK(se_equal(e, back));
    }
  }
  for (auto& s : {renewal(), theorpropfail()}) {
    for (int it = 0; it < 120; ++it) {
      SetExpr e = eval_impl(s, *random_expr(rng, s, 2, 2, false));
      SetExpr back = parse_set_expr(s, se_str(e));
      CHECK(se_equal(e, back));
    }
  }
}

TEST_CASE("printed canonical algebra expressions re-parse to equal values") {
  std::mt19937 rng(321);
  const RingTag Z{RingTag::Z, 0};
  for (auto& s : finite_fixtures()) {
    std::vector<Word> pool;
    for (std::size_t n = 0; n <= 2; ++n)
      for (auto& u : s->enumerate_language(n, 16).words) pool.push_back(u);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int it = 0; it < 120; ++it) {
      AlgebraElement x = AlgebraElement::zero(s, Z, Flavor::U);
      for (int k = 0; k < 3; ++k) {
        AlgebraElement mono = AlgebraElement::gen_s_word(s, pool[pick(rng)], Z, Flavor::U)
                                  .times(AlgebraElement::gen_p(c_set(s, pool[pick(rng)], Word{}),
                                                               Z, Flavor::U))
                                  .times(AlgebraElement::gen_s_word_star(s, pool[pick(rng)], Z,
                                                                         Flavor::U));
        int c = coeff(rng);
        if (c == 0) c = 2;
        x = x.plus(mono.scaled(RingElem(Z, c)));
      }
      AlgebraElement back = parse_alg_expr(s, x.str(), Z);
      CHECK(x.equals(back));
    }
  }
}

TEST_CASE("point literals parse and print") {
  auto g = golden();
  OTWPoint p = parse_point(g, "inf(0;10)");
  CHECK(p.kind == OTWPoint::Kind::Infinite);
  CHECK(otw_point_str(g, p) == "inf(;01)");  // canonical presentation
  CHECK_THROWS_AS(parse_point(g, "fin(0)"), Error);
  auto r = renewal();
  OTWPoint q = parse_point(r, "fin(e1)");
  CHECK(q.kind == OTWPoint::Kind::Finite);
  CHECK(parse_point(r, "zero").kind == OTWPoint::Kind::Zero);
}

TEST_CASE("config loading and schema rejection") {
  auto cfg = load_config_text(R"({
    "subshift": {"kind": "forbidden_words", "alphabet": ["0","1"], "forbidden": ["11"]},
    "ring": "Q", "depth": 4
  })");
  CHECK(cfg.ring.kind == RingTag::Q);
  CHECK(cfg.depth == 4);
  CHECK(cfg.subshift->in_language(word_parse(cfg.subshift->alphabet(), "010")));

  CHECK_THROWS_AS(load_config_text(R"({"subshift": {"kind": "forbidden_words",
    "alphabet": ["0"], "forbidden": []}, "bogus": 1})"),
                  Error);
  CHECK_THROWS_AS(load_config_text(R"({"subshift": {"kind": "nope"}})"), Error);
  CHECK_THROWS_AS(load_config_text("not json"), Error);
}

TEST_CASE("cli: language and set commands") {
  auto [rc1, out1] = run_cli(fx("golden.json") + " lang member 010");
  CHECK(rc1 == 0);
  CHECK(out1 == "yes\n");
  auto [rc2, out2] = run_cli(fx("golden.json") + " lang member 110");
  CHECK(rc2 == 0);
  CHECK(out2 == "no\n");
  auto [rc3, out3] = run_cli(fx("golden.json") + " set equal \"C(1,0)\" \"Z(00)\"");
  CHECK(rc3 == 0);
  CHECK(out3 == "equal\n");
  auto [rc4, out4] = run_cli(fx("theorpropfail.json") + " set unital");
  CHECK(rc4 == 0);
  CHECK(out4 == "no\n");
  auto [rc5, out5] = run_cli(fx("renewal.json") + " set unital");
  CHECK(rc5 == 0);
  CHECK(out5 == "yes\n");
}

TEST_CASE("cli: alg eval matches the spec shape") {
  auto [rc, out] = run_cli(fx("golden.json") + " alg eval \"st(0)*s(0)\"");
  CHECK(rc == 0);
  CHECK(out == "1\n");  // p_{F_0} = p_X = 1 on the golden mean
  // the canonical print re-parses to s_1 s_1^* = p_{Z_1}
  auto [rc2, out2] = run_cli(fx("golden.json") + " alg eval \"s(1)*st(1)\"");
  CHECK(rc2 == 0);
  auto g = golden();
  const RingTag Z{RingTag::Z, 0};
  AlgebraElement back = parse_alg_expr(g, out2.substr(0, out2.size() - 1), Z);
  CHECK(back.equals(AlgebraElement::gen_p(z_set(g, w(g, "1")), Z, Flavor::U)));
}

TEST_CASE("cli: stone fiber count") {
  auto [rc, out] = run_cli(fx("even.json") + " stone fiber --point \"inf(;0)\" --depth 3");
  CHECK(rc == 0);
  CHECK(out.find("count 2") != std::string::npos);
}

TEST_CASE("cli: relations exit code and deterministic json") {
  auto [rc, out] = run_cli(fx("golden.json") + " relations --max-len 2 --format json");
  CHECK(rc == 0);
  auto [rc2, out2] = run_cli(fx("golden.json") + " relations --max-len 2 --format json");
  CHECK(out == out2);
  CHECK(out.find("\"pass\": true") != std::string::npos);
}

TEST_CASE("cli: lpa and conj commands") {
  auto [rc, out] = run_cli(fx("rose2.json") + " lpa graph");
  CHECK(rc == 0);
  CHECK(out.find("FAIL") == std::string::npos);
  auto [rc2, out2] = run_cli(fx("renewal.json") + " lpa ultragraph --budget 6");
  CHECK(rc2 == 0);
  auto [rc3, out3] = run_cli(fx("swap_conj.json") + " conj verify --depth 4");
  CHECK(rc3 == 0);
  CHECK(out3.find("all checks pass") != std::string::npos);
  auto [rc4, out4] = run_cli(fx("broken_conj.json") + " conj verify --depth 3");
  CHECK(rc4 == 1);
  CHECK(out4.find("FAIL") != std::string::npos);
  auto [rc5, out5] = run_cli(fx("rose2.json") + " lpa dot");
  CHECK(rc5 == 0);
  CHECK(out5.find("digraph") != std::string::npos);
}

TEST_CASE("cli: usage and config errors exit 2") {
  auto [rc, out] = run_cli(fx("golden.json") + " set eval \"C(,\"");
  CHECK(rc == 2);
  CHECK(out.find("ParseError") != std::string::npos);
  auto [rc2, out2] = run_cli(std::string("--config /nonexistent.json set unital"));
  CHECK(rc2 == 2);
}

TEST_CASE("B-mode parsing rejects the top and complements") {
  auto t = theorpropfail();
  CHECK_THROWS_AS(parse_set_expr(t, "X", Flavor::B), Error);
  CHECK_THROWS_AS(parse_set_expr(t, "~Z(e1)", Flavor::B), Error);
  CHECK(!parse_set_expr(t, "Z(e1)|Z(f)", Flavor::B).empty());
  // on the renewal shift U = B, so the canonical X form is reachable B-side
  auto r = renewal();
  SetExpr fx = parse_set_expr(r, "F(e1)", Flavor::B);
  CHECK(se_equal(fx, se_full(r)));
  CHECK(fx.flavor() == Flavor::B);
}
