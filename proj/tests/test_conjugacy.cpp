#include <random>

#include "doctest.h"
#include "shiftalg/conjugacy.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace shiftalg;
using namespace shiftalg::fixtures;
using namespace shiftalg::oracles;

namespace {

BlockCode swap_code() {
  return BlockCode::letter_code(golden(), golden_mirror(), {{"0", "1"}, {"1", "0"}}, true);
}

BlockCode identity_code(const SubshiftPtr& s) {
  return BlockCode::letter_code(s, s, {{"0", "0"}, {"1", "1"}}, true);
}

// identity letter map golden-mean -> even shift: not a conjugacy, since
// (01)^inf is not an even-shift point
BlockCode broken_code() {
  return BlockCode::letter_code(golden(), even(), {{"0", "0"}, {"1", "1"}}, true);
}

}  // namespace

TEST_CASE("apply_code") {
  BlockCode h = swap_code();
  auto g = golden();
  CHECK(h.dst->word_text(apply_code(h, w(g, "010"))) == "101");
  BlockCode id = identity_code(g);
  CHECK(apply_code(id, w(g, "010")) == w(g, "010"));

  // memory-1 higher-block recode of the golden mean
  auto g2 = golden();
  Alphabet abc = Alphabet::symbols({"a", "b", "c"});
  // blocks 00 -> a, 01 -> b, 10 -> c
  SubshiftPtr target = Subshift::sft(
      abc,
      {word_parse(abc, "ac"), word_parse(abc, "ba"), word_parse(abc, "bb"),
       word_parse(abc, "cc")},
      "golden-2block");
  std::map<Word, Letter> table;
  table.emplace(w(g2, "00"), *abc.find("a"));
  table.emplace(w(g2, "01"), *abc.find("b"));
  table.emplace(w(g2, "10"), *abc.find("c"));
  BlockCode hb = BlockCode::make(g2, target, 1, table);
  Word img = apply_code(hb, w(g2, "010"));
  CHECK(img.size() == 2);
  CHECK(target->word_text(img) == "bc");
  CHECK_THROWS_AS(apply_code(hb, w(g2, "0")), Error);
  EvPeriodic p = apply_code_point(hb, pt(g2, "", "01"));
  CHECK(target->point_in(p));
}

TEST_CASE("image_of_set for letter codes") {
  BlockCode h = swap_code();
  const SubshiftPtr& g = h.src;
  const SubshiftPtr& m = h.dst;
  CHECK(se_equal(image_of_set(h, z_set(g, w(g, "0"))), z_set(m, word_parse(m->alphabet(), "1"))));
  CHECK(se_equal(image_of_set(h, c_set(g, w(g, "1"), w(g, "0"))),
                 c_set(m, word_parse(m->alphabet(), "0"), word_parse(m->alphabet(), "1"))));
  // identity maps everything to itself
  BlockCode id = identity_code(golden());
  {
    const SubshiftPtr& gs = id.src;
    for (std::size_t n = 0; n <= 3; ++n)
      for (auto& u : gs->enumerate_language(n, 16).words)
        CHECK(se_equal(image_of_set(id, z_set(gs, u)), z_set(gs, u)));
  }
  // broken map: flagged against pointwise images
  BlockCode bad = broken_code();
  bool flagged = false;
  try {
    SetExpr img = image_of_set(bad, z_set(bad.src, w(bad.src, "0")));
    (void)img;
  } catch (const Error& e) {
    flagged = e.code() == Errc::Inconsistent;
  }
  CHECK(flagged);
  // no declared inverse: NotInvertible
  BlockCode noinv = BlockCode::letter_code(g, golden_mirror(), {{"0", "1"}, {"1", "0"}}, false);
  CHECK_THROWS_AS(image_of_set(noinv, z_set(noinv.src, w(noinv.src, "0"))), Error);
}

TEST_CASE("image_of_set preserves the Boolean operations") {
  BlockCode h = swap_code();
  const SubshiftPtr& g = h.src;
  std::mt19937 rng(5);
  for (int it = 0; it < 200; ++it) {
    SetExpr A = eval_impl(g, *random_expr(rng, g, 2, 2));
    SetExpr B = eval_impl(g, *random_expr(rng, g, 2, 2));
    SetExpr ua = image_of_set(h, A), ub = image_of_set(h, B);
    CHECK(se_equal(image_of_set(h, se_union(A, B)), se_union(ua, ub)));
    CHECK(se_equal(image_of_set(h, se_intersect(A, B)), se_intersect(ua, ub)));
    CHECK(se_equal(image_of_set(h, se_minus(A, B)), se_minus(ua, ub)));
  }
}

TEST_CASE("induced_h_hat is a bijection on atoms for conjugacies") {
  BlockCode h = swap_code();
  auto pairs = induced_h_hat(h, 3, 4);
  std::size_t matched = 0;
  for (auto& p : pairs) {
    REQUIRE(p.to.has_value());
    ++matched;
  }
  CHECK(matched == pairs.size());
  std::vector<const SetExpr*> images;
  for (auto& p : pairs) {
    for (auto* q : images) CHECK(!se_equal(*q, p.to->atom));
    images.push_back(&p.to->atom);
  }

  BlockCode id = identity_code(golden());
  for (auto& p : induced_h_hat(id, 3, 4)) {
    REQUIRE(p.to.has_value());
    CHECK(se_equal(p.from.atom, p.to->atom));
  }

  // h-hat commutes with coarsening for the swap
  auto g1f = canonical_generators(h.src, 3, 4);
  auto g1c = canonical_generators(h.src, 2, 4);
  auto g2c = canonical_generators(h.dst, 2, 4);
  for (auto& atom : g1f->atoms) {
    UltraApprox fine{g1f, atom, std::nullopt};
    SetExpr img_then_coarse = image_of_set(h, coarsen(fine, g1c).atom);
    UltraApprox imgatom{g2c, image_of_set(h, atom), std::nullopt};
    // the coarse image atom contains the fine image
    bool found = false;
    for (auto& b : g2c->atoms)
      if (se_equal(b, img_then_coarse)) {
        found = true;
        CHECK(se_subset(imgatom.atom, b));
      }
    CHECK(found);
  }
}

TEST_CASE("verify_theone passes on the swap and the identity") {
  BlockCode h = swap_code();
  auto rep = verify_theone(h, *h.inverse, 4, 2);
  for (auto& c : rep.checks) {
    INFO(c.name << " witness: " << c.witness);
    CHECK(c.status == ConjugacyReport::Status::Pass);
  }
  CHECK(rep.depth == 4);

  BlockCode id = identity_code(golden());
  auto rep2 = verify_theone(id, *id.inverse, 4, 2);
  CHECK(rep2.all_passed());
}

TEST_CASE("verify_theone fails check (b) with a witness on the broken map") {
  BlockCode bad = broken_code();
  BlockCode bad_inv = *bad.inverse;
  auto rep = verify_theone(bad, bad_inv, 3, 2);
  bool b_failed = false;
  for (auto& c : rep.checks) {
    if (c.name[0] == 'b') {
      b_failed = c.status == ConjugacyReport::Status::Fail;
      CHECK(!c.witness.empty());
    }
  }
  CHECK(b_failed);
  CHECK(!rep.all_passed());

  // failure monotonicity: still failing at depth 4
  auto rep4 = verify_theone(bad, bad_inv, 4, 2);
  bool b_failed4 = false;
  for (auto& c : rep4.checks)
    if (c.name[0] == 'b' && c.status == ConjugacyReport::Status::Fail) b_failed4 = true;
  CHECK(b_failed4);
}

TEST_CASE("length preservation of letter codes") {
  BlockCode h = swap_code();
  auto g = golden();
  for (std::size_t n = 0; n <= 5; ++n)
    for (auto& u : g->enumerate_language(n, 64).words)
      CHECK(apply_code(h, u).size() == u.size());
}

TEST_CASE("even-shift self-code maps the two atoms over 0^inf to two atoms") {
  BlockCode id = BlockCode::letter_code(even(), even(), {{"0", "0"}, {"1", "1"}}, true);
  // wait: letter_code(even(), even(), ...) builds two distinct instances
  BlockCode self = [&] {
    auto e = even();
    return BlockCode::letter_code(e, e, {{"0", "0"}, {"1", "1"}}, true);
  }();
  (void)id;
  auto s = self.src;
  auto fiber = cover_fiber(s, OTWPoint::infinite(s, pt(s, "", "0")), 3, 4);
  REQUIRE(fiber.size() == 2);
  std::vector<SetExpr> images;
  for (auto& xi : fiber) images.push_back(image_of_set(self, xi.atom));
  CHECK(!se_equal(images[0], images[1]));
  for (auto& img : images) {
    bool found = false;
    for (auto& xi : fiber)
      if (se_equal(img, xi.atom)) found = true;
    CHECK(found);
  }
}
