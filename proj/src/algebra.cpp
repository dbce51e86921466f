#include "shiftalg/algebra.hpp"

#include <algorithm>

namespace shiftalg {

void AlgebraElement::set_component(const FreeGroupElement& t, StepFn f) {
  if (f.is_zero())
    comps_.erase(t);
  else
    comps_[t] = std::move(f);
}

void AlgebraElement::check_compatible(const AlgebraElement& o) const {
  if (shift_ != o.shift_) fail(Errc::Internal, "elements over different subshifts");
  if (ring_ != o.ring_) fail(Errc::RingMismatch, "elements over different rings");
  if (flavor_ != o.flavor_) fail(Errc::FlavorMismatch, "mixing unital and plain elements");
}

AlgebraElement AlgebraElement::zero(const SubshiftPtr& s, RingTag ring, Flavor fl) {
  return AlgebraElement(s, ring, fl);
}

AlgebraElement AlgebraElement::one(const SubshiftPtr& s, RingTag ring, Flavor fl) {
  if (fl == Flavor::B) {
    Ternary u = is_unital(s);
    if (u != Ternary::Yes)
      fail(Errc::TopUnavailable, u == Ternary::No ? "the plain algebra has no unit"
                                                  : "unitality undecided; no unit constructed");
  }
  AlgebraElement x(s, ring, fl);
  SetExpr full = se_full(s);
  x.set_component(FreeGroupElement::identity(), StepFn::indicator(full, RingElem::one(ring)));
  return x;
}

AlgebraElement AlgebraElement::gen_p(const SetExpr& a, RingTag ring, Flavor fl) {
  if (fl == Flavor::B && a.flavor() != Flavor::B)
    fail(Errc::FlavorMismatch, "plain algebra projections need B-flavor sets");
  AlgebraElement x(a.shift(), ring, fl);
  x.set_component(FreeGroupElement::identity(), StepFn::indicator(a, RingElem::one(ring)));
  return x;
}

AlgebraElement AlgebraElement::gen_s(const SubshiftPtr& s, Letter a, RingTag ring, Flavor fl) {
  AlgebraElement x(s, ring, fl);
  FreeGroupElement t{Word{{a}}, Word{}};
  x.set_component(t, StepFn::indicator(domain_of(s, t), RingElem::one(ring)));
  return x;
}

AlgebraElement AlgebraElement::gen_s_star(const SubshiftPtr& s, Letter a, RingTag ring,
                                          Flavor fl) {
  AlgebraElement x(s, ring, fl);
  FreeGroupElement t{Word{}, Word{{a}}};
  x.set_component(t, StepFn::indicator(domain_of(s, t), RingElem::one(ring)));
  return x;
}

AlgebraElement AlgebraElement::gen_s_word(const SubshiftPtr& s, const Word& w, RingTag ring,
                                          Flavor fl) {
  if (w.is_empty()) return one(s, ring, fl);
  AlgebraElement x = gen_s(s, w.at(0), ring, fl);
  for (std::size_t i = 1; i < w.size(); ++i) x = x.times(gen_s(s, w.at(i), ring, fl));
  return x;
}

AlgebraElement AlgebraElement::gen_s_word_star(const SubshiftPtr& s, const Word& w, RingTag ring,
                                               Flavor fl) {
  if (w.is_empty()) return one(s, ring, fl);
  AlgebraElement x = gen_s_star(s, w.back(), ring, fl);
  for (std::size_t i = w.size() - 1; i-- > 0;) x = x.times(gen_s_star(s, w.at(i), ring, fl));
  return x;
}

AlgebraElement AlgebraElement::monomial(const SubshiftPtr& s, const FreeGroupElement& t,
                                        const StepFn& f, Flavor fl) {
  AlgebraElement x(s, f.ring(), fl);
  x.set_component(t, f.restricted(domain_of(s, t)));
  return x;
}

AlgebraElement AlgebraElement::plus(const AlgebraElement& o) const {
  check_compatible(o);
  AlgebraElement out = *this;
  for (const auto& [t, g] : o.comps_) {
    auto it = out.comps_.find(t);
    if (it == out.comps_.end()) {
      out.comps_.emplace(t, g);
    } else {
      StepFn sum = it->second.plus(g);
      if (sum.is_zero())
        out.comps_.erase(it);
      else
        it->second = std::move(sum);
    }
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const RingElem& r) const {
  AlgebraElement out(shift_, ring_, flavor_);
  if (r.is_zero()) return out;
  for (const auto& [t, f] : comps_) out.comps_.emplace(t, f.scaled(r));
  return out;
}

AlgebraElement AlgebraElement::minus(const AlgebraElement& o) const {
  return plus(o.scaled(RingElem(ring_, -1)));
}

AlgebraElement AlgebraElement::times(const AlgebraElement& o) const {
  check_compatible(o);
  AlgebraElement out(shift_, ring_, flavor_);
  for (const auto& [s, f] : comps_) {
    for (const auto& [t, g] : o.comps_) {
      auto term = skew_mul(shift_, SkewTerm{s, f}, SkewTerm{t, g});
      if (!term) continue;
      auto it = out.comps_.find(term->t);
      if (it == out.comps_.end()) {
        out.comps_.emplace(term->t, std::move(term->f));
      } else {
        StepFn sum = it->second.plus(term->f);
        if (sum.is_zero())
          out.comps_.erase(it);
        else
          it->second = std::move(sum);
      }
    }
  }
  return out;
}

AlgebraElement AlgebraElement::star() const {
  AlgebraElement out(shift_, ring_, flavor_);
  for (const auto& [t, f] : comps_) {
    out.set_component(t.inverse(), tau_apply(shift_, t.inverse(), f));
  }
  return out;
}

bool AlgebraElement::equals(const AlgebraElement& o) const { return minus(o).is_zero(); }

std::map<int, AlgebraElement> AlgebraElement::degree_decompose() const {
  std::map<int, AlgebraElement> out;
  for (const auto& [t, f] : comps_) {
    auto it = out.find(t.degree());
    if (it == out.end()) it = out.emplace(t.degree(), AlgebraElement(shift_, ring_, flavor_)).first;
    it->second.comps_.emplace(t, f);
  }
  return out;
}

bool AlgebraElement::homogeneous(int* deg) const {
  if (comps_.empty()) return true;
  int d = comps_.begin()->first.degree();
  for (const auto& [t, f] : comps_)
    if (t.degree() != d) return false;
  if (deg) *deg = d;
  return true;
}

AlgebraElement AlgebraElement::as_unital() const {
  AlgebraElement out(shift_, ring_, Flavor::U);
  out.comps_ = comps_;
  return out;
}

std::string AlgebraElement::str() const {
  if (comps_.empty()) return "0";
  // sort by (degree, pos, neg)
  std::vector<const std::pair<const FreeGroupElement, StepFn>*> items;
  for (const auto& kv : comps_) items.push_back(&kv);
  std::sort(items.begin(), items.end(), [](auto* a, auto* b) {
    int da = a->first.degree(), db = b->first.degree();
    if (da != db) return da < db;
    return a->first < b->first;
  });
  std::string out;
  const auto& alpha = shift_->alphabet();
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& t = items[i]->first;
    const auto& f = items[i]->second;
    for (std::size_t c = 0; c < f.cells().size(); ++c) {
      if (!out.empty()) out += " + ";
      const auto& [cell, coeff] = f.cells()[c];
      if (!coeff.is_one()) out += coeff.str() + "*";
      std::vector<std::string> parts;
      if (!t.pos.is_empty()) parts.push_back("s(" + word_str(alpha, t.pos) + ")");
      // the stored cell is already pos-prefixed inside W_t; the printable
      // diagonal factor is its pullback r(cell, pos)
      if (!se_equal(cell, domain_of(shift_, t)) || t.is_identity())
        parts.push_back("p(" + se_str(relative_range(cell, t.pos)) + ")");
      if (!t.neg.is_empty()) parts.push_back("st(" + word_str(alpha, t.neg) + ")");
      if (parts.size() == 1 && parts[0] == "p(X)") parts[0] = "1";
      std::string term;
      for (std::size_t k = 0; k < parts.size(); ++k) term += (k ? "*" : "") + parts[k];
      out += term;
    }
  }
  return out;
}

AlgebraElement e_M(const SubshiftPtr& s, const std::vector<Letter>& m, RingTag ring, Flavor fl) {
  AlgebraElement out = AlgebraElement::zero(s, ring, fl);
  for (Letter a : m) {
    out = out.plus(AlgebraElement::gen_s(s, a, ring, fl)
                       .times(AlgebraElement::gen_s_star(s, a, ring, fl)));
  }
  return out;
}

AlgebraElement tau_M(const std::vector<Letter>& m, const AlgebraElement& x) {
  AlgebraElement out = AlgebraElement::zero(x.shift(), x.ring(), x.flavor());
  for (Letter a : m)
    for (Letter b : m) {
      out = out.plus(AlgebraElement::gen_s(x.shift(), a, x.ring(), x.flavor())
                         .times(x)
                         .times(AlgebraElement::gen_s_star(x.shift(), b, x.ring(), x.flavor())));
    }
  return out;
}

AlgebraElement unitize(const AlgebraElement& x, const RingElem& r) {
  if (x.flavor() != Flavor::B) fail(Errc::FlavorMismatch, "unitize takes a plain element");
  AlgebraElement out = x.as_unital();
  if (!r.is_zero())
    out = out.plus(AlgebraElement::one(x.shift(), x.ring(), Flavor::U).scaled(r));
  return out;
}

// ===========================================================================
// relation suite

namespace {

struct Suite {
  const SubshiftPtr& s;
  const SuiteOptions& opt;
  RelationReport& rep;
  std::vector<Word> words;      // language words, length <= L, window letters
  std::vector<Letter> letters;  // the window
  std::vector<SetExpr> upool;   // generator pool, flavor U closure
  std::vector<SetExpr> bpool;   // flavor B pool

  RelationReport::Item* item(const std::string& name) {
    rep.items.push_back(RelationReport::Item{name, 0, 0, 0, ""});
    return &rep.items.back();
  }
  void check(RelationReport::Item* it, bool ok, const std::string& witness) {
    ++it->checked;
    if (ok)
      ++it->passed;
    else if (it->witness.empty())
      it->witness = witness;
  }
  void skip(RelationReport::Item* it) { ++it->skipped; }
};

std::vector<Word> window_words(const SubshiftPtr& s, int max_len, std::size_t window) {
  std::vector<Letter> win = s->alphabet().window(window);
  std::vector<Word> out{Word{}};
  std::size_t lo = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t hi = out.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (Letter a : win) {
        Word w = out[i].append(a);
        if (s->in_language(w)) out.push_back(w);
      }
    lo = hi;
  }
  return out;
}

}  // namespace

RelationReport relation_suite(const SubshiftPtr& s, const SuiteOptions& opt) {
  RelationReport rep;
  Suite suite{s, opt, rep, {}, {}, {}, {}};
  suite.letters = s->alphabet().window(opt.window);
  std::vector<Letter> lang_letters;
  for (Letter a : suite.letters)
    if (s->in_language(Word{{a}})) lang_letters.push_back(a);
  suite.letters = lang_letters;
  suite.words = window_words(s, opt.max_len, opt.window);

  // pool of sets: C(alpha,beta) over the word window, a few intersections,
  // and complements on the U side
  for (const auto& a : suite.words)
    for (const auto& b : suite.words) {
      if (suite.bpool.size() >= opt.pool_cap) break;
      if (a.is_empty() && b.is_empty()) continue;
      SetExpr c = c_set(s, a, b);
      if (!c.empty()) suite.bpool.push_back(c);
    }
  suite.upool = suite.bpool;
  suite.upool.push_back(se_full(s));
  for (std::size_t i = 0; i + 1 < suite.bpool.size() && suite.upool.size() < opt.pool_cap + 8;
       i += 3)
    suite.upool.push_back(se_intersect(suite.bpool[i], suite.bpool[i + 1]));
  for (std::size_t i = 0; i < suite.bpool.size() && suite.upool.size() < opt.pool_cap + 12; i += 5)
    suite.upool.push_back(se_complement(suite.bpool[i]));

  const RingTag R = opt.ring;
  auto S = [&](Letter a, Flavor fl) { return AlgebraElement::gen_s(s, a, R, fl); };
  auto St = [&](Letter a, Flavor fl) { return AlgebraElement::gen_s_star(s, a, R, fl); };
  auto Sw = [&](const Word& w, Flavor fl) { return AlgebraElement::gen_s_word(s, w, R, fl); };
  auto Swt = [&](const Word& w, Flavor fl) {
    return AlgebraElement::gen_s_word_star(s, w, R, fl);
  };
  auto P = [&](const SetExpr& a, Flavor fl) { return AlgebraElement::gen_p(a, R, fl); };
  auto one = [&] { return AlgebraElement::one(s, R, Flavor::U); };
  auto wname = [&](const Word& w) { return "'" + s->word_text(w) + "'"; };

  // ---- Def. gelado (i): projection laws incl. p_X = 1 and p_empty = 0
  {
    auto* it = suite.item("gelado.i");
    suite.check(it, P(se_full(s), Flavor::U).equals(one()), "p_X != 1");
    suite.check(it, AlgebraElement::gen_p(se_empty(s), R, Flavor::U).is_zero(), "p_{} != 0");
    for (std::size_t i = 0; i < suite.upool.size(); i += 2)
      for (std::size_t j = 0; j < suite.upool.size(); j += 3) {
        const SetExpr &A = suite.upool[i], &B = suite.upool[j];
        bool ok1 = P(se_intersect(A, B), Flavor::U).equals(P(A, Flavor::U).times(P(B, Flavor::U)));
        bool ok2 = P(se_union(A, B), Flavor::U)
                       .equals(P(A, Flavor::U)
                                   .plus(P(B, Flavor::U))
                                   .minus(P(se_intersect(A, B), Flavor::U)));
        suite.check(it, ok1 && ok2, "p laws at pool " + std::to_string(i) + "," + std::to_string(j));
      }
  }
  // ---- Def. gelado (ii) and nonunital (ii): partial isometries
  for (Flavor fl : {Flavor::U, Flavor::B}) {
    auto* it = suite.item(fl == Flavor::U ? "gelado.ii" : "nonunital.ii");
    for (Letter a : suite.letters) {
      bool ok1 = S(a, fl).times(St(a, fl)).times(S(a, fl)).equals(S(a, fl));
      bool ok2 = St(a, fl).times(S(a, fl)).times(St(a, fl)).equals(St(a, fl));
      suite.check(it, ok1 && ok2, "letter " + s->letter_str(a));
    }
  }
  // ---- Def. gelado (iii): s_beta s_alpha^* s_alpha s_beta^* = p_C(alpha,beta)
  {
    auto* it = suite.item("gelado.iii");
    for (const auto& a : suite.words)
      for (const auto& b : suite.words) {
        AlgebraElement lhs = Sw(b, Flavor::U)
                                 .times(Swt(a, Flavor::U))
                                 .times(Sw(a, Flavor::U))
                                 .times(Swt(b, Flavor::U));
        suite.check(it, lhs.equals(P(c_set(s, a, b), Flavor::U)), wname(a) + "," + wname(b));
      }
  }
  // ---- Def. nonunitalalgebra (i),(iii),(iv),(v)
  {
    auto* it = suite.item("nonunital.i");
    suite.check(it, AlgebraElement::gen_p(se_empty(s, Flavor::B), R, Flavor::B).is_zero(),
                "p_{} != 0");
    for (std::size_t i = 0; i < suite.bpool.size(); i += 2)
      for (std::size_t j = 0; j < suite.bpool.size(); j += 3) {
        const SetExpr &A = suite.bpool[i], &B = suite.bpool[j];
        bool ok1 =
            P(se_intersect(A, B), Flavor::B).equals(P(A, Flavor::B).times(P(B, Flavor::B)));
        bool ok2 = P(se_union(A, B), Flavor::B)
                       .equals(P(A, Flavor::B)
                                   .plus(P(B, Flavor::B))
                                   .minus(P(se_intersect(A, B), Flavor::B)));
        suite.check(it, ok1 && ok2, "pool " + std::to_string(i) + "," + std::to_string(j));
      }
  }
  {
    auto* it = suite.item("nonunital.iii");
    for (const auto& a : suite.words)
      for (const auto& b : suite.words) {
        if (a.is_empty() || b.is_empty()) continue;
        AlgebraElement lhs = Sw(b, Flavor::B)
                                 .times(Swt(a, Flavor::B))
                                 .times(Sw(a, Flavor::B))
                                 .times(Swt(b, Flavor::B));
        suite.check(it, lhs.equals(P(c_set(s, a, b), Flavor::B)), wname(a) + "," + wname(b));
      }
  }
  {
    auto* it = suite.item("nonunital.iv");
    for (const auto& a : suite.words) {
      if (a.is_empty()) continue;
      suite.check(it, Swt(a, Flavor::B).times(Sw(a, Flavor::B)).equals(P(f_set(s, a), Flavor::B)),
                  wname(a));
    }
  }
  {
    auto* it = suite.item("nonunital.v");
    for (const auto& b : suite.words) {
      if (b.is_empty()) continue;
      suite.check(it, Sw(b, Flavor::B).times(Swt(b, Flavor::B)).equals(P(z_set(s, b), Flavor::B)),
                  wname(b));
    }
  }
  // ---- Prop. lemma.algebra.unital (i)-(v)
  {
    auto* it = suite.item("algebra.unital.i");
    for (Letter a : suite.letters)
      for (Letter b : suite.letters) {
        AlgebraElement lhs = St(a, Flavor::U).times(S(b, Flavor::U));
        AlgebraElement rhs = a == b ? P(f_set(s, Word{{a}}), Flavor::U)
                                    : AlgebraElement::zero(s, R, Flavor::U);
        suite.check(it, lhs.equals(rhs), s->letter_str(a) + "," + s->letter_str(b));
      }
  }
  {
    auto* it = suite.item("algebra.unital.ii/iii");
    for (std::size_t i = 0; i < suite.words.size(); i += 2)
      for (std::size_t j = 0; j < suite.words.size(); j += 3) {
        const Word &a = suite.words[i], &b = suite.words[j];
        AlgebraElement pa = Swt(a, Flavor::U).times(Sw(a, Flavor::U));
        AlgebraElement pb1 = Swt(b, Flavor::U).times(Sw(b, Flavor::U));
        AlgebraElement pb2 = Sw(b, Flavor::U).times(Swt(b, Flavor::U));
        bool ok = pa.times(pb1).equals(pb1.times(pa)) && pa.times(pb2).equals(pb2.times(pa));
        suite.check(it, ok, wname(a) + "," + wname(b));
      }
  }
  {
    auto* it = suite.item("algebra.unital.iv");
    for (const auto& a : suite.words)
      for (const auto& b : suite.words) {
        if (s->in_language(a.concat(b))) {
          suite.skip(it);
          continue;
        }
        suite.check(it, Sw(a, Flavor::U).times(Sw(b, Flavor::U)).is_zero(),
                    wname(a) + "." + wname(b));
      }
  }
  {
    // (v): every p_C(alpha,beta) is rebuilt from single-letter generators
    auto* it = suite.item("algebra.unital.v");
    for (const auto& a : suite.words)
      for (const auto& b : suite.words) {
        AlgebraElement acc = one();
        for (std::size_t i = 0; i < b.size(); ++i) acc = acc.times(S(b.at(i), Flavor::U));
        for (std::size_t i = a.size(); i-- > 0;) acc = acc.times(St(a.at(i), Flavor::U));
        for (std::size_t i = 0; i < a.size(); ++i) acc = acc.times(S(a.at(i), Flavor::U));
        for (std::size_t i = b.size(); i-- > 0;) acc = acc.times(St(b.at(i), Flavor::U));
        suite.check(it, acc.equals(P(c_set(s, a, b), Flavor::U)), wname(a) + "," + wname(b));
      }
  }
  // ---- Lemma siames (i)-(v)
  {
    auto* it = suite.item("siames.i/ii");
    for (const auto& a : suite.words) {
      if (a.is_empty()) continue;
      AlgebraElement prod = one(), prod_star = one();
      for (std::size_t i = 0; i < a.size(); ++i) prod = prod.times(S(a.at(i), Flavor::U));
      for (std::size_t i = a.size(); i-- > 0;) prod_star = prod_star.times(St(a.at(i), Flavor::U));
      FreeGroupElement t{a, Word{}};
      AlgebraElement direct = AlgebraElement::monomial(
          s, t, StepFn::indicator(domain_of(s, t), RingElem::one(R)), Flavor::U);
      AlgebraElement direct_star = AlgebraElement::monomial(
          s, t.inverse(), StepFn::indicator(domain_of(s, t.inverse()), RingElem::one(R)),
          Flavor::U);
      suite.check(it, prod.equals(direct) && prod_star.equals(direct_star), wname(a));
    }
  }
  {
    auto* it = suite.item("siames.iii/iv");
    for (const auto& a : suite.words) {
      if (a.is_empty()) continue;
      bool ok1 = Sw(a, Flavor::U).times(Swt(a, Flavor::U)).equals(P(z_set(s, a), Flavor::U));
      bool ok2 = Swt(a, Flavor::U).times(Sw(a, Flavor::U)).equals(P(f_set(s, a), Flavor::U));
      suite.check(it, ok1 && ok2, wname(a));
    }
  }
  {
    auto* it = suite.item("siames.v");
    for (const auto& a : suite.words)
      for (const auto& b : suite.words) {
        if (a.is_empty() || b.is_empty()) continue;
        if (a.back() == b.back()) {
          suite.skip(it);  // alpha beta^{-1} not in reduced form
          continue;
        }
        FreeGroupElement t{a, b};
        AlgebraElement direct = AlgebraElement::monomial(
            s, t, StepFn::indicator(domain_of(s, t), RingElem::one(R)), Flavor::U);
        suite.check(it, Sw(a, Flavor::U).times(Swt(b, Flavor::U)).equals(direct),
                    wname(a) + "," + wname(b));
      }
  }
  // ---- Def. def:LPA (i)-(v) over the U pool
  {
    auto* it = suite.item("lpa.ii");
    for (std::size_t i = 0; i < suite.upool.size(); ++i)
      for (Letter a : suite.letters) {
        const SetExpr& A = suite.upool[i];
        SetExpr rAa = relative_range(A, Word{{a}});
        bool ok1 = P(A, Flavor::U).times(S(a, Flavor::U)).equals(
            S(a, Flavor::U).times(P(rAa, Flavor::U)));
        bool ok2 = St(a, Flavor::U).times(P(A, Flavor::U)).equals(
            P(rAa, Flavor::U).times(St(a, Flavor::U)));
        suite.check(it, ok1 && ok2, "pool " + std::to_string(i) + ", " + s->letter_str(a));
      }
  }
  {
    auto* it = suite.item("lpa.iii");
    for (Letter a : suite.letters)
      for (Letter b : suite.letters) {
        if (a == b) {
          suite.check(it,
                      St(a, Flavor::U).times(S(a, Flavor::U))
                          .equals(P(relative_range(se_full(s), Word{{a}}), Flavor::U)),
                      s->letter_str(a));
        } else {
          suite.check(it, St(b, Flavor::U).times(S(a, Flavor::U)).is_zero(),
                      s->letter_str(a) + "," + s->letter_str(b));
        }
      }
  }
  {
    auto* it = suite.item("lpa.v");
    for (std::size_t i = 0; i < suite.upool.size(); ++i) {
      const SetExpr& A = suite.upool[i];
      if (!is_regular(A)) {
        suite.skip(it);
        continue;
      }
      LetterSet em = emitted_letters(A);
      AlgebraElement sum = AlgebraElement::zero(s, R, Flavor::U);
      for (Letter a : em.list(s->alphabet())) {
        sum = sum.plus(S(a, Flavor::U)
                           .times(P(relative_range(A, Word{{a}}), Flavor::U))
                           .times(St(a, Flavor::U)));
      }
      suite.check(it, sum.equals(P(A, Flavor::U)), "pool " + std::to_string(i));
    }
  }
  return rep;
}

}  // namespace shiftalg
