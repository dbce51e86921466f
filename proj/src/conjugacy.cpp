#include "shiftalg/conjugacy.hpp"

#include <algorithm>

namespace shiftalg {

BlockCode BlockCode::make(SubshiftPtr src, SubshiftPtr dst, std::size_t memory,
                          std::map<Word, Letter> table) {
  BlockCode h;
  h.src = std::move(src);
  h.dst = std::move(dst);
  h.memory = memory;
  h.table = std::move(table);
  if (h.src->finite_alphabet()) {
    for (auto& w : h.src->enumerate_language(memory + 1, 4096).words)
      if (!h.table.count(w)) fail(Errc::ConfigError, "block map not total on L_{m+1}");
  }
  for (auto& [w, a] : h.table) {
    h.src->check_word(w);
    h.dst->check_word(Word{{a}});
  }
  return h;
}

BlockCode BlockCode::letter_code(SubshiftPtr src, SubshiftPtr dst,
                                 const std::vector<std::pair<std::string, std::string>>& pairs,
                                 bool with_inverse) {
  std::map<Word, Letter> fwd;
  std::map<Word, Letter> bwd;
  for (auto& [from, to] : pairs) {
    Letter a = *src->alphabet().find(from);
    auto b = dst->alphabet().find(to);
    if (!b) fail(Errc::UnknownLetter, "image letter " + to);
    fwd.emplace(Word{{a}}, *b);
    bwd.emplace(Word{{*b}}, a);
  }
  BlockCode h = make(src, dst, 0, std::move(fwd));
  if (with_inverse) {
    auto inv = std::make_shared<BlockCode>(make(dst, src, 0, std::move(bwd)));
    h.inverse = inv;
  }
  return h;
}

Letter BlockCode::code_at(const Word& block) const {
  auto it = table.find(block);
  if (it == table.end()) fail(Errc::OutsideLanguage, "block outside the code table");
  return it->second;
}

Word apply_code(const BlockCode& h, const Word& w) {
  if (w.size() < h.memory + 1) {
    if (w.is_empty() && h.memory == 0) return Word{};
    fail(Errc::OutsideLanguage, "word shorter than the code window");
  }
  Word out;
  for (std::size_t i = 0; i + h.memory < w.size(); ++i)
    out.letters.push_back(h.code_at(w.slice(i + 1, i + h.memory + 1)));
  return out;
}

EvPeriodic apply_code_point(const BlockCode& h, const EvPeriodic& x) {
  EvPeriodic out;
  std::size_t pre = x.pre.size();
  for (std::size_t i = 0; i < pre; ++i) {
    Word block;
    for (std::size_t j = 0; j <= h.memory; ++j) block.letters.push_back(x.at(i + j));
    out.pre.letters.push_back(h.code_at(block));
  }
  for (std::size_t i = pre; i < pre + x.per.size(); ++i) {
    Word block;
    for (std::size_t j = 0; j <= h.memory; ++j) block.letters.push_back(x.at(i + j));
    out.per.letters.push_back(h.code_at(block));
  }
  out.canonicalize();
  return out;
}

namespace {

// candidate image of a finite-backend set under a letter code: substitute
// letters in cylinder prefixes and in the follower-class access words
SetExpr letter_image(const BlockCode& h, const SetExpr& a) {
  const auto& e = a.shift()->finite_engine();
  const SubshiftPtr& dst = h.dst;
  SetExpr out = se_empty(dst, a.flavor());
  for (const auto& at : a.fin().atoms) {
    SetExpr img = z_set(dst, apply_code(h, at.prefix));
    if (at.prefix.is_empty()) img = se_full(dst);
    SetExpr tails = se_empty(dst);
    for (int b = 0; b < e.natoms; ++b) {
      if (!((at.tail >> b) & 1)) continue;
      SetExpr piece = se_full(dst);
      for (int c = 0; c < e.nclasses; ++c) {
        if (c == e.cinit) continue;
        SetExpr fc = f_set(dst, apply_code(h, e.access[static_cast<std::size_t>(c)]));
        piece = e.atom_sign[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]
                    ? se_intersect(piece, fc)
                    : se_minus(piece, fc);
      }
      tails = se_union(tails, piece);
    }
    // translate "prefix then tail" into the target algebra
    SetExpr shifted = tails;
    Word ip = apply_code(h, at.prefix);
    for (std::size_t i = ip.size(); i-- > 0;) shifted = prepend(ip.at(i), shifted);
    out = se_union(out, shifted);
  }
  return out;
}

}  // namespace

SetExpr image_of_set(const BlockCode& h, const SetExpr& a) {
  if (!h.inverse) fail(Errc::NotInvertible, "image_of_set needs a declared inverse");
  if (h.memory != 0)
    fail(Errc::NotInvertible,
         "exact images are implemented for letter codes; higher memory is out of scope");
  if (!a.shift()->automaton_backend())
    fail(Errc::UnsupportedBackend, "letter-code images need an automaton backend");
  SetExpr img = letter_image(h, a);
  // verify the candidate against the pointwise code in both directions
  auto pool_pts = [&](const SubshiftPtr& s) {
    std::vector<EvPeriodic> pool;
    for (std::size_t n = 0; n <= 5; ++n)
      for (auto& u : s->enumerate_language(n, 64).words)
        for (std::size_t m = 1; m <= 2; ++m)
          for (auto& v : s->enumerate_language(m, 64).words) {
            EvPeriodic x;
            x.pre = u;
            x.per = v;
            x.canonicalize();
            if (s->point_in(x)) pool.push_back(x);
          }
    return pool;
  };
  for (const auto& x : pool_pts(a.shift())) {
    if (!se_contains(a, x)) continue;
    EvPeriodic y = apply_code_point(h, x);
    if (!h.dst->point_in(y) || !se_contains(img, y))
      fail(Errc::Inconsistent,
           "image mismatches the pointwise code at " + a.shift()->word_text(x.prefix(6)));
  }
  for (const auto& y : pool_pts(h.dst)) {
    if (!se_contains(img, y)) continue;
    EvPeriodic x = apply_code_point(*h.inverse, y);
    if (!a.shift()->point_in(x) || !se_contains(a, x))
      fail(Errc::Inconsistent,
           "image contains an uncoded point " + h.dst->word_text(y.prefix(6)));
  }
  return img;
}

std::vector<HHatPair> induced_h_hat(const BlockCode& h, std::size_t depth, std::size_t window) {
  GenSetPtr g1 = canonical_generators(h.src, depth, window);
  GenSetPtr g2 = canonical_generators(h.dst, depth, window);
  std::vector<HHatPair> out;
  for (const auto& atom : g1->atoms) {
    HHatPair pair{UltraApprox{g1, atom, std::nullopt}, std::nullopt};
    try {
      SetExpr img = image_of_set(h, atom);
      for (const auto& b : g2->atoms) {
        if (se_equal(img, b)) {
          pair.to = UltraApprox{g2, b, std::nullopt};
          break;
        }
      }
    } catch (const Error&) {
    }
    out.push_back(std::move(pair));
  }
  return out;
}

AlgebraElement psi_map(const BlockCode& h, const AlgebraElement& x) {
  AlgebraElement out(h.dst, x.ring(), x.flavor());
  for (const auto& [t, f] : x.components()) {
    FreeGroupElement t2{apply_code(h, t.pos), apply_code(h, t.neg)};
    StepFn f2(h.dst, x.ring());
    for (const auto& [cell, c] : f.cells()) {
      f2 = f2.plus(StepFn::indicator(image_of_set(h, cell), c));
    }
    out = out.plus(AlgebraElement::monomial(h.dst, t2, f2, x.flavor()));
  }
  return out;
}

ConjugacyReport verify_theone(const BlockCode& h_in, const BlockCode& h_inv_in,
                              std::size_t depth, std::size_t m_budget) {
  ConjugacyReport rep;
  rep.depth = depth;
  rep.m_budget = m_budget;
  rep.sample_bound = 2;
  if (h_inv_in.src != h_in.dst || h_inv_in.dst != h_in.src)
    fail(Errc::ConfigError, "inverse code must run between the same subshift handles");
  // wire the two codes as each other's declared inverse
  BlockCode h = h_in;
  BlockCode h_inv = h_inv_in;
  h.inverse = std::make_shared<BlockCode>(h_inv_in);
  h_inv.inverse = std::make_shared<BlockCode>(h_in);
  const SubshiftPtr& s1 = h.src;
  const SubshiftPtr& s2 = h.dst;
  const RingTag R{RingTag::Z, 0};

  auto add = [&](const std::string& name) {
    rep.checks.push_back(ConjugacyReport::Check{name, ConjugacyReport::Status::Pass, ""});
    return &rep.checks.back();
  };
  auto fail_check = [&](ConjugacyReport::Check* c, const std::string& wit) {
    if (c->status == ConjugacyReport::Status::Pass) {
      c->status = ConjugacyReport::Status::Fail;
      c->witness = wit;
    }
  };

  GenSetPtr g1 = canonical_generators(s1, depth, 8);
  GenSetPtr g2 = canonical_generators(s2, depth, 8);

  // (a) boolean-algebra map + pi intertwine
  {
    auto* c = add("a: h-bar boolean map and pi-intertwine");
    try {
      auto pairs = induced_h_hat(h, depth, 8);
      std::vector<const SetExpr*> hit;
      for (auto& p : pairs) {
        if (!p.to) {
          fail_check(c, "atom " + se_str(p.from.atom) + " has no atom image");
          continue;
        }
        for (auto* q : hit)
          if (se_equal(*q, p.to->atom)) fail_check(c, "h-hat not injective on atoms");
        hit.push_back(&p.to->atom);
        PiResult p1 = pi(p.from);
        PiResult p2 = pi(*p.to);
        Word coded = apply_code(h, p1.prefix);
        std::size_t common = std::min(coded.size(), p2.prefix.size());
        if (coded.prefix(common) != p2.prefix.prefix(common))
          fail_check(c, "pi mismatch at atom " + se_str(p.from.atom));
      }
      // boolean structure on sampled pairs
      std::size_t n = g1->atoms.size();
      for (std::size_t i = 0; i < n; i += 2)
        for (std::size_t j = 1; j < n; j += 3) {
          const SetExpr &A = g1->atoms[i], &B = g1->atoms[j];
          SetExpr u1 = image_of_set(h, se_union(A, B));
          SetExpr u2 = se_union(image_of_set(h, A), image_of_set(h, B));
          if (!se_equal(u1, u2)) fail_check(c, "union image mismatch");
          SetExpr m1 = image_of_set(h, se_minus(A, B));
          SetExpr m2 = se_minus(image_of_set(h, A), image_of_set(h, B));
          if (!se_equal(m1, m2)) fail_check(c, "difference image mismatch");
        }
    } catch (const Error& err) {
      fail_check(c, err.what());
    }
  }

  // (b) h-hat commutes with sigma-hat on domain atoms
  {
    auto* c = add("b: h-hat intertwines sigma-hat");
    for (const auto& atom : g1->atoms) {
      UltraApprox xi{g1, atom, std::nullopt};
      if (!in_sigma_domain(xi)) continue;
      try {
        SetExpr lhs = image_of_set(h, sigma_hat(xi).atom);
        // locate the image atom and push it through sigma-hat
        SetExpr img = image_of_set(h, atom);
        bool matched = false;
        for (const auto& b : g2->atoms) {
          if (!se_equal(img, b)) continue;
          matched = true;
          UltraApprox eta{g2, b, std::nullopt};
          if (!in_sigma_domain(eta)) {
            fail_check(c, "image atom left the sigma domain: " + se_str(atom));
            break;
          }
          SetExpr rhs = sigma_hat(eta).atom;
          if (!(se_subset(lhs, rhs) || se_subset(rhs, lhs)) || se_intersect(lhs, rhs).empty())
            fail_check(c, "sigma mismatch at atom " + se_str(atom));
          break;
        }
        if (!matched) fail_check(c, "no image atom for " + se_str(atom));
      } catch (const Error& err) {
        fail_check(c, std::string("atom ") + se_str(atom) + ": " + err.what());
      }
    }
  }

  // (c) Phi preserves the cocycle and the epsilon_M domains
  {
    auto* c = add("c: Phi cocycle and epsilon domains");
    try {
      auto letters1 = s1->alphabet().letters();
      for (std::size_t msz = 1; msz <= std::min(m_budget, letters1.size()); ++msz) {
        std::vector<Letter> M(letters1.begin(), letters1.begin() + static_cast<long>(msz));
        std::vector<Letter> N;
        for (Letter a : M) {
          Letter b = h.code_at(Word{{a}});
          if (std::find(N.begin(), N.end(), b) == N.end()) N.push_back(b);
        }
        // sampled point arrows inside dom(eps_M)
        for (auto& u : s1->enumerate_language(3, 64).words) {
          EvPeriodic x;
          x.pre = u;
          x.per = u.suffix_from(u.size() - 1);
          x.canonicalize();
          if (!s1->point_in(x)) continue;
          for (Letter a : M) {
            FreeGroupElement t{Word{{a}}, Word{}};
            if (!se_contains(domain_of(s1, t.inverse()), x)) continue;
            GroupoidArrow arr = arrow_from_point(g1, t, x);
            if (!in_epsilon_M_domain(arr, M)) continue;
            // Phi(arrow): image points
            EvPeriodic hx = apply_code_point(h, *arr.eta.point);
            EvPeriodic hxi = apply_code_point(h, *arr.xi.point);
            if (!s2->point_in(hx) || !s2->point_in(hxi)) {
              fail_check(c, "image point leaves the target subshift");
              continue;
            }
            GroupoidArrow img =
                theta(point_to_ultra(g2, hxi),
                      FreeGroupElement{Word{{h.code_at(Word{{a}})}}, Word{}},
                      point_to_ultra(g2, hx));
            if (img.n != arr.n) fail_check(c, "cocycle not preserved");
            if (!in_epsilon_M_domain(img, N))
              fail_check(c, "Phi(dom eps_M) escapes dom eps_N");
            else {
              GroupoidArrow e1 = epsilon_M(arr, M);
              GroupoidArrow e2 = epsilon_M(img, N);
              EvPeriodic want_xi = apply_code_point(h, *e1.xi.point);
              EvPeriodic want_eta = apply_code_point(h, *e1.eta.point);
              if (!(want_xi == *e2.xi.point) || !(want_eta == *e2.eta.point))
                fail_check(c, "epsilon does not intertwine at " + otw_point_str(s1, OTWPoint::infinite(s1, x)));
            }
          }
        }
      }
    } catch (const Error& err) {
      fail_check(c, err.what());
    }
  }

  // (d) Psi e_M / tau_M identities on sampled elements
  {
    auto* c = add("d: Psi tau_M identities");
    try {
      auto letters1 = s1->alphabet().letters();
      std::vector<AlgebraElement> samples;
      samples.push_back(AlgebraElement::one(s1, R, Flavor::U));
      for (Letter a : letters1) {
        samples.push_back(AlgebraElement::gen_s(s1, a, R, Flavor::U));
        samples.push_back(AlgebraElement::gen_s_star(s1, a, R, Flavor::U));
      }
      for (auto& u : s1->enumerate_language(rep.sample_bound, 16).words) {
        samples.push_back(AlgebraElement::gen_s_word(s1, u, R, Flavor::U));
        samples.push_back(AlgebraElement::gen_s_word(s1, u, R, Flavor::U)
                              .times(AlgebraElement::gen_s_word_star(s1, u, R, Flavor::U)));
      }
      for (std::size_t msz = 1; msz <= std::min(m_budget, letters1.size()); ++msz) {
        std::vector<Letter> M(letters1.begin(), letters1.begin() + static_cast<long>(msz));
        std::vector<Letter> N;
        for (Letter a : M) {
          Letter b = h.code_at(Word{{a}});
          if (std::find(N.begin(), N.end(), b) == N.end()) N.push_back(b);
        }
        AlgebraElement psi_em = psi_map(h, e_M(s1, M, R));
        AlgebraElement em_n = e_M(s2, N, R);
        if (!psi_em.times(em_n).equals(psi_em))
          fail_check(c, "Psi(e_M) e_N != Psi(e_M)");
        for (const auto& f : samples) {
          AlgebraElement lhs = psi_map(h, tau_M(M, f));
          AlgebraElement rhs = psi_em.times(tau_M(N, psi_map(h, f))).times(psi_em);
          if (!lhs.equals(rhs)) {
            fail_check(c, "tau_M identity fails on a sampled element");
            break;
          }
        }
      }
      // reverse direction: N' -> M'
      auto letters2 = s2->alphabet().letters();
      for (std::size_t nsz = 1; nsz <= std::min(m_budget, letters2.size()); ++nsz) {
        std::vector<Letter> Np(letters2.begin(), letters2.begin() + static_cast<long>(nsz));
        std::vector<Letter> Mp;
        for (Letter b : Np) {
          Letter a = h_inv.code_at(Word{{b}});
          if (std::find(Mp.begin(), Mp.end(), a) == Mp.end()) Mp.push_back(a);
        }
        AlgebraElement psi_inv_en = psi_map(h_inv, e_M(s2, Np, R));
        if (!psi_inv_en.times(e_M(s1, Mp, R)).equals(psi_inv_en))
          fail_check(c, "Psi^{-1}(e_N') e_M' != Psi^{-1}(e_N')");
      }
    } catch (const Error& err) {
      fail_check(c, err.what());
    }
  }
  return rep;
}

}  // namespace shiftalg
