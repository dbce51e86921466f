#include "shiftalg/stone.hpp"

#include <algorithm>

namespace shiftalg {

GenSetPtr generator_set(const SubshiftPtr& s, std::vector<SetExpr> gens,
                        std::size_t depth_label) {
  auto gs = std::make_shared<GeneratorSet>();
  gs->shift = s;
  gs->depth_label = depth_label;
  gs->gens = std::move(gens);
  gs->atoms = boolean_atoms(s, gs->gens);
  return gs;
}

GenSetPtr canonical_generators(const SubshiftPtr& s, std::size_t depth, std::size_t window) {
  std::vector<SetExpr> gens;
  if (s->automaton_backend()) {
    for (std::size_t n = 1; n <= depth; ++n)
      for (auto& w : s->enumerate_language(n, 4096).words) gens.push_back(z_set(s, w));
  } else {
    auto win = s->alphabet().window(window);
    std::vector<Word> words{Word{}};
    std::size_t lo = 0;
    for (std::size_t n = 1; n <= depth; ++n) {
      std::size_t hi = words.size();
      for (std::size_t i = lo; i < hi; ++i)
        for (Letter a : win) {
          Word w = words[i].append(a);
          if (s->in_language(w)) {
            words.push_back(w);
            gens.push_back(z_set(s, w));
          }
        }
      lo = hi;
    }
  }
  for (Letter a : s->alphabet().window(window)) {
    Word w{{a}};
    if (!s->in_language(w)) continue;
    SetExpr f = f_set(s, w);
    if (!f.empty()) gens.push_back(f);
  }
  auto gs = std::make_shared<GeneratorSet>();
  gs->shift = s;
  gs->depth_label = depth;
  gs->gens = std::move(gens);
  gs->atoms = boolean_atoms(s, gs->gens);
  gs->window_letters = s->alphabet().window(window);
  return gs;
}

bool UltraApprox::compatible(const UltraApprox& o) const {
  if (point && o.point) return *point == *o.point;
  return !se_intersect(atom, o.atom).empty();
}

UltraApprox point_to_ultra(const GenSetPtr& gens, const EvPeriodic& x) {
  if (!gens->shift->point_in(x)) fail(Errc::OutsideLanguage, "point not in X");
  for (const auto& a : gens->atoms) {
    if (se_contains(a, x)) return UltraApprox{gens, a, x};
  }
  fail(Errc::Internal, "atoms do not cover the point");
}

UltraApprox coarsen(const UltraApprox& xi, const GenSetPtr& coarser) {
  for (const auto& a : coarser->atoms) {
    if (xi.point ? se_contains(a, *xi.point) : se_subset(xi.atom, a))
      return UltraApprox{coarser, a, xi.point};
  }
  fail(Errc::DepthInsufficient, "approximation does not refine the coarser atoms");
}

namespace {

// the unique forced first letter of every member of the atom, if any
std::optional<Letter> forced_letter(const SetExpr& atom) {
  LetterSet em = emitted_letters(atom);
  const auto& alpha = atom.shift()->alphabet();
  if (!em.finite(alpha)) return std::nullopt;
  auto ls = em.list(alpha);
  if (ls.size() != 1) return std::nullopt;
  return ls[0];
}

}  // namespace

bool in_sigma_domain(const UltraApprox& xi) { return forced_letter(xi.atom).has_value(); }

UltraApprox sigma_hat(const UltraApprox& xi) {
  auto a = forced_letter(xi.atom);
  if (!a)
    fail(Errc::NotInDomain,
         "atom is not contained in a single one-letter cylinder at this depth");
  const SubshiftPtr& s = xi.gens->shift;
  Word wa{{*a}};
  std::vector<SetExpr> gens;
  for (const auto& g : xi.gens->gens) {
    SetExpr r = relative_range(g, wa);
    if (!r.empty()) gens.push_back(r);
  }
  SetExpr fa = f_set(s, wa);
  if (!fa.empty()) gens.push_back(fa);
  auto gs0 = std::make_shared<GeneratorSet>();
  gs0->shift = s;
  gs0->depth_label = xi.gens->depth_label ? xi.gens->depth_label - 1 : 0;
  gs0->gens = std::move(gens);
  gs0->atoms = boolean_atoms(s, gs0->gens);
  gs0->window_letters = xi.gens->window_letters;
  GenSetPtr gs = gs0;
  SetExpr img = relative_range(xi.atom, wa);
  std::optional<EvPeriodic> pt;
  if (xi.point) pt = xi.point->drop(1);
  for (const auto& atom : gs->atoms) {
    if (pt ? se_contains(atom, *pt) : se_subset(img, atom)) return UltraApprox{gs, atom, pt};
  }
  // img is an intersection of the generator images, hence inside one atom
  fail(Errc::Internal, "sigma-hat image not located in an atom");
}

PiResult pi(const UltraApprox& xi) {
  const SubshiftPtr& s = xi.gens->shift;
  const auto& alpha = s->alphabet();
  PiResult out;
  SetExpr cur = xi.atom;
  std::size_t cap = xi.gens->depth_label + 8;
  for (std::size_t step = 0; step < cap; ++step) {
    LetterSet em = emitted_letters(cur);
    if (em.finite(alpha)) {
      auto ls = em.list(alpha);
      if (ls.size() == 1) {
        out.prefix.letters.push_back(ls[0]);
        cur = relative_range(cur, Word{{ls[0]}});
        continue;
      }
      out.status = PiResult::Status::Truncated;
      return out;
    }
    // infinitely many continuations: the atom pins an X^fin point exactly
    // when it excludes the whole generator window behind a cofinite residue
    bool excludes_window = !xi.gens->window_letters.empty();
    for (Letter a : xi.gens->window_letters) {
      bool emitted = false;
      for (const auto& [fam, idx] : em.per_family)
        if (fam == a.family && idx.contains(a.index)) emitted = true;
      if (emitted) {
        excludes_window = false;
        break;
      }
    }
    if (excludes_window && !s->finite_alphabet() && s->in_xfin(out.prefix)) {
      out.status = out.prefix.is_empty() ? PiResult::Status::Zero : PiResult::Status::Exact;
      return out;
    }
    out.status = PiResult::Status::Truncated;
    return out;
  }
  out.status = PiResult::Status::Truncated;
  return out;
}

std::vector<UltraApprox> cover_fiber(const SubshiftPtr& s, const OTWPoint& x, std::size_t depth,
                                     std::size_t window) {
  GenSetPtr gens = canonical_generators(s, depth, window);
  std::vector<UltraApprox> out;
  for (const auto& atom : gens->atoms) {
    UltraApprox xi{gens, atom, std::nullopt};
    PiResult p = pi(xi);
    bool ok = false;
    switch (x.kind) {
      case OTWPoint::Kind::Infinite:
        ok = p.status != PiResult::Status::Exact && p.status != PiResult::Status::Zero &&
             x.inf.prefix(p.prefix.size()) == p.prefix;
        break;
      case OTWPoint::Kind::Finite:
        if (p.status == PiResult::Status::Exact)
          ok = p.prefix == x.fin;
        else if (p.status == PiResult::Status::Truncated)
          ok = p.prefix.size() <= x.fin.size() && x.fin.starts_with(p.prefix);
        break;
      case OTWPoint::Kind::Zero:
        ok = p.status == PiResult::Status::Zero ||
             (p.status == PiResult::Status::Truncated && p.prefix.is_empty());
        break;
    }
    if (ok) out.push_back(std::move(xi));
  }
  return out;
}

GroupoidArrow theta(const UltraApprox& xi, const FreeGroupElement& t, const UltraApprox& eta) {
  const SubshiftPtr& s = xi.gens->shift;
  SetExpr wdom = domain_of(s, t.inverse());
  if (se_intersect(eta.atom, wdom).empty())
    fail(Errc::Inconsistent, "eta is outside the domain of the action");
  if (eta.point && !se_contains(wdom, *eta.point))
    fail(Errc::Inconsistent, "eta point is outside the domain of the action");
  if (xi.point && eta.point) {
    EvPeriodic img = *eta.point;
    EvPeriodic glued;
    glued.pre = t.pos.concat(img.drop(t.neg.size()).pre);
    glued.per = img.drop(t.neg.size()).per;
    glued.canonicalize();
    if (!(glued == *xi.point)) fail(Errc::Inconsistent, "xi is not the tau-hat image of eta");
  } else {
    SetExpr img = tau_hat_apply(s, t, eta.atom);
    if (se_intersect(img, xi.atom).empty())
      fail(Errc::Inconsistent, "xi does not meet the tau-hat image of eta at this depth");
  }
  GroupoidArrow a;
  a.xi = xi;
  a.eta = eta;
  a.n = t.degree();
  a.k = t.pos.size();
  a.m = t.neg.size();
  return a;
}

GroupoidArrow arrow_from_point(const GenSetPtr& gens, const FreeGroupElement& t,
                               const EvPeriodic& eta_point) {
  const SubshiftPtr& s = gens->shift;
  if (!se_contains(domain_of(s, t.inverse()), eta_point))
    fail(Errc::Inconsistent, "point outside the domain of the action");
  EvPeriodic xi_point;
  xi_point.pre = t.pos.concat(eta_point.drop(t.neg.size()).pre);
  xi_point.per = eta_point.drop(t.neg.size()).per;
  xi_point.canonicalize();
  return theta(point_to_ultra(gens, xi_point), t, point_to_ultra(gens, eta_point));
}

GroupoidArrow unit_arrow(const UltraApprox& xi) {
  GroupoidArrow a;
  a.xi = xi;
  a.eta = xi;
  a.n = 0;
  a.k = a.m = 0;
  return a;
}

GroupoidArrow compose(const GroupoidArrow& a, const GroupoidArrow& b) {
  if (!a.eta.compatible(b.xi)) fail(Errc::Inconsistent, "arrows are not composable");
  GroupoidArrow c;
  c.xi = a.xi;
  c.eta = b.eta;
  c.n = a.n + b.n;
  c.k = a.k + b.k;
  c.m = a.m + b.m;
  return c;
}

GroupoidArrow arrow_inverse(const GroupoidArrow& a) {
  GroupoidArrow b;
  b.xi = a.eta;
  b.eta = a.xi;
  b.n = -a.n;
  b.k = a.m;
  b.m = a.k;
  return b;
}

GroupoidArrow epsilon(const GroupoidArrow& a) {
  GroupoidArrow b;
  b.xi = sigma_hat(a.xi);
  b.eta = sigma_hat(a.eta);
  b.n = a.n;
  b.k = a.k;
  b.m = a.m;
  return b;
}

bool in_epsilon_M_domain(const GroupoidArrow& a, const std::vector<Letter>& M) {
  auto inside = [&](const UltraApprox& u) {
    if (u.point) {
      Letter head = u.point->head();
      return std::find(M.begin(), M.end(), head) != M.end();
    }
    auto f = forced_letter(u.atom);
    return f && std::find(M.begin(), M.end(), *f) != M.end();
  };
  return inside(a.xi) && inside(a.eta);
}

GroupoidArrow epsilon_M(const GroupoidArrow& a, const std::vector<Letter>& M) {
  if (!in_epsilon_M_domain(a, M))
    fail(Errc::NotInDomain, "arrow is outside dom(epsilon_M)");
  return epsilon(a);
}

RingElem groupoid_eval(const AlgebraElement& x, const GroupoidArrow& a) {
  RingElem out = RingElem::zero(x.ring());
  const SubshiftPtr& s = x.shift();
  for (const auto& [t, f] : x.components()) {
    if (t.degree() != a.n) continue;
    if (a.xi.point && a.eta.point) {
      SetExpr wdom = domain_of(s, t.inverse());
      if (!se_contains(wdom, *a.eta.point)) continue;
      EvPeriodic img;
      img.pre = t.pos.concat(a.eta.point->drop(t.neg.size()).pre);
      img.per = a.eta.point->drop(t.neg.size()).per;
      img.canonicalize();
      if (!(img == *a.xi.point)) continue;
      out = out + f.value_at(*a.xi.point);
      continue;
    }
    // depth-checked evaluation
    SetExpr wdom = domain_of(s, t.inverse());
    SetExpr overlap = se_intersect(a.eta.atom, wdom);
    if (overlap.empty()) continue;
    if (!se_subset(a.eta.atom, wdom))
      fail(Errc::DepthInsufficient, "eta atom straddles the action domain");
    SetExpr img = tau_hat_apply(s, t, a.eta.atom);
    SetExpr meet = se_intersect(img, a.xi.atom);
    if (meet.empty()) continue;
    if (!se_subset(a.xi.atom, img) && !se_subset(img, a.xi.atom))
      fail(Errc::DepthInsufficient, "xi atom straddles the tau-hat image");
    RingElem val = RingElem::zero(x.ring());
    bool found = false;
    for (const auto& [cell, c] : f.cells()) {
      SetExpr inter = se_intersect(meet, cell);
      if (inter.empty()) continue;
      if (!se_subset(meet, cell))
        fail(Errc::DepthInsufficient, "component is not constant on the atom");
      val = c;
      found = true;
      break;
    }
    if (found) out = out + val;
  }
  return out;
}

std::vector<Bisection> epsilon_M_preimage(const SubshiftPtr& s, const Bisection& z,
                                          const std::vector<Letter>& M) {
  std::vector<Bisection> out;
  for (Letter a : M) {
    SetExpr ua = prepend(a, se_intersect(z.u, f_set(s, Word{{a}})));
    if (ua.empty()) continue;
    for (Letter b : M) {
      SetExpr vb = prepend(b, se_intersect(z.v, f_set(s, Word{{b}})));
      if (vb.empty()) continue;
      out.push_back(Bisection{ua, vb, z.k + 1, z.m + 1});
    }
  }
  return out;
}

bool arrow_in_bisection(const GroupoidArrow& a, const Bisection& z) {
  if (a.n != static_cast<int>(z.k) - static_cast<int>(z.m)) return false;
  auto inside = [&](const UltraApprox& u, const SetExpr& set) {
    if (u.point) return se_contains(set, *u.point);
    if (se_subset(u.atom, set)) return true;
    if (se_intersect(u.atom, set).empty()) return false;
    fail(Errc::DepthInsufficient, "atom straddles the bisection");
  };
  return inside(a.xi, z.u) && inside(a.eta, z.v);
}

bool groupoid_equal_oracle(const AlgebraElement& x, const AlgebraElement& y,
                           const GenSetPtr& gens) {
  const SubshiftPtr& s = gens->shift;
  auto arrows_of = [&](const AlgebraElement& e, std::vector<GroupoidArrow>& out) {
    for (const auto& [t, f] : e.components()) {
      for (const auto& [cell, c] : f.cells()) {
        EvPeriodic p = se_sample(cell);  // p in cell ⊆ W_t
        EvPeriodic eta;
        eta.pre = t.neg.concat(p.drop(t.pos.size()).pre);
        eta.per = p.drop(t.pos.size()).per;
        eta.canonicalize();
        out.push_back(arrow_from_point(gens, t, eta));
      }
    }
  };
  std::vector<GroupoidArrow> arrows;
  arrows_of(x, arrows);
  arrows_of(y, arrows);
  arrows_of(x.minus(y), arrows);
  for (const auto& a : arrows) {
    if (groupoid_eval(x, a) != groupoid_eval(y, a)) return false;
  }
  return true;
}

}  // namespace shiftalg
