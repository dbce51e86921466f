#include "shiftalg/set_algebra.hpp"

#include <algorithm>
#include <map>

namespace shiftalg {

namespace {

void check_same(const SetExpr& a, const SetExpr& b) {
  if (a.shift() != b.shift()) fail(Errc::Internal, "set expressions over different subshifts");
}

Flavor meet_flavor(Flavor a, Flavor b) {
  // B is an ideal of U: intersections with a B side stay in B
  return (a == Flavor::B || b == Flavor::B) ? Flavor::B : Flavor::U;
}
Flavor join_flavor(Flavor a, Flavor b) {
  return (a == Flavor::B && b == Flavor::B) ? Flavor::B : Flavor::U;
}

// =========================================================================
// finite-alphabet forms

int word_class(const FiniteEngine& e, const Word& w) { return e.run(e.cinit, w); }

std::vector<FiniteAtom> ff_children(const FiniteEngine& e, const FiniteAtom& at) {
  std::vector<FiniteAtom> out;
  for (int a = 0; a < e.nletters; ++a) {
    AtomMask m = e.rel_mask(at.tail, a);
    if (!m) continue;
    out.push_back(FiniteAtom{at.prefix.append(Letter{a, 0}), m});
  }
  return out;
}

FiniteForm ff_sorted(std::vector<FiniteAtom> atoms, std::size_t depth) {
  std::map<Word, AtomMask> merged;
  for (auto& at : atoms)
    if (at.tail) merged[at.prefix] |= at.tail;
  FiniteForm f;
  f.depth = merged.empty() ? 0 : merged.begin()->first.size();
  (void)depth;
  for (auto& [w, m] : merged) f.atoms.push_back(FiniteAtom{w, m});
  return f;
}

FiniteForm ff_refine(const FiniteEngine& e, FiniteForm f, std::size_t depth) {
  if (f.atoms.empty()) return f;
  while (f.depth < depth) {
    std::vector<FiniteAtom> next;
    for (const auto& at : f.atoms) {
      auto cs = ff_children(e, at);
      next.insert(next.end(), cs.begin(), cs.end());
    }
    f = ff_sorted(std::move(next), f.depth + 1);
  }
  return f;
}

FiniteForm ff_reduce(const FiniteEngine& e, FiniteForm f) {
  while (f.depth > 0 && !f.atoms.empty()) {
    std::map<Word, std::vector<AtomMask>> groups;  // parent word -> per-letter child masks
    for (const auto& at : f.atoms) {
      Word v = at.prefix.prefix(at.prefix.size() - 1);
      auto& slot = groups.try_emplace(v, std::vector<AtomMask>(static_cast<std::size_t>(e.nletters), 0))
                       .first->second;
      slot[static_cast<std::size_t>(at.prefix.back().family)] = at.tail;
    }
    std::vector<FiniteAtom> parents;
    bool ok = true;
    for (auto& [v, t] : groups) {
      AtomMask s = 0;
      for (int p = 0; p < e.natoms && ok; ++p) {
        bool contained = true, disjoint = true;
        for (int a = 0; a < e.nletters; ++a) {
          AtomMask r = e.atom_rel[static_cast<std::size_t>(p)][static_cast<std::size_t>(a)];
          if (r & ~t[static_cast<std::size_t>(a)]) contained = false;
          if (r & t[static_cast<std::size_t>(a)]) disjoint = false;
        }
        if (contained)
          s |= AtomMask{1} << p;
        else if (!disjoint)
          ok = false;
      }
      if (!ok) break;
      parents.push_back(FiniteAtom{v, s});
    }
    if (!ok) break;
    f = ff_sorted(std::move(parents), f.depth - 1);
  }
  return f;
}

FiniteForm ff_canonical(const FiniteEngine& e, std::vector<FiniteAtom> atoms, std::size_t depth) {
  return ff_reduce(e, ff_sorted(std::move(atoms), depth));
}

FiniteForm ff_full(const FiniteEngine& e) {
  return FiniteForm{0, {FiniteAtom{Word{}, e.full_mask}}};
}

// X refined to the given depth
FiniteForm ff_full_at(const FiniteEngine& e, std::size_t depth) {
  return ff_refine(e, ff_full(e), depth);
}

// =========================================================================
// rule forms

const IntDomain& fam_dom(const RuleEngine& e, int f) {
  return e.families.at(static_cast<std::size_t>(f)).indices;
}

// Tight canonicalization of one atom; false when empty.
bool ra_tighten(const RuleEngine& e, RuleAtom& at) {
  const std::size_t n = at.prefix.size();
  FinCofin live = fc_normalize(e.live, e.vertices);
  FinCofin v = live;
  std::vector<FinCofin> allowed(n);
  for (std::size_t i = 0; i < n; ++i) {
    int f = at.prefix[i].family;
    FinCofin a = fc_intersect(at.prefix[i].idx, e.indices_with_source_in(f, v), fam_dom(e, f));
    if (fc_empty(a, fam_dom(e, f))) return false;
    allowed[i] = a;
    v = fc_intersect(e.range_union(f, a), live, e.vertices);
    if (fc_empty(v, e.vertices)) return false;
  }
  FinCofin w = fc_intersect(fc_intersect(v, fc_normalize(at.tail, e.vertices), e.vertices), live,
                            e.vertices);
  if (fc_empty(w, e.vertices)) return false;
  FinCofin b = w;
  for (std::size_t ii = n; ii-- > 0;) {
    int f = at.prefix[ii].family;
    allowed[ii] = fc_intersect(allowed[ii], e.indices_with_range_meeting(f, b), fam_dom(e, f));
    if (fc_empty(allowed[ii], fam_dom(e, f))) return false;
    b = e.source_image(f, allowed[ii]);
  }
  for (std::size_t i = 0; i < n; ++i) at.prefix[i].idx = allowed[i];
  at.tail = w;
  return true;
}

// Split finite non-singleton position sets into explicit letters, re-tightening.
void ra_split(const RuleEngine& e, RuleAtom at, std::vector<RuleAtom>& out) {
  for (std::size_t i = 0; i < at.prefix.size(); ++i) {
    const auto& idx = at.prefix[i].idx;
    if (idx.cofinite || idx.elems.size() <= 1) continue;
    for (long member : idx.elems) {
      RuleAtom piece = at;
      piece.prefix[i].idx = FinCofin::single(member);
      if (ra_tighten(e, piece)) ra_split(e, std::move(piece), out);
    }
    return;
  }
  out.push_back(std::move(at));
}

std::vector<RuleAtom> ra_refine_one(const RuleEngine& e, const RuleAtom& at) {
  std::vector<RuleAtom> out;
  for (std::size_t f = 0; f < e.families.size(); ++f) {
    FinCofin idx = e.indices_with_source_in(static_cast<int>(f), at.tail);
    if (fc_empty(idx, fam_dom(e, static_cast<int>(f)))) continue;
    RuleAtom child = at;
    child.prefix.push_back(PosCon{static_cast<int>(f), idx});
    child.tail = FinCofin::all();
    if (ra_tighten(e, child)) ra_split(e, std::move(child), out);
  }
  return out;
}

RuleForm rf_sorted(std::vector<RuleAtom> atoms, std::size_t depth) {
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  std::size_t d = atoms.empty() ? 0 : atoms.front().prefix.size();
  (void)depth;
  return RuleForm{d, std::move(atoms)};
}

RuleForm rf_refine(const RuleEngine& e, RuleForm f, std::size_t depth) {
  if (f.atoms.empty()) return f;
  while (f.depth < depth) {
    std::vector<RuleAtom> next;
    for (const auto& at : f.atoms) {
      auto cs = ra_refine_one(e, at);
      next.insert(next.end(), cs.begin(), cs.end());
    }
    f = rf_sorted(std::move(next), f.depth + 1);
  }
  return f;
}

// merge unions that stay inside the singleton-or-cofinite constraint class
void rf_merge(const RuleEngine& e, RuleForm& f) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < f.atoms.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < f.atoms.size() && !changed; ++j) {
        RuleAtom &x = f.atoms[i], &y = f.atoms[j];
        int diff = -1;  // -2: tail, >=0: position
        bool mergeable = true;
        if (!(x.tail == y.tail)) diff = -2;
        for (std::size_t p = 0; p < x.prefix.size() && mergeable; ++p) {
          if (x.prefix[p] == y.prefix[p]) continue;
          if (x.prefix[p].family != y.prefix[p].family || diff != -1) {
            mergeable = false;
          } else {
            diff = static_cast<int>(p);
          }
        }
        if (!mergeable || diff == -1) continue;
        RuleAtom merged = x;
        if (diff == -2) {
          merged.tail = fc_union(x.tail, y.tail, e.vertices);
        } else {
          const auto& dom = fam_dom(e, x.prefix[static_cast<std::size_t>(diff)].family);
          FinCofin u = fc_union(x.prefix[static_cast<std::size_t>(diff)].idx,
                                y.prefix[static_cast<std::size_t>(diff)].idx, dom);
          if (!u.cofinite && u.elems.size() > 1) continue;
          merged.prefix[static_cast<std::size_t>(diff)].idx = u;
        }
        if (!ra_tighten(e, merged)) continue;
        f.atoms.erase(f.atoms.begin() + static_cast<long>(j));
        f.atoms[i] = merged;
        changed = true;
      }
    }
  }
  std::sort(f.atoms.begin(), f.atoms.end());
}

RuleForm rf_canonical(const RuleEngine& e, std::vector<RuleAtom> atoms, std::size_t depth);

// try to lower the uniform depth by one
bool rf_reduce_step(const RuleEngine& e, RuleForm& f) {
  if (f.depth == 0 || f.atoms.empty()) return false;
  std::map<std::vector<PosCon>, std::vector<RuleAtom>> groups;
  for (const auto& at : f.atoms) {
    std::vector<PosCon> head(at.prefix.begin(), at.prefix.end() - 1);
    groups[head].push_back(at);
  }
  std::vector<RuleAtom> parents;
  for (auto& [head, members] : groups) {
    FinCofin tail = FinCofin::none();
    for (const auto& m : members)
      tail = fc_union(tail, e.source_image(m.prefix.back().family, m.prefix.back().idx),
                      e.vertices);
    RuleAtom parent{head, tail};
    if (!ra_tighten(e, parent)) return false;
    std::vector<RuleAtom> expand;
    for (auto& c : ra_refine_one(e, parent)) expand.push_back(std::move(c));
    RuleForm lhs = rf_sorted(std::move(expand), f.depth);
    rf_merge(e, lhs);
    std::vector<RuleAtom> ms = members;
    RuleForm rhs = rf_sorted(std::move(ms), f.depth);
    rf_merge(e, rhs);
    if (!(lhs.atoms == rhs.atoms)) return false;
    parents.push_back(std::move(parent));
  }
  f = rf_sorted(std::move(parents), f.depth - 1);
  return true;
}

RuleForm rf_canonical(const RuleEngine& e, std::vector<RuleAtom> atoms, std::size_t depth) {
  std::vector<RuleAtom> clean;
  for (auto& at : atoms) {
    if (ra_tighten(e, at)) ra_split(e, std::move(at), clean);
  }
  RuleForm f = rf_sorted(std::move(clean), depth);
  rf_merge(e, f);
  while (rf_reduce_step(e, f)) rf_merge(e, f);
  return f;
}

std::vector<RuleAtom> ra_subtract(const RuleEngine& e, const RuleAtom& x, const RuleAtom& y) {
  std::vector<RuleAtom> out;
  RuleAtom common = x;
  for (std::size_t i = 0; i < x.prefix.size(); ++i) {
    if (x.prefix[i].family != y.prefix[i].family) {
      out.push_back(common);  // disjoint at position i
      return out;
    }
    const auto& dom = fam_dom(e, x.prefix[i].family);
    FinCofin d = fc_minus(common.prefix[i].idx, y.prefix[i].idx, dom);
    if (!fc_empty(d, dom)) {
      RuleAtom piece = common;
      piece.prefix[i].idx = d;
      out.push_back(std::move(piece));
    }
    common.prefix[i].idx = fc_intersect(common.prefix[i].idx, y.prefix[i].idx, dom);
    if (fc_empty(common.prefix[i].idx, dom)) return out;
  }
  FinCofin d = fc_minus(common.tail, y.tail, e.vertices);
  if (!fc_empty(d, e.vertices)) {
    RuleAtom piece = common;
    piece.tail = d;
    out.push_back(std::move(piece));
  }
  return out;
}

std::optional<RuleAtom> ra_intersect(const RuleEngine& e, const RuleAtom& x, const RuleAtom& y) {
  RuleAtom z = x;
  for (std::size_t i = 0; i < x.prefix.size(); ++i) {
    if (x.prefix[i].family != y.prefix[i].family) return std::nullopt;
    const auto& dom = fam_dom(e, x.prefix[i].family);
    z.prefix[i].idx = fc_intersect(x.prefix[i].idx, y.prefix[i].idx, dom);
    if (fc_empty(z.prefix[i].idx, dom)) return std::nullopt;
  }
  z.tail = fc_intersect(x.tail, y.tail, e.vertices);
  return z;
}

RuleForm rf_full(const RuleEngine& e) {
  RuleAtom x{{}, FinCofin::all()};
  std::vector<RuleAtom> atoms;
  if (ra_tighten(e, x)) atoms.push_back(std::move(x));
  return RuleForm{0, std::move(atoms)};
}

}  // namespace

// =========================================================================
// SetExpr API

bool SetExpr::same_set(const SetExpr& o) const { return se_equal(*this, o); }

SetExpr se_empty(const SubshiftPtr& s, Flavor f) {
  if (s->automaton_backend()) return SetExpr(s, f, FiniteForm{});
  return SetExpr(s, f, RuleForm{});
}

SetExpr se_full(const SubshiftPtr& s) {
  if (s->automaton_backend()) return SetExpr(s, Flavor::U, ff_full(s->finite_engine()));
  return SetExpr(s, Flavor::U, rf_full(s->rule_engine()));
}

SetExpr se_source_set(const SubshiftPtr& s, const FinCofin& verts, Flavor f) {
  const auto& e = s->rule_engine();
  RuleAtom at{{}, fc_normalize(verts, e.vertices)};
  return SetExpr(s, f, rf_canonical(e, {std::move(at)}, 0));
}

SetExpr se_rule_atom(const SubshiftPtr& s, RuleAtom atom, Flavor f) {
  const auto& e = s->rule_engine();
  std::size_t depth = atom.prefix.size();
  return SetExpr(s, f, rf_canonical(e, {std::move(atom)}, depth));
}

SetExpr c_set(const SubshiftPtr& s, const Word& alpha, const Word& beta) {
  s->check_word(alpha);
  s->check_word(beta);
  Flavor fl = (alpha.is_empty() && beta.is_empty()) ? Flavor::U : Flavor::B;
  if (!s->in_language(alpha) || !s->in_language(beta)) return se_empty(s, fl);
  if (s->automaton_backend()) {
    const auto& e = s->finite_engine();
    int ca = word_class(e, alpha), cb = word_class(e, beta);
    AtomMask m = e.fmask[static_cast<std::size_t>(ca)] & e.fmask[static_cast<std::size_t>(cb)];
    if (!m) return se_empty(s, fl);
    return SetExpr(s, fl, ff_canonical(e, {FiniteAtom{beta, m}}, beta.size()));
  }
  const auto& e = s->rule_engine();
  RuleAtom at;
  for (auto a : beta.letters) at.prefix.push_back(PosCon{a.family, FinCofin::single(a.index)});
  at.tail = alpha.is_empty() ? FinCofin::all() : e.range_of(alpha.back());
  return SetExpr(s, fl, rf_canonical(e, {std::move(at)}, beta.size()));
}

namespace {

std::pair<SetExpr, SetExpr> aligned(const SetExpr& a, const SetExpr& b) {
  std::size_t d = std::max(a.depth(), b.depth());
  return {se_refine(a, d), se_refine(b, d)};
}

}  // namespace

SetExpr se_refine(const SetExpr& a, std::size_t depth) {
  if (depth <= a.depth()) return a;
  if (a.finite_backend())
    return SetExpr(a.shift(), a.flavor(), ff_refine(a.shift()->finite_engine(), a.fin(), depth));
  return SetExpr(a.shift(), a.flavor(), rf_refine(a.shift()->rule_engine(), a.rule(), depth));
}

SetExpr se_union(const SetExpr& a, const SetExpr& b) {
  check_same(a, b);
  Flavor fl = join_flavor(a.flavor(), b.flavor());
  auto [x, y] = aligned(a, b);
  if (x.finite_backend()) {
    std::vector<FiniteAtom> atoms = x.fin().atoms;
    atoms.insert(atoms.end(), y.fin().atoms.begin(), y.fin().atoms.end());
    return SetExpr(a.shift(), fl, ff_canonical(a.shift()->finite_engine(), std::move(atoms), x.fin().depth));
  }
  const auto& e = a.shift()->rule_engine();
  // keep atoms disjoint: x together with y \ x
  std::vector<RuleAtom> atoms = x.rule().atoms;
  for (const auto& yb : y.rule().atoms) {
    std::vector<RuleAtom> rest{yb};
    for (const auto& xa : x.rule().atoms) {
      std::vector<RuleAtom> next;
      for (const auto& r : rest) {
        auto pieces = ra_subtract(e, r, xa);
        next.insert(next.end(), pieces.begin(), pieces.end());
      }
      rest = std::move(next);
    }
    atoms.insert(atoms.end(), rest.begin(), rest.end());
  }
  return SetExpr(a.shift(), fl, rf_canonical(e, std::move(atoms), x.rule().depth));
}

SetExpr se_intersect(const SetExpr& a, const SetExpr& b) {
  check_same(a, b);
  Flavor fl = meet_flavor(a.flavor(), b.flavor());
  auto [x, y] = aligned(a, b);
  if (x.finite_backend()) {
    std::map<Word, AtomMask> bm;
    for (const auto& at : y.fin().atoms) bm[at.prefix] = at.tail;
    std::vector<FiniteAtom> atoms;
    for (const auto& at : x.fin().atoms) {
      auto it = bm.find(at.prefix);
      if (it == bm.end()) continue;
      atoms.push_back(FiniteAtom{at.prefix, at.tail & it->second});
    }
    return SetExpr(a.shift(), fl, ff_canonical(a.shift()->finite_engine(), std::move(atoms), x.fin().depth));
  }
  const auto& e = a.shift()->rule_engine();
  std::vector<RuleAtom> atoms;
  for (const auto& xa : x.rule().atoms)
    for (const auto& yb : y.rule().atoms)
      if (auto z = ra_intersect(e, xa, yb)) atoms.push_back(std::move(*z));
  return SetExpr(a.shift(), fl, rf_canonical(e, std::move(atoms), x.rule().depth));
}

SetExpr se_minus(const SetExpr& a, const SetExpr& b) {
  check_same(a, b);
  Flavor fl = a.flavor();
  auto [x, y] = aligned(a, b);
  if (x.finite_backend()) {
    std::map<Word, AtomMask> bm;
    for (const auto& at : y.fin().atoms) bm[at.prefix] = at.tail;
    std::vector<FiniteAtom> atoms;
    for (const auto& at : x.fin().atoms) {
      auto it = bm.find(at.prefix);
      atoms.push_back(FiniteAtom{at.prefix, it == bm.end() ? at.tail : at.tail & ~it->second});
    }
    return SetExpr(a.shift(), fl, ff_canonical(a.shift()->finite_engine(), std::move(atoms), x.fin().depth));
  }
  const auto& e = a.shift()->rule_engine();
  std::vector<RuleAtom> atoms;
  for (const auto& xa : x.rule().atoms) {
    std::vector<RuleAtom> rest{xa};
    for (const auto& yb : y.rule().atoms) {
      std::vector<RuleAtom> next;
      for (const auto& r : rest) {
        auto pieces = ra_subtract(e, r, yb);
        next.insert(next.end(), pieces.begin(), pieces.end());
      }
      rest = std::move(next);
    }
    atoms.insert(atoms.end(), rest.begin(), rest.end());
  }
  return SetExpr(a.shift(), fl, rf_canonical(e, std::move(atoms), x.rule().depth));
}

// Complement inside X; the result lives in U. Contexts that must stay inside
// B (the Plain algebra, B-mode parsing) reject the operation before reaching
// this point.
SetExpr se_complement(const SetExpr& a) {
  return se_minus(se_refine(se_full(a.shift()), a.depth()), a);
}

bool se_is_empty(const SetExpr& a) { return a.empty(); }

bool se_equal(const SetExpr& a, const SetExpr& b) {
  check_same(a, b);
  if (a.finite_backend()) return a.fin() == b.fin();
  if (a.rule() == b.rule()) return true;
  return se_minus(a, b).empty() && se_minus(b, a).empty();
}

bool se_subset(const SetExpr& a, const SetExpr& b) { return se_minus(a, b).empty(); }

SetExpr relative_range(const SetExpr& a, const Word& alpha) {
  a.shift()->check_word(alpha);
  if (alpha.is_empty()) return a;
  SetExpr x = se_refine(a, std::max(a.depth(), alpha.size()));
  if (x.finite_backend()) {
    const auto& e = a.shift()->finite_engine();
    std::vector<FiniteAtom> atoms;
    for (const auto& at : x.fin().atoms) {
      if (!at.prefix.starts_with(alpha)) continue;
      atoms.push_back(FiniteAtom{at.prefix.suffix_from(alpha.size()), at.tail});
    }
    return SetExpr(a.shift(), a.flavor(), ff_canonical(e, std::move(atoms), x.fin().depth - alpha.size()));
  }
  const auto& e = a.shift()->rule_engine();
  std::vector<RuleAtom> atoms;
  FinCofin last_range = e.range_of(alpha.back());
  for (const auto& at : x.rule().atoms) {
    bool ok = true;
    for (std::size_t i = 0; i < alpha.size() && ok; ++i) {
      ok = at.prefix[i].family == alpha.at(i).family && at.prefix[i].idx.contains(alpha.at(i).index);
    }
    if (!ok) continue;
    RuleAtom r;
    r.prefix.assign(at.prefix.begin() + static_cast<long>(alpha.size()), at.prefix.end());
    r.tail = at.tail;
    // alpha x in X constrains the head of x
    if (r.prefix.empty()) {
      r.tail = fc_intersect(r.tail, last_range, e.vertices);
    } else {
      int f = r.prefix[0].family;
      r.prefix[0].idx = fc_intersect(r.prefix[0].idx, e.indices_with_source_in(f, last_range),
                                     fam_dom(e, f));
    }
    atoms.push_back(std::move(r));
  }
  return SetExpr(a.shift(), a.flavor(), rf_canonical(e, std::move(atoms), x.rule().depth - alpha.size()));
}

SetExpr prepend(Letter a, const SetExpr& A) {
  A.shift()->check_word(Word{{a}});
  if (A.finite_backend()) {
    const auto& e = A.shift()->finite_engine();
    std::vector<FiniteAtom> atoms;
    for (const auto& at : A.fin().atoms) {
      Word aw = Word{{a}}.concat(at.prefix);
      int c = word_class(e, aw);
      if (c < 0) continue;
      AtomMask m = at.tail & e.fmask[static_cast<std::size_t>(c)];
      if (m) atoms.push_back(FiniteAtom{aw, m});
    }
    return SetExpr(A.shift(), A.flavor(), ff_canonical(e, std::move(atoms), A.fin().depth + 1));
  }
  const auto& e = A.shift()->rule_engine();
  if (!A.shift()->in_language(Word{{a}})) return se_empty(A.shift(), A.flavor());
  FinCofin ra = e.range_of(a);
  std::vector<RuleAtom> atoms;
  for (const auto& at : A.rule().atoms) {
    RuleAtom r;
    r.prefix.push_back(PosCon{a.family, FinCofin::single(a.index)});
    r.prefix.insert(r.prefix.end(), at.prefix.begin(), at.prefix.end());
    r.tail = at.tail;
    if (at.prefix.empty()) {
      r.tail = fc_intersect(r.tail, ra, e.vertices);
    } else {
      int f = r.prefix[1].family;
      r.prefix[1].idx = fc_intersect(r.prefix[1].idx, e.indices_with_source_in(f, ra), fam_dom(e, f));
    }
    atoms.push_back(std::move(r));
  }
  return SetExpr(A.shift(), A.flavor(), rf_canonical(e, std::move(atoms), A.rule().depth + 1));
}

SetExpr prepend_word(const Word& w, const SetExpr& A) {
  SetExpr r = A;
  for (std::size_t i = w.size(); i-- > 0;) r = prepend(w.at(i), r);
  return r;
}

// =========================================================================
// letters / regularity / unitality

bool LetterSet::finite(const Alphabet& alpha) const {
  for (const auto& [f, idx] : per_family) {
    IntDomain dom = alpha.family(f).infinite ? IntDomain::half_line(alpha.family(f).min_index)
                                             : IntDomain::finite(alpha.family(f).indices);
    if (!fc_finite(idx, dom)) return false;
  }
  return true;
}

std::vector<Letter> LetterSet::list(const Alphabet& alpha) const {
  std::vector<Letter> out;
  for (const auto& [f, idx] : per_family) {
    IntDomain dom = alpha.family(f).infinite ? IntDomain::half_line(alpha.family(f).min_index)
                                             : IntDomain::finite(alpha.family(f).indices);
    for (long i : fc_members(idx, dom)) out.push_back(Letter{f, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string LetterSet::str(const Alphabet& alpha) const {
  std::string s = "{";
  bool first = true;
  for (const auto& [f, idx] : per_family) {
    if (!first) s += ", ";
    first = false;
    if (!idx.cofinite && idx.elems.size() <= 8) {
      bool inner = true;
      for (long i : idx.elems) {
        if (!inner) s += ", ";
        inner = false;
        s += alpha.name(Letter{f, i});
      }
    } else {
      s += alpha.family(f).name + ":" + fc_str(idx);
    }
  }
  return s + "}";
}

LetterSet emitted_letters(const SetExpr& a) {
  LetterSet out;
  if (a.empty()) return out;
  if (a.finite_backend()) {
    SetExpr x = se_refine(a, std::max<std::size_t>(1, a.depth()));
    std::map<int, std::vector<long>> fams;
    for (const auto& at : x.fin().atoms) fams[at.prefix.at(0).family] = {0};
    for (auto& [f, idx] : fams) out.per_family.emplace_back(f, FinCofin::of(idx));
    return out;
  }
  const auto& e = a.shift()->rule_engine();
  std::map<int, FinCofin> fams;
  for (const auto& at : a.rule().atoms) {
    if (at.prefix.empty()) {
      for (std::size_t f = 0; f < e.families.size(); ++f) {
        FinCofin idx = fc_intersect(e.indices_with_source_in(static_cast<int>(f), at.tail),
                                    e.indices_with_range_meeting(static_cast<int>(f), e.live),
                                    fam_dom(e, static_cast<int>(f)));
        if (fc_empty(idx, fam_dom(e, static_cast<int>(f)))) continue;
        auto it = fams.try_emplace(static_cast<int>(f), FinCofin::none()).first;
        it->second = fc_union(it->second, idx, fam_dom(e, static_cast<int>(f)));
      }
    } else {
      int f = at.prefix[0].family;
      auto it = fams.try_emplace(f, FinCofin::none()).first;
      it->second = fc_union(it->second, at.prefix[0].idx, fam_dom(e, f));
    }
  }
  for (auto& [f, idx] : fams) out.per_family.emplace_back(f, idx);
  return out;
}

bool is_regular(const SetExpr& a) {
  if (a.empty()) return true;
  return emitted_letters(a).finite(a.shift()->alphabet());
}

namespace {

// Number of points whose first edge starts in V: empty, finite, infinite, or
// not decided within the exploration budget.
enum class PointCount { Finite, Infinite, Unknown };

PointCount points_from(const RuleEngine& e, const FinCofin& v0) {
  FinCofin v = fc_intersect(v0, e.live, e.vertices);
  if (fc_empty(v, e.vertices)) return PointCount::Finite;
  if (!fc_finite(v, e.vertices)) return PointCount::Infinite;
  if (!e.live_exact) return PointCount::Unknown;

  // explicit live-edge graph exploration from the finite vertex set
  std::vector<long> verts = fc_members(v, e.vertices);
  std::map<long, std::vector<std::pair<Letter, std::vector<long>>>> edges;
  std::vector<long> todo = verts;
  std::size_t budget = 512;
  while (!todo.empty()) {
    long u = todo.back();
    todo.pop_back();
    if (edges.count(u)) continue;
    auto& out = edges[u];
    if (edges.size() > budget) return PointCount::Unknown;
    for (std::size_t f = 0; f < e.families.size(); ++f) {
      FinCofin idx = fc_intersect(
          e.indices_with_source_in(static_cast<int>(f), FinCofin::single(u)),
          e.indices_with_range_meeting(static_cast<int>(f), e.live), fam_dom(e, static_cast<int>(f)));
      if (fc_empty(idx, fam_dom(e, static_cast<int>(f)))) continue;
      if (!fc_finite(idx, fam_dom(e, static_cast<int>(f)))) return PointCount::Infinite;
      for (long i : fc_members(idx, fam_dom(e, static_cast<int>(f)))) {
        Letter a{static_cast<int>(f), i};
        FinCofin tg = fc_intersect(e.range_of(a), e.live, e.vertices);
        if (!fc_finite(tg, e.vertices)) return PointCount::Infinite;
        auto ms = fc_members(tg, e.vertices);
        out.emplace_back(a, ms);
        for (long t : ms)
          if (!edges.count(t)) todo.push_back(t);
      }
    }
  }
  // infinite path count is finite iff nothing reachable from a cycle branches
  std::map<long, int> id;
  for (auto& [u, _] : edges) id.emplace(u, static_cast<int>(id.size()));
  std::size_t n = id.size();
  std::vector<std::vector<int>> succ(n);
  for (auto& [u, outs] : edges) {
    for (auto& [a, ts] : outs)
      for (long t : ts) succ[static_cast<std::size_t>(id[u])].push_back(id[t]);
  }
  // vertices on cycles: reachable from themselves
  std::vector<char> oncycle(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<char> seen(n, 0);
    std::vector<int> st = succ[s];
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      if (u == static_cast<int>(s)) {
        oncycle[s] = 1;
        break;
      }
      if (seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = 1;
      for (int t : succ[static_cast<std::size_t>(u)]) st.push_back(t);
    }
  }
  // reachable from any cycle vertex
  std::vector<char> reach(n, 0);
  std::vector<int> st;
  for (std::size_t s = 0; s < n; ++s)
    if (oncycle[s]) {
      reach[s] = 1;
      st.push_back(static_cast<int>(s));
    }
  while (!st.empty()) {
    int u = st.back();
    st.pop_back();
    for (int t : succ[static_cast<std::size_t>(u)])
      if (!reach[static_cast<std::size_t>(t)]) {
        reach[static_cast<std::size_t>(t)] = 1;
        st.push_back(t);
      }
  }
  for (auto& [u, outs] : edges) {
    if (!reach[static_cast<std::size_t>(id[u])]) continue;
    std::size_t deg = 0;
    for (auto& [a, ts] : outs) deg += ts.size();
    if (deg > 1) return PointCount::Infinite;
  }
  return PointCount::Finite;
}

}  // namespace

Ternary is_unital(const SubshiftPtr& s, std::size_t letter_window) {
  if (s->finite_alphabet()) return Ternary::Yes;
  const auto& e = s->rule_engine();
  SetExpr top = se_full(s);
  for (Letter a : s->alphabet().window(letter_window)) {
    Word w{{a}};
    if (!s->in_language(w)) continue;
    if (se_equal(f_set(s, w), top)) return Ternary::Yes;
  }
  // all-finite detection: every letter's follower set is a finite point set
  // while X itself is infinite, so B consists of finite sets and misses X.
  bool all_finite = true;
  bool infinitely_many_letters = false;
  for (std::size_t f = 0; f < e.families.size() && all_finite; ++f) {
    FinCofin feasible = fc_intersect(
        e.indices_with_source_in(static_cast<int>(f), e.live),
        e.indices_with_range_meeting(static_cast<int>(f), e.live), fam_dom(e, static_cast<int>(f)));
    if (fc_empty(feasible, fam_dom(e, static_cast<int>(f)))) continue;
    if (!fc_finite(feasible, fam_dom(e, static_cast<int>(f)))) infinitely_many_letters = true;
    for (const auto& cl : e.families[f].clauses) {
      FinCofin sel = fc_intersect(feasible, cl.when, fam_dom(e, static_cast<int>(f)));
      if (fc_empty(sel, fam_dom(e, static_cast<int>(f)))) continue;
      if (cl.range_all) {
        if (points_from(e, FinCofin::all()) != PointCount::Finite) all_finite = false;
      } else if (cl.range_affine) {
        // unboundedly many distinct ranges cannot all be checked
        if (!fc_finite(sel, fam_dom(e, static_cast<int>(f)))) return Ternary::Unknown;
        for (long i : fc_members(sel, fam_dom(e, static_cast<int>(f))))
          if (points_from(e, FinCofin::single(i + cl.range_offset)) != PointCount::Finite)
            all_finite = false;
      } else {
        if (points_from(e, cl.range_set) != PointCount::Finite) all_finite = false;
      }
    }
  }
  if (all_finite && infinitely_many_letters) return Ternary::No;
  return Ternary::Unknown;
}

// =========================================================================
// atoms of generated subalgebras

std::vector<SetExpr> boolean_atoms(const SubshiftPtr& s, const std::vector<SetExpr>& gens) {
  std::vector<SetExpr> cells{se_full(s)};
  for (const auto& g : gens) {
    std::vector<SetExpr> next;
    for (const auto& c : cells) {
      SetExpr in = se_intersect(c, g);
      SetExpr out = se_minus(c, g);
      if (!in.empty()) next.push_back(std::move(in));
      if (!out.empty()) next.push_back(std::move(out));
    }
    cells = std::move(next);
  }
  std::sort(cells.begin(), cells.end(), se_less);
  return cells;
}

// =========================================================================
// points

bool se_contains(const SetExpr& a, const EvPeriodic& x) {
  if (a.finite_backend()) {
    const auto& e = a.shift()->finite_engine();
    if (!a.shift()->point_in(x)) return false;
    std::size_t d = a.fin().depth;
    Word p = x.prefix(d);
    for (const auto& at : a.fin().atoms) {
      if (at.prefix != p) continue;
      int atom = e.atom_of_point(x.drop(d));
      return (at.tail >> atom) & 1;
    }
    return false;
  }
  if (!a.shift()->point_in(x)) return false;
  const auto& e = a.shift()->rule_engine();
  for (const auto& at : a.rule().atoms) {
    bool ok = true;
    for (std::size_t i = 0; i < at.prefix.size() && ok; ++i) {
      Letter c = x.at(i);
      ok = c.family == at.prefix[i].family && at.prefix[i].idx.contains(c.index);
    }
    if (ok && at.tail.contains(e.source_of(x.at(at.prefix.size())))) return true;
  }
  return false;
}

EvPeriodic se_sample(const SetExpr& a) {
  if (a.empty()) fail(Errc::Internal, "sampling an empty set");
  if (a.finite_backend()) {
    const auto& e = a.shift()->finite_engine();
    const auto& at = a.fin().atoms.front();
    int bit = 0;
    while (!((at.tail >> bit) & 1)) ++bit;
    const EvPeriodic& w = e.atom_witness[static_cast<std::size_t>(bit)];
    EvPeriodic out;
    out.pre = at.prefix.concat(w.pre);
    out.per = w.per;
    out.canonicalize();
    return out;
  }
  const auto& e = a.shift()->rule_engine();
  const auto& at = a.rule().atoms.front();
  // composition constraints are nearest-neighbour, so a tight atom admits a
  // greedy letterwise choice with one-step lookahead
  EvPeriodic out;
  FinCofin v = fc_intersect(fc_normalize(FinCofin::all(), e.vertices), e.live, e.vertices);
  for (std::size_t i = 0; i < at.prefix.size(); ++i) {
    int f = at.prefix[i].family;
    FinCofin idx = fc_intersect(at.prefix[i].idx, e.indices_with_source_in(f, v), fam_dom(e, f));
    FinCofin next_ok = i + 1 < at.prefix.size()
                           ? e.source_image(at.prefix[i + 1].family, at.prefix[i + 1].idx)
                           : at.tail;
    FinCofin good = fc_intersect(idx, e.indices_with_range_meeting(f, next_ok), fam_dom(e, f));
    long pick;
    if (!fc_first(good, fam_dom(e, f), pick)) fail(Errc::Internal, "tight atom not sampleable");
    out.pre.letters.push_back(Letter{f, pick});
    v = fc_intersect(e.range_of(Letter{f, pick}), next_ok, e.vertices);
  }
  if (at.prefix.empty()) v = fc_intersect(v, at.tail, e.vertices);
  v = fc_intersect(v, e.live, e.vertices);
  // extend to a cycle with greedy smallest choices
  std::vector<long> visited;
  std::vector<Letter> chosen;
  long cur;
  if (!fc_first(v, e.vertices, cur)) fail(Errc::Internal, "no live continuation");
  for (std::size_t step = 0; step < 4096; ++step) {
    auto it = std::find(visited.begin(), visited.end(), cur);
    if (it != visited.end()) {
      std::size_t k = static_cast<std::size_t>(it - visited.begin());
      for (std::size_t i = 0; i < k; ++i) out.pre.letters.push_back(chosen[i]);
      for (std::size_t i = k; i < chosen.size(); ++i) out.per.letters.push_back(chosen[i]);
      out.canonicalize();
      return out;
    }
    visited.push_back(cur);
    Letter best{-1, 0};
    long tgt = 0;
    for (std::size_t f = 0; f < e.families.size() && best.family < 0; ++f) {
      FinCofin idx = fc_intersect(
          e.indices_with_source_in(static_cast<int>(f), FinCofin::single(cur)),
          e.indices_with_range_meeting(static_cast<int>(f), e.live), fam_dom(e, static_cast<int>(f)));
      long pick;
      if (!fc_first(idx, fam_dom(e, static_cast<int>(f)), pick)) continue;
      best = Letter{static_cast<int>(f), pick};
      FinCofin r = fc_intersect(e.range_of(best), e.live, e.vertices);
      if (!fc_first(r, e.vertices, tgt)) best = Letter{-1, 0};
    }
    if (best.family < 0) fail(Errc::Internal, "live vertex without live edge");
    chosen.push_back(best);
    cur = tgt;
  }
  fail(Errc::UnsupportedBackend, "no eventually periodic witness found within bound");
}

// =========================================================================
// printing / ordering

namespace {

// A tail constrains sigma^{|w|} of the point, so the in-grammar primitive
// for "tail inside F_u" is C(u, w), never F(u).
std::string ff_atom_str(const SubshiftPtr& s, const FiniteAtom& at) {
  const auto& e = s->finite_engine();
  auto cterm = [&](int cls) {
    const std::string u = s->word_text(e.access[static_cast<std::size_t>(cls)]);
    if (at.prefix.is_empty()) return "F(" + u + ")";
    return "C(" + u + "," + s->word_text(at.prefix) + ")";
  };
  auto assemble = [&](AtomMask tail, AtomMask candidate, bool* ok) {
    std::vector<std::string> pos, neg;
    for (int c = 0; c < e.nclasses && candidate != tail; ++c) {
      if (c == e.cinit) continue;
      AtomMask f = e.fmask[static_cast<std::size_t>(c)];
      if (!(tail & ~f) && (candidate & ~f)) {
        candidate &= f;
        pos.push_back(cterm(c));
      } else if (!(tail & f) && (candidate & f)) {
        candidate &= ~f;
        neg.push_back(cterm(c));
      }
    }
    *ok = candidate == tail;
    std::string out;
    if (!at.prefix.is_empty())
      out = "Z(" + s->word_text(at.prefix) + ")";
    else if (pos.empty())
      out = "X";
    for (std::size_t i = 0; i < pos.size(); ++i)
      out += out.empty() ? pos[i] : "&" + pos[i];
    for (const auto& n : neg) out += "\\" + n;
    return out;
  };
  int wc = word_class(e, at.prefix);
  AtomMask full = e.fmask[static_cast<std::size_t>(wc)];
  bool ok = false;
  std::string direct = assemble(at.tail, full, &ok);
  if (ok) return direct;
  // fall back to a union of full sign conjunctions, one per atom bit
  std::vector<std::string> alts;
  for (int b = 0; b < e.natoms; ++b) {
    if (!((at.tail >> b) & 1)) continue;
    AtomMask bit = AtomMask{1} << b;
    if (!(bit & full)) continue;
    bool bok = false;
    alts.push_back(assemble(bit, full, &bok));
  }
  std::string u;
  for (std::size_t i = 0; i < alts.size(); ++i) u += (i ? "|" : "") + alts[i];
  return alts.size() > 1 ? "(" + u + ")" : u;
}

std::string ra_atom_str(const SubshiftPtr& s, const RuleAtom& at) {
  const auto& alpha = s->alphabet();
  std::string out = "[";
  for (std::size_t i = 0; i < at.prefix.size(); ++i) {
    if (i) out += " ";
    const auto& pc = at.prefix[i];
    if (!pc.idx.cofinite && pc.idx.elems.size() == 1) {
      out += alpha.name(Letter{pc.family, pc.idx.elems[0]});
    } else if (pc.idx.cofinite && pc.idx.elems.empty()) {
      out += alpha.family(pc.family).name + "*";
    } else {
      out += alpha.family(pc.family).name + fc_str(pc.idx);
    }
  }
  out += " ; S" + fc_str(at.tail) + "]";
  return out;
}

}  // namespace

std::string se_str(const SetExpr& a) {
  if (a.empty()) return "0";
  std::vector<std::string> parts;
  if (a.finite_backend()) {
    for (const auto& at : a.fin().atoms) parts.push_back(ff_atom_str(a.shift(), at));
  } else {
    const auto& e = a.shift()->rule_engine();
    if (a.rule().depth == 0 && a.rule().atoms.size() == 1 &&
        fc_is_all(fc_union(a.rule().atoms[0].tail, fc_complement(e.live, e.vertices), e.vertices),
                  e.vertices))
      return "X";
    for (const auto& at : a.rule().atoms) parts.push_back(ra_atom_str(a.shift(), at));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " | " : "") + parts[i];
  return out;
}

bool se_less(const SetExpr& a, const SetExpr& b) {
  if (a.finite_backend() != b.finite_backend()) return a.finite_backend();
  if (a.finite_backend()) return a.fin() < b.fin();
  return a.rule() < b.rule();
}

// =========================================================================
// StepFn

StepFn StepFn::indicator(const SetExpr& e, const RingElem& c) {
  StepFn f(e.shift(), c.tag());
  if (!c.is_zero() && !e.empty()) f.cells_.emplace_back(e, c);
  return f;
}

void StepFn::normalize() {
  std::vector<std::pair<SetExpr, RingElem>> keep;
  for (auto& [e, c] : cells_)
    if (!c.is_zero() && !e.empty()) keep.emplace_back(std::move(e), std::move(c));
  std::sort(keep.begin(), keep.end(),
            [](const auto& x, const auto& y) { return se_less(x.first, y.first); });
  cells_ = std::move(keep);
}

StepFn StepFn::plus(const StepFn& o) const {
  if (cells_.empty()) return o;
  if (o.cells_.empty()) return *this;
  if (ring_ != o.ring_) fail(Errc::RingMismatch, "step functions over different rings");
  if (shift_ != o.shift_) fail(Errc::Internal, "step functions over different subshifts");
  StepFn out(shift_, ring_);
  out.cells_ = cells_;
  for (const auto& [f, d] : o.cells_) {
    SetExpr rest = f;
    std::vector<std::pair<SetExpr, RingElem>> next;
    for (auto& [e, c] : out.cells_) {
      if (rest.empty()) {
        next.emplace_back(e, c);
        continue;
      }
      SetExpr inter = se_intersect(e, rest);
      if (inter.empty()) {
        next.emplace_back(e, c);
        continue;
      }
      SetExpr eonly = se_minus(e, rest);
      if (!eonly.empty()) next.emplace_back(eonly, c);
      RingElem sum = c + d;
      if (!sum.is_zero()) next.emplace_back(inter, sum);
      rest = se_minus(rest, e);
    }
    if (!rest.empty()) next.emplace_back(rest, d);
    out.cells_ = std::move(next);
  }
  out.normalize();
  return out;
}

StepFn StepFn::minus(const StepFn& o) const {
  return plus(o.scaled(RingElem(o.ring_, -1)));
}

StepFn StepFn::scaled(const RingElem& r) const {
  StepFn out(shift_, ring_);
  if (r.is_zero()) return out;
  for (const auto& [e, c] : cells_) out.cells_.emplace_back(e, c * r);
  out.normalize();
  return out;
}

StepFn StepFn::times(const StepFn& o) const {
  if (cells_.empty()) return *this;
  if (o.cells_.empty()) return o;
  if (ring_ != o.ring_) fail(Errc::RingMismatch, "step functions over different rings");
  StepFn out(shift_, ring_);
  for (const auto& [e, c] : cells_)
    for (const auto& [f, d] : o.cells_) {
      SetExpr inter = se_intersect(e, f);
      RingElem prod = c * d;
      if (!inter.empty() && !prod.is_zero()) out.cells_.emplace_back(inter, prod);
    }
  out.normalize();
  return out;
}

SetExpr StepFn::support() const {
  SetExpr s = se_empty(shift_);
  for (const auto& [e, c] : cells_) s = se_union(s, e);
  return s;
}

StepFn StepFn::restricted(const SetExpr& dom) const {
  StepFn out(shift_, ring_);
  for (const auto& [e, c] : cells_) {
    SetExpr inter = se_intersect(e, dom);
    if (!inter.empty()) out.cells_.emplace_back(inter, c);
  }
  out.normalize();
  return out;
}

StepFn StepFn::mapped(const std::function<SetExpr(const SetExpr&)>& f) const {
  StepFn out(shift_, ring_);
  for (const auto& [e, c] : cells_) {
    SetExpr img = f(e);
    if (!img.empty()) out.cells_.emplace_back(img, c);
  }
  out.normalize();
  return out;
}

RingElem StepFn::value_at(const EvPeriodic& x) const {
  for (const auto& [e, c] : cells_)
    if (se_contains(e, x)) return c;
  return RingElem::zero(ring_);
}

std::string StepFn::str() const {
  if (cells_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (i) out += " + ";
    if (!cells_[i].second.is_one()) out += cells_[i].second.str() + "*";
    out += "p(" + se_str(cells_[i].first) + ")";
  }
  return out;
}

}  // namespace shiftalg
