#include "shiftalg/subshift.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace shiftalg {

// ---------------------------------------------------------------------------
// EvPeriodic

EvPeriodic EvPeriodic::drop(std::size_t n) const {
  EvPeriodic y;
  if (n <= pre.size()) {
    y.pre = pre.suffix_from(n);
    y.per = per;
  } else {
    std::size_t k = (n - pre.size()) % per.size();
    y.per = per.suffix_from(k).concat(per.prefix(k));
  }
  y.canonicalize();
  return y;
}

Letter EvPeriodic::at(std::size_t i) const {
  if (i < pre.size()) return pre.at(i);
  return per.at((i - pre.size()) % per.size());
}

Word EvPeriodic::prefix(std::size_t n) const {
  Word w;
  w.letters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.letters.push_back(at(i));
  return w;
}

void EvPeriodic::canonicalize() {
  if (per.is_empty()) fail(Errc::Internal, "empty period");
  // primitive root
  for (std::size_t d = 1; d <= per.size(); ++d) {
    if (per.size() % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < per.size() && ok; ++i) ok = per.at(i) == per.at(i % d);
    if (ok) {
      per = per.prefix(d);
      break;
    }
  }
  // absorb the preperiod tail into the cycle
  while (!pre.is_empty() && pre.back() == per.back()) {
    pre = pre.prefix(pre.size() - 1);
    Letter last = per.back();
    Word rot;
    rot.letters.push_back(last);
    for (std::size_t i = 0; i + 1 < per.size(); ++i) rot.letters.push_back(per.at(i));
    per = rot;
  }
}

// ---------------------------------------------------------------------------
// FiniteEngine

int FiniteEngine::run(int cls, const Word& w) const {
  for (std::size_t i = 0; i < w.size() && cls >= 0; ++i) {
    // letters already validated/dense
    cls = cdelta[static_cast<std::size_t>(cls)][static_cast<std::size_t>(w.at(i).family)];
  }
  return cls;
}

bool FiniteEngine::survives(int cls, const EvPeriodic& x) const {
  for (std::size_t i = 0; i < x.pre.size(); ++i) {
    if (cls < 0) return false;
    cls = cdelta[static_cast<std::size_t>(cls)][static_cast<std::size_t>(x.pre.at(i).family)];
  }
  std::set<int> seen;
  while (cls >= 0 && !seen.count(cls)) {
    seen.insert(cls);
    for (std::size_t i = 0; i < x.per.size() && cls >= 0; ++i) {
      cls = cdelta[static_cast<std::size_t>(cls)][static_cast<std::size_t>(x.per.at(i).family)];
    }
  }
  return cls >= 0;
}

AtomMask FiniteEngine::rel_mask(AtomMask t, int letter) const {
  AtomMask out = 0;
  for (int i = 0; i < natoms; ++i)
    if (t & (AtomMask{1} << i)) out |= atom_rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(letter)];
  return out;
}

int FiniteEngine::atom_of_point(const EvPeriodic& x) const {
  std::vector<char> sign(static_cast<std::size_t>(nclasses));
  for (int c = 0; c < nclasses; ++c) sign[static_cast<std::size_t>(c)] = survives(c, x) ? 1 : 0;
  for (int i = 0; i < natoms; ++i)
    if (atom_sign[static_cast<std::size_t>(i)] == sign) return i;
  fail(Errc::Internal, "point matches no atom (not in X?)");
}

bool FiniteEngine::inhabited(const std::vector<int>& pos, const std::vector<int>& neg,
                             EvPeriodic* wit) const {
  std::vector<int> comps;
  std::vector<char> alive_req, dead_req;
  auto add = [&](int c, bool al, bool de) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (comps[i] == c) {
        alive_req[i] = alive_req[i] || al;
        dead_req[i] = dead_req[i] || de;
        return;
      }
    comps.push_back(c);
    alive_req.push_back(al);
    dead_req.push_back(de);
  };
  add(cinit, true, false);
  for (int c : pos) add(c, true, false);
  for (int c : neg) add(c, false, true);
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (alive_req[i] && dead_req[i]) return false;

  using Cfg = std::vector<int>;
  std::map<Cfg, int> id;
  std::vector<Cfg> cfgs;
  std::vector<std::pair<int, int>> parent;  // (cfg id, letter)
  auto intern = [&](const Cfg& c, int par, int letter) {
    auto it = id.find(c);
    if (it != id.end()) return std::pair<int, bool>(it->second, false);
    int n = static_cast<int>(cfgs.size());
    id.emplace(c, n);
    cfgs.push_back(c);
    parent.emplace_back(par, letter);
    return std::pair<int, bool>(n, true);
  };
  auto alive_ok = [&](const Cfg& c) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (alive_req[i] && c[i] < 0) return false;
    return true;
  };
  auto dead_done = [&](const Cfg& c) {
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (dead_req[i] && c[i] >= 0) return false;
    return true;
  };
  auto step = [&](const Cfg& c, int a) {
    Cfg n(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      n[i] = c[i] < 0 ? -1
                      : cdelta[static_cast<std::size_t>(c[i])][static_cast<std::size_t>(a)];
    return n;
  };

  Cfg start = comps;
  if (!alive_ok(start)) return false;
  intern(start, -1, -1);
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int a = 0; a < nletters; ++a) {
      Cfg n = step(cfgs[static_cast<std::size_t>(u)], a);
      if (!alive_ok(n)) continue;
      auto [v, fresh] = intern(n, u, a);
      if (fresh) bfs.push(v);
    }
  }

  // configs admitting an infinite alive-preserving path: prune nodes without
  // surviving successors until stable
  std::size_t n = cfgs.size();
  std::vector<char> inf(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t u = 0; u < n; ++u) {
      if (!inf[u]) continue;
      bool any = false;
      for (int a = 0; a < nletters && !any; ++a) {
        Cfg s = step(cfgs[u], a);
        if (!alive_ok(s)) continue;
        auto it = id.find(s);
        if (it != id.end() && inf[static_cast<std::size_t>(it->second)]) any = true;
      }
      if (!any) {
        inf[u] = 0;
        changed = true;
      }
    }
  }

  int goal = -1;
  for (std::size_t u = 0; u < n; ++u)
    if (inf[u] && dead_done(cfgs[u])) {
      goal = static_cast<int>(u);
      break;
    }
  if (goal < 0) return false;
  if (!wit) return true;

  Word u_word;
  {
    std::vector<int> rev;
    int cur = goal;
    while (parent[static_cast<std::size_t>(cur)].second >= 0) {
      rev.push_back(parent[static_cast<std::size_t>(cur)].second);
      cur = parent[static_cast<std::size_t>(cur)].first;
    }
    std::reverse(rev.begin(), rev.end());
    for (int a : rev) u_word.letters.push_back(Letter{a, 0});
  }
  // walk inside `inf` until a config repeats
  std::vector<int> order;
  std::map<int, std::size_t> at;
  std::vector<int> letters;
  int cur = goal;
  while (!at.count(cur)) {
    at[cur] = order.size();
    order.push_back(cur);
    for (int a = 0; a < nletters; ++a) {
      Cfg s = step(cfgs[static_cast<std::size_t>(cur)], a);
      if (!alive_ok(s)) continue;
      auto it = id.find(s);
      if (it == id.end() || !inf[static_cast<std::size_t>(it->second)]) continue;
      letters.push_back(a);
      cur = it->second;
      break;
    }
  }
  std::size_t loop_start = at[cur];
  EvPeriodic w;
  w.pre = u_word;
  for (std::size_t i = 0; i < loop_start; ++i) w.pre.letters.push_back(Letter{letters[i], 0});
  for (std::size_t i = loop_start; i < letters.size(); ++i)
    w.per.letters.push_back(Letter{letters[i], 0});
  w.canonicalize();
  *wit = w;
  return true;
}

// ---------------------------------------------------------------------------
// finite-engine construction

namespace {

struct LabelledGraph {
  int nvertices = 0;
  int nletters = 0;
  // adj[v][a] -> target or -1 (right-resolving)
  std::vector<std::vector<int>> adj;
};

// Subset construction from "all vertices", Moore minimization, atom tables.
FiniteEngine build_engine(LabelledGraph g) {
  // prune vertices without outgoing edges
  std::vector<char> alive(static_cast<std::size_t>(g.nvertices), 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.nvertices; ++v) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      bool any = false;
      for (int a = 0; a < g.nletters && !any; ++a) {
        int t = g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
        if (t >= 0 && alive[static_cast<std::size_t>(t)]) any = true;
      }
      if (!any) {
        alive[static_cast<std::size_t>(v)] = 0;
        changed = true;
      }
    }
  }
  std::vector<int> verts;
  for (int v = 0; v < g.nvertices; ++v)
    if (alive[static_cast<std::size_t>(v)]) verts.push_back(v);
  if (verts.empty()) fail(Errc::ConfigError, "subshift is empty");

  using Sub = std::vector<int>;
  std::map<Sub, int> id;
  std::vector<Sub> subs;
  std::vector<std::vector<int>> delta;
  auto intern = [&](const Sub& s) {
    auto it = id.find(s);
    if (it != id.end()) return std::pair<int, bool>(it->second, false);
    int n = static_cast<int>(subs.size());
    if (n > 40000) fail(Errc::UnsupportedBackend, "subset construction too large");
    id.emplace(s, n);
    subs.push_back(s);
    delta.emplace_back(static_cast<std::size_t>(g.nletters), -1);
    return std::pair<int, bool>(n, true);
  };
  intern(verts);
  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (int a = 0; a < g.nletters; ++a) {
      std::set<int> t;
      for (int v : subs[static_cast<std::size_t>(u)]) {
        int w = g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
        if (w >= 0 && alive[static_cast<std::size_t>(w)]) t.insert(w);
      }
      if (t.empty()) continue;
      auto [v, fresh] = intern(Sub(t.begin(), t.end()));
      delta[static_cast<std::size_t>(u)][static_cast<std::size_t>(a)] = v;
      if (fresh) bfs.push(v);
    }
  }

  // Moore refinement to follower-set classes
  std::size_t n = subs.size();
  std::vector<int> cls(n, 0);
  int ncls = 1;
  while (true) {
    std::map<std::vector<int>, int> sig_id;
    std::vector<int> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.push_back(cls[q]);
      for (int a = 0; a < g.nletters; ++a) {
        int t = delta[q][static_cast<std::size_t>(a)];
        sig.push_back(t < 0 ? -1 : cls[static_cast<std::size_t>(t)]);
      }
      auto it = sig_id.find(sig);
      if (it == sig_id.end()) it = sig_id.emplace(sig, static_cast<int>(sig_id.size())).first;
      next[q] = it->second;
    }
    int k = static_cast<int>(sig_id.size());
    cls = next;
    if (k == ncls) break;
    ncls = k;
  }

  FiniteEngine e;
  e.nletters = g.nletters;
  e.nclasses = ncls;
  e.cdelta.assign(static_cast<std::size_t>(ncls), std::vector<int>(static_cast<std::size_t>(g.nletters), -1));
  for (std::size_t q = 0; q < n; ++q)
    for (int a = 0; a < g.nletters; ++a) {
      int t = delta[q][static_cast<std::size_t>(a)];
      e.cdelta[static_cast<std::size_t>(cls[q])][static_cast<std::size_t>(a)] =
          t < 0 ? -1 : cls[static_cast<std::size_t>(t)];
    }
  e.cinit = cls[0];

  // access words per class
  e.access.assign(static_cast<std::size_t>(ncls), Word{});
  std::vector<char> seen(static_cast<std::size_t>(ncls), 0);
  std::queue<int> q2;
  seen[static_cast<std::size_t>(e.cinit)] = 1;
  q2.push(e.cinit);
  while (!q2.empty()) {
    int c = q2.front();
    q2.pop();
    for (int a = 0; a < g.nletters; ++a) {
      int t = e.cdelta[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
      if (t < 0 || seen[static_cast<std::size_t>(t)]) continue;
      seen[static_cast<std::size_t>(t)] = 1;
      e.access[static_cast<std::size_t>(t)] = e.access[static_cast<std::size_t>(c)].append(Letter{a, 0});
      q2.push(t);
    }
  }

  // atoms of the follower Boolean algebra, by incremental sign enumeration
  std::vector<std::vector<char>> signs;
  std::vector<EvPeriodic> wits;
  std::vector<char> cur(static_cast<std::size_t>(ncls), 0);
  std::vector<int> pos, neg;
  auto rec = [&](auto&& self, int c) -> void {
    EvPeriodic wit;
    if (!e.inhabited(pos, neg, c == ncls ? &wit : nullptr)) return;
    if (c == ncls) {
      signs.push_back(cur);
      wits.push_back(wit);
      return;
    }
    cur[static_cast<std::size_t>(c)] = 1;
    pos.push_back(c);
    self(self, c + 1);
    pos.pop_back();
    cur[static_cast<std::size_t>(c)] = 0;
    neg.push_back(c);
    self(self, c + 1);
    neg.pop_back();
  };
  rec(rec, 0);
  e.natoms = static_cast<int>(signs.size());
  if (e.natoms == 0) fail(Errc::Internal, "no follower atoms");
  if (e.natoms > 63) fail(Errc::UnsupportedBackend, "follower algebra too large");
  e.atom_sign = signs;
  e.atom_witness = wits;
  e.full_mask = (AtomMask{1} << e.natoms) - 1;
  e.fmask.assign(static_cast<std::size_t>(ncls), 0);
  for (int i = 0; i < e.natoms; ++i)
    for (int c = 0; c < ncls; ++c)
      if (signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])
        e.fmask[static_cast<std::size_t>(c)] |= AtomMask{1} << i;

  e.atom_rel.assign(static_cast<std::size_t>(e.natoms),
                    std::vector<AtomMask>(static_cast<std::size_t>(g.nletters), 0));
  for (int i = 0; i < e.natoms; ++i) {
    for (int a = 0; a < g.nletters; ++a) {
      int ca = e.cdelta[static_cast<std::size_t>(e.cinit)][static_cast<std::size_t>(a)];
      if (ca < 0) continue;  // a not in the language
      AtomMask m = e.fmask[static_cast<std::size_t>(ca)];
      for (int c = 0; c < ncls && m; ++c) {
        int d = e.cdelta[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)];
        AtomMask fm = d < 0 ? 0 : e.fmask[static_cast<std::size_t>(d)];
        if (signs[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])
          m &= fm;
        else
          m &= e.full_mask & ~fm;
      }
      e.atom_rel[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] = m;
    }
  }
  return e;
}

bool has_factor(const Word& w, const Word& f) {
  if (f.size() > w.size()) return false;
  for (std::size_t i = 0; i + f.size() <= w.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < f.size() && ok; ++j) ok = w.at(i + j) == f.at(j);
    if (ok) return true;
  }
  return false;
}

bool has_forbidden_suffix(const Word& w, const std::vector<Word>& forb) {
  for (const auto& f : forb) {
    if (f.size() > w.size()) continue;
    bool ok = true;
    for (std::size_t j = 0; j < f.size() && ok; ++j)
      ok = w.at(w.size() - f.size() + j) == f.at(j);
    if (ok) return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// RuleEngine

const RuleClause& RuleEngine::clause_of(Letter a) const {
  const auto& fam = families.at(static_cast<std::size_t>(a.family));
  for (const auto& cl : fam.clauses)
    if (cl.when.contains(a.index)) return cl;
  fail(Errc::Internal, "rule clauses do not cover index");
}

long RuleEngine::source_of(Letter a) const { return clause_of(a).source.apply(a.index); }

FinCofin RuleEngine::range_of(Letter a) const {
  const auto& cl = clause_of(a);
  if (cl.range_all) return fc_normalize(FinCofin::all(), vertices);
  if (cl.range_affine) return fc_normalize(FinCofin::single(a.index + cl.range_offset), vertices);
  return fc_normalize(cl.range_set, vertices);
}

FinCofin RuleEngine::indices_with_source_in(int family, const FinCofin& v) const {
  const auto& fam = families.at(static_cast<std::size_t>(family));
  FinCofin out = FinCofin::none();
  for (const auto& cl : fam.clauses) {
    FinCofin idx;
    if (cl.source.slope == 1) {
      idx = fc_shift_preimage(v, cl.source.offset, fam.indices);
    } else {
      idx = v.contains(cl.source.offset) ? fc_normalize(FinCofin::all(), fam.indices)
                                         : FinCofin::none();
    }
    out = fc_union(out, fc_intersect(idx, cl.when, fam.indices), fam.indices);
  }
  return out;
}

FinCofin RuleEngine::range_union(int family, const FinCofin& idx) const {
  const auto& fam = families.at(static_cast<std::size_t>(family));
  FinCofin out = FinCofin::none();
  for (const auto& cl : fam.clauses) {
    FinCofin sel = fc_intersect(idx, cl.when, fam.indices);
    if (fc_empty(sel, fam.indices)) continue;
    FinCofin r;
    if (cl.range_all) {
      r = fc_normalize(FinCofin::all(), vertices);
    } else if (cl.range_affine) {
      r = fc_shift_image(sel, fam.indices, cl.range_offset, vertices);
    } else {
      r = fc_normalize(cl.range_set, vertices);
    }
    out = fc_union(out, r, vertices);
  }
  return out;
}

FinCofin RuleEngine::indices_with_range_meeting(int family, const FinCofin& v) const {
  const auto& fam = families.at(static_cast<std::size_t>(family));
  FinCofin out = FinCofin::none();
  bool v_empty = fc_empty(v, vertices);
  for (const auto& cl : fam.clauses) {
    FinCofin idx;
    if (cl.range_all) {
      idx = v_empty ? FinCofin::none() : fc_normalize(FinCofin::all(), fam.indices);
    } else if (cl.range_affine) {
      idx = fc_shift_preimage(v, cl.range_offset, fam.indices);
    } else {
      idx = fc_empty(fc_intersect(cl.range_set, v, vertices), vertices)
                ? FinCofin::none()
                : fc_normalize(FinCofin::all(), fam.indices);
    }
    out = fc_union(out, fc_intersect(idx, cl.when, fam.indices), fam.indices);
  }
  return out;
}

FinCofin RuleEngine::source_image(int family, const FinCofin& idx) const {
  const auto& fam = families.at(static_cast<std::size_t>(family));
  FinCofin out = FinCofin::none();
  for (const auto& cl : fam.clauses) {
    FinCofin sel = fc_intersect(idx, cl.when, fam.indices);
    if (fc_empty(sel, fam.indices)) continue;
    if (cl.source.slope == 1) {
      out = fc_union(out, fc_shift_image(sel, fam.indices, cl.source.offset, vertices), vertices);
    } else {
      out = fc_union(out, fc_normalize(FinCofin::single(cl.source.offset), vertices), vertices);
    }
  }
  return out;
}

bool RuleEngine::constant_range(int family, const FinCofin& idx, FinCofin& out) const {
  const auto& fam = families.at(static_cast<std::size_t>(family));
  bool first = true;
  for (const auto& cl : fam.clauses) {
    FinCofin sel = fc_intersect(idx, cl.when, fam.indices);
    if (fc_empty(sel, fam.indices)) continue;
    FinCofin r;
    if (cl.range_all) {
      r = fc_normalize(FinCofin::all(), vertices);
    } else if (cl.range_affine) {
      auto members = sel.cofinite ? std::vector<long>{} : sel.elems;
      if (sel.cofinite || members.size() != 1) return false;
      r = fc_normalize(FinCofin::single(members[0] + cl.range_offset), vertices);
    } else {
      r = fc_normalize(cl.range_set, vertices);
    }
    if (first) {
      out = r;
      first = false;
    } else if (!(out == r)) {
      return false;
    }
  }
  if (first) out = FinCofin::none();
  return true;
}

// ---------------------------------------------------------------------------
// Subshift facade

namespace {

// Finite backends use symbol alphabets: one single-letter family per symbol,
// so the dense letter id equals the family id.
void require_symbols(const Alphabet& alpha) {
  if (!alpha.finite()) fail(Errc::ConfigError, "finite backend needs a finite alphabet");
  for (std::size_t f = 0; f < alpha.family_count(); ++f) {
    const auto& fam = alpha.family(static_cast<int>(f));
    if (fam.infinite || fam.indices.size() != 1 || fam.indices[0] != 0)
      fail(Errc::ConfigError, "finite backend needs a symbol alphabet");
  }
}

}  // namespace

SubshiftPtr Subshift::sft(Alphabet alpha, std::vector<Word> forbidden, std::string name) {
  require_symbols(alpha);
  auto s = std::shared_ptr<Subshift>(new Subshift());
  s->kind_ = Kind::Sft;
  s->name_ = std::move(name);
  s->alpha_ = std::move(alpha);
  const int k = static_cast<int>(s->alpha_.size());

  // densify letters in words
  std::vector<Word> forb;
  for (auto& f : forbidden) {
    Word d;
    for (auto a : f.letters) d.letters.push_back(Letter{s->alpha_.id_of(a), 0});
    if (d.is_empty()) fail(Errc::ConfigError, "empty forbidden word");
    forb.push_back(d);
  }
  std::size_t L = 1;
  for (const auto& f : forb) L = std::max(L, f.size());

  // history vertices: clean words of length <= L-1
  std::map<Word, int> vid;
  std::vector<Word> vwords;
  auto intern = [&](const Word& w) {
    auto it = vid.find(w);
    if (it != vid.end()) return it->second;
    int n = static_cast<int>(vwords.size());
    vid.emplace(w, n);
    vwords.push_back(w);
    return n;
  };
  intern(Word{});
  for (std::size_t i = 0; i < vwords.size(); ++i) {
    Word w = vwords[i];
    if (w.size() >= L - 1) continue;
    for (int a = 0; a < k; ++a) {
      Word wa = w.append(Letter{a, 0});
      bool clean = true;
      for (const auto& f : forb)
        if (has_factor(wa, f)) {
          clean = false;
          break;
        }
      if (clean) intern(wa);
    }
  }
  LabelledGraph g;
  g.nletters = k;
  g.nvertices = static_cast<int>(vwords.size());
  g.adj.assign(static_cast<std::size_t>(g.nvertices), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (int v = 0; v < g.nvertices; ++v) {
    const Word& w = vwords[static_cast<std::size_t>(v)];
    for (int a = 0; a < k; ++a) {
      Word wa = w.append(Letter{a, 0});
      if (has_forbidden_suffix(wa, forb)) continue;
      Word tgt = wa.size() <= L - 1 ? wa : wa.suffix_from(wa.size() - (L - 1));
      auto it = vid.find(tgt);
      if (it == vid.end()) continue;  // target unreachable as a clean word
      g.adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] = it->second;
    }
  }
  s->fin_ = build_engine(std::move(g));
  return s;
}

SubshiftPtr Subshift::sofic(Alphabet alpha, int nvertices,
                            std::vector<std::tuple<int, Letter, int>> edges, std::string name) {
  require_symbols(alpha);
  auto s = std::shared_ptr<Subshift>(new Subshift());
  s->kind_ = Kind::Sofic;
  s->name_ = std::move(name);
  s->alpha_ = std::move(alpha);
  const int k = static_cast<int>(s->alpha_.size());
  LabelledGraph g;
  g.nletters = k;
  g.nvertices = nvertices;
  g.adj.assign(static_cast<std::size_t>(nvertices), std::vector<int>(static_cast<std::size_t>(k), -1));
  for (auto& [u, a, v] : edges) {
    int aid = s->alpha_.id_of(a);
    if (u < 0 || u >= nvertices || v < 0 || v >= nvertices)
      fail(Errc::ConfigError, "edge endpoint out of range");
    auto& slot = g.adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(aid)];
    if (slot != -1) fail(Errc::ConfigError, "labelled graph is not right-resolving");
    slot = v;
  }
  s->fin_ = build_engine(std::move(g));
  return s;
}

SubshiftPtr Subshift::rule_graph(IntDomain vertices, std::vector<RuleFamilySpec> families,
                                 std::string name) {
  auto s = std::shared_ptr<Subshift>(new Subshift());
  s->kind_ = Kind::Rule;
  s->name_ = std::move(name);

  std::vector<LetterFamily> fams;
  for (auto& f : families) {
    LetterFamily lf;
    lf.name = f.display;
    lf.infinite = f.indices.infinite;
    lf.min_index = f.indices.min;
    lf.indices = f.indices.elems;
    lf.show_index = f.show_index;
    fams.push_back(std::move(lf));
    FinCofin cover = FinCofin::none();
    for (auto& cl : f.clauses) {
      if (cl.source.slope != 0 && cl.source.slope != 1)
        fail(Errc::ConfigError, "rule source slope must be 0 or 1");
      cl.when = fc_normalize(cl.when, f.indices);
      cl.range_set = fc_normalize(cl.range_set, vertices);
      cover = fc_union(cover, cl.when, f.indices);
    }
    if (!fc_is_all(cover, f.indices))
      fail(Errc::ConfigError, "rule clauses do not cover family " + f.display);
  }
  s->alpha_ = Alphabet(std::move(fams));

  RuleEngine e;
  e.vertices = std::move(vertices);
  e.families = std::move(families);
  // greatest fixpoint of "has an edge into live"
  FinCofin live = fc_normalize(FinCofin::all(), e.vertices);
  e.live_exact = false;
  for (int it = 0; it < 64; ++it) {
    FinCofin next = FinCofin::none();
    for (std::size_t f = 0; f < e.families.size(); ++f) {
      FinCofin idx = e.indices_with_range_meeting(static_cast<int>(f), live);
      const auto& fam = e.families[f];
      for (const auto& cl : fam.clauses) {
        FinCofin sel = fc_intersect(idx, cl.when, fam.indices);
        if (fc_empty(sel, fam.indices)) continue;
        FinCofin src;
        if (cl.source.slope == 1) {
          src = fc_shift_image(sel, fam.indices, cl.source.offset, e.vertices);
        } else {
          src = fc_normalize(FinCofin::single(cl.source.offset), e.vertices);
        }
        next = fc_union(next, src, e.vertices);
      }
    }
    next = fc_intersect(next, live, e.vertices);
    if (next == live) {
      e.live_exact = true;
      break;
    }
    live = next;
  }
  e.live = live;
  if (fc_empty(e.live, e.vertices)) fail(Errc::ConfigError, "subshift is empty");
  s->rule_ = std::move(e);
  return s;
}

const FiniteEngine& Subshift::finite_engine() const {
  if (!fin_) fail(Errc::UnsupportedBackend, "finite-alphabet engine unavailable");
  return *fin_;
}

const RuleEngine& Subshift::rule_engine() const {
  if (!rule_) fail(Errc::UnsupportedBackend, "rule engine unavailable");
  return *rule_;
}

void Subshift::check_word(const Word& w) const {
  for (auto a : w.letters)
    if (!alpha_.contains(a)) fail(Errc::UnknownLetter, "letter outside the declared alphabet");
}

bool Subshift::in_language(const Word& w) const {
  check_word(w);
  if (fin_) {
    Word d;
    for (auto a : w.letters) d.letters.push_back(Letter{alpha_.id_of(a), 0});
    return fin_->run(fin_->cinit, d) >= 0;
  }
  const auto& e = *rule_;
  if (w.is_empty()) return true;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!e.range_of(w.at(i)).contains(e.source_of(w.at(i + 1)))) return false;
  }
  return !fc_empty(fc_intersect(e.range_of(w.back()), e.live, e.vertices), e.vertices);
}

LanguageSlice Subshift::enumerate_language(std::size_t n, std::size_t budget) const {
  LanguageSlice out;
  if (budget == 0) budget = 1;
  if (n == 0) {
    out.words.push_back(Word{});
    return out;
  }
  if (fin_) {
    // finite alphabets: the full list, lexicographic in canonical letter order
    const auto& e = *fin_;
    auto rec = [&](auto&& self, int cls, Word& w) -> void {
      if (w.size() == n) {
        out.words.push_back(w);
        return;
      }
      for (int a = 0; a < e.nletters; ++a) {
        int d = e.cdelta[static_cast<std::size_t>(cls)][static_cast<std::size_t>(a)];
        if (d < 0) continue;
        w.letters.push_back(alpha_.letter_of(a));
        self(self, d, w);
        w.letters.pop_back();
      }
    };
    Word w;
    rec(rec, e.cinit, w);
    return out;
  }
  const auto& e = *rule_;
  bool more = false;
  // DFS over (position, admissible source set)
  auto rec = [&](auto&& self, std::size_t depth, const FinCofin& srcs, Word& w) -> bool {
    if (depth == n) {
      if (out.words.size() == budget) {
        more = true;
        return false;
      }
      out.words.push_back(w);
      return true;
    }
    for (std::size_t f = 0; f < e.families.size(); ++f) {
      const auto& fam = e.families[f];
      FinCofin idx = e.indices_with_source_in(static_cast<int>(f), srcs);
      // a letter must also lead somewhere with a future
      FinCofin ok = fc_intersect(idx, e.indices_with_range_meeting(static_cast<int>(f), e.live),
                                 fam.indices);
      if (fc_empty(ok, fam.indices)) continue;
      if (!fc_finite(ok, fam.indices)) more = true;
      std::size_t cap = budget + 1;
      long i;
      FinCofin rest = ok;
      for (std::size_t cnt = 0; cnt < cap && fc_first(rest, fam.indices, i); ++cnt) {
        rest = fc_minus(rest, FinCofin::single(i), fam.indices);
        Letter a{static_cast<int>(f), i};
        w.letters.push_back(a);
        FinCofin nxt = fc_intersect(e.range_of(a), e.live, e.vertices);
        bool go = self(self, depth + 1, nxt, w);
        w.letters.pop_back();
        if (!go) return false;
      }
    }
    return true;
  };
  Word w;
  rec(rec, 0, fc_normalize(FinCofin::all(), e.vertices), w);
  out.truncated = more && out.words.size() >= budget;
  if (out.words.size() > budget) {
    out.words.resize(budget);
    out.truncated = true;
  }
  return out;
}

bool Subshift::point_in(const EvPeriodic& x) const {
  for (auto a : x.pre.letters)
    if (!alpha_.contains(a)) return false;
  for (auto a : x.per.letters)
    if (!alpha_.contains(a)) return false;
  if (fin_) {
    EvPeriodic d;
    for (auto a : x.pre.letters) d.pre.letters.push_back(Letter{alpha_.id_of(a), 0});
    for (auto a : x.per.letters) d.per.letters.push_back(Letter{alpha_.id_of(a), 0});
    return fin_->survives(fin_->cinit, d);
  }
  const auto& e = *rule_;
  std::size_t m = x.pre.size() + 2 * x.per.size();
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!e.range_of(x.at(i)).contains(e.source_of(x.at(i + 1)))) return false;
  return true;
}

bool Subshift::in_xfin(const Word& w) const {
  check_word(w);
  if (alpha_.finite()) return false;
  const auto& e = *rule_;
  FinCofin srcs;
  if (w.is_empty()) {
    srcs = fc_normalize(FinCofin::all(), e.vertices);
  } else {
    if (!in_language(w)) return false;
    srcs = fc_intersect(e.range_of(w.back()), e.live, e.vertices);
  }
  for (std::size_t f = 0; f < e.families.size(); ++f) {
    const auto& fam = e.families[f];
    FinCofin ok = fc_intersect(e.indices_with_source_in(static_cast<int>(f), srcs),
                               e.indices_with_range_meeting(static_cast<int>(f), e.live),
                               fam.indices);
    if (!fc_empty(ok, fam.indices) && !fc_finite(ok, fam.indices)) return true;
  }
  return false;
}

}  // namespace shiftalg
