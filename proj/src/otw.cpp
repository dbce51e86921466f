#include "shiftalg/otw.hpp"

#include <algorithm>

namespace shiftalg {

OTWPoint OTWPoint::infinite(const SubshiftPtr& s, EvPeriodic x) {
  x.canonicalize();
  if (!s->point_in(x)) fail(Errc::OutsideLanguage, "point not in X");
  OTWPoint p;
  p.kind = Kind::Infinite;
  p.inf = std::move(x);
  return p;
}

OTWPoint OTWPoint::finite(const SubshiftPtr& s, Word w) {
  if (s->finite_alphabet())
    fail(Errc::OutsideLanguage, "X^fin is empty over a finite alphabet");
  if (w.is_empty()) return zero(s);
  if (!s->in_xfin(w)) fail(Errc::OutsideLanguage, "word not in X^fin");
  OTWPoint p;
  p.kind = Kind::Finite;
  p.fin = std::move(w);
  return p;
}

OTWPoint OTWPoint::zero(const SubshiftPtr& s) {
  if (s->finite_alphabet())
    fail(Errc::OutsideLanguage, "the empty sequence exists only over infinite alphabets");
  if (!s->in_xfin(Word{})) fail(Errc::OutsideLanguage, "the empty sequence is not in X^OTW");
  OTWPoint p;
  p.kind = Kind::Zero;
  return p;
}

std::size_t OTWPoint::prefix_len_or(std::size_t cap) const {
  switch (kind) {
    case Kind::Infinite: return cap;
    case Kind::Finite: return std::min(cap, fin.size());
    case Kind::Zero: return 0;
  }
  return 0;
}

Word OTWPoint::prefix(std::size_t n) const {
  switch (kind) {
    case Kind::Infinite: return inf.prefix(n);
    case Kind::Finite: return fin.prefix(std::min(n, fin.size()));
    case Kind::Zero: return Word{};
  }
  return Word{};
}

OTWPoint otw_shift(const SubshiftPtr& s, const OTWPoint& p) {
  switch (p.kind) {
    case OTWPoint::Kind::Infinite: {
      OTWPoint q;
      q.kind = OTWPoint::Kind::Infinite;
      q.inf = p.inf.drop(1);
      return q;
    }
    case OTWPoint::Kind::Finite:
      if (p.fin.size() >= 2) {
        OTWPoint q;
        q.kind = OTWPoint::Kind::Finite;
        q.fin = p.fin.suffix_from(1);
        return q;
      }
      return OTWPoint::zero(s);
    case OTWPoint::Kind::Zero: return p;
  }
  return p;
}

GenCylinder GenCylinder::make(const SubshiftPtr& s, Word base, std::vector<Letter> excluded) {
  s->check_word(base);
  if (!s->in_language(base)) fail(Errc::OutsideLanguage, "cylinder base not in the language");
  for (auto a : excluded) s->check_word(Word{{a}});
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  return GenCylinder{std::move(base), std::move(excluded)};
}

ForwardImage forward_image(const SubshiftPtr& s, const GenCylinder& z, std::size_t n) {
  (void)s;
  if (n > z.base.size()) fail(Errc::BadDepth, "shift depth exceeds cylinder base");
  ForwardImage out;
  out.cylinder = GenCylinder{z.base.suffix_from(n), z.excluded};
  out.follower_of = z.base.prefix(n);
  return out;
}

std::optional<GenCylinder> pullback_intersect(const SubshiftPtr& s, const GenCylinder& z1,
                                              std::size_t n, const GenCylinder& z2) {
  if (n > z1.base.size()) fail(Errc::BadDepth, "shift depth exceeds cylinder base");
  const Word& alpha = z1.base;
  const Word& beta = z2.base;
  auto exc_union = [&] {
    std::vector<Letter> u = z1.excluded;
    u.insert(u.end(), z2.excluded.begin(), z2.excluded.end());
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
  };
  auto in_set = [](const std::vector<Letter>& set, Letter a) {
    return std::binary_search(set.begin(), set.end(), a);
  };
  if (n == alpha.size()) {
    if (beta.is_empty()) return GenCylinder{alpha, exc_union()};
    if (in_set(z1.excluded, beta.at(0))) return std::nullopt;
    Word cat = alpha.concat(beta);
    if (!s->in_language(cat)) return std::nullopt;
    return GenCylinder{cat, z2.excluded};
  }
  std::size_t k = alpha.size() - n;
  if (beta.size() > k) {
    for (std::size_t i = 0; i < k; ++i)
      if (beta.at(i) != alpha.at(n + i)) return std::nullopt;
    if (in_set(z1.excluded, beta.at(k))) return std::nullopt;
    Word cat = alpha.prefix(n).concat(beta);
    if (!s->in_language(cat)) return std::nullopt;
    return GenCylinder{cat, z2.excluded};
  }
  if (beta.size() == k) {
    for (std::size_t i = 0; i < k; ++i)
      if (beta.at(i) != alpha.at(n + i)) return std::nullopt;
    return GenCylinder{alpha, exc_union()};
  }
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (beta.at(i) != alpha.at(n + i)) return std::nullopt;
  if (in_set(z2.excluded, alpha.at(n + beta.size()))) return std::nullopt;
  return GenCylinder{alpha, z1.excluded};
}

SetExpr restrict_to_Xinf(const SubshiftPtr& s, const GenCylinder& z) {
  SetExpr out = z_set(s, z.base);
  for (auto a : z.excluded) out = se_minus(out, z_set(s, z.base.append(a)));
  return out;
}

bool is_in_xfin(const SubshiftPtr& s, const Word& w) { return s->in_xfin(w); }

bool otw_member(const SubshiftPtr& s, const GenCylinder& z, const OTWPoint& p) {
  (void)s;
  switch (p.kind) {
    case OTWPoint::Kind::Infinite: {
      if (p.inf.prefix(z.base.size()) != z.base) return false;
      Letter next = p.inf.at(z.base.size());
      return !std::binary_search(z.excluded.begin(), z.excluded.end(), next);
    }
    case OTWPoint::Kind::Finite: {
      if (p.fin.size() < z.base.size()) return false;
      if (p.fin.prefix(z.base.size()) != z.base) return false;
      if (p.fin.size() == z.base.size()) return true;
      return !std::binary_search(z.excluded.begin(), z.excluded.end(), p.fin.at(z.base.size()));
    }
    case OTWPoint::Kind::Zero: return z.base.is_empty();
  }
  return false;
}

bool otw_follower_member(const SubshiftPtr& s, const Word& alpha, const OTWPoint& p) {
  switch (p.kind) {
    case OTWPoint::Kind::Infinite: {
      EvPeriodic glued;
      glued.pre = alpha.concat(p.inf.pre);
      glued.per = p.inf.per;
      glued.canonicalize();
      return s->point_in(glued);
    }
    case OTWPoint::Kind::Finite: return s->in_xfin(alpha.concat(p.fin));
    case OTWPoint::Kind::Zero: return s->in_xfin(alpha);
  }
  return false;
}

std::string otw_point_str(const SubshiftPtr& s, const OTWPoint& p) {
  switch (p.kind) {
    case OTWPoint::Kind::Infinite:
      return "inf(" + s->word_text(p.inf.pre) + ";" + s->word_text(p.inf.per) + ")";
    case OTWPoint::Kind::Finite: return "fin(" + s->word_text(p.fin) + ")";
    case OTWPoint::Kind::Zero: return "zero";
  }
  return "?";
}

}  // namespace shiftalg
