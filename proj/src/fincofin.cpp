#include "shiftalg/fincofin.hpp"

namespace shiftalg {

namespace {

std::vector<long> merged(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
std::vector<long> common(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}
std::vector<long> removed(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

FinCofin fc_normalize(FinCofin s, const IntDomain& dom) {
  if (!dom.infinite) {
    if (s.cofinite) {
      return FinCofin{false, removed(dom.elems, s.elems)};
    }
    return FinCofin{false, common(s.elems, dom.elems)};
  }
  std::vector<long> kept;
  for (long x : s.elems)
    if (x >= dom.min) kept.push_back(x);
  s.elems = std::move(kept);
  return s;
}

FinCofin fc_intersect(const FinCofin& a, const FinCofin& b, const IntDomain& dom) {
  FinCofin r;
  if (!a.cofinite && !b.cofinite) {
    r = FinCofin{false, common(a.elems, b.elems)};
  } else if (!a.cofinite) {
    r = FinCofin{false, removed(a.elems, b.elems)};
  } else if (!b.cofinite) {
    r = FinCofin{false, removed(b.elems, a.elems)};
  } else {
    r = FinCofin{true, merged(a.elems, b.elems)};
  }
  return fc_normalize(std::move(r), dom);
}

FinCofin fc_union(const FinCofin& a, const FinCofin& b, const IntDomain& dom) {
  FinCofin r;
  if (!a.cofinite && !b.cofinite) {
    r = FinCofin{false, merged(a.elems, b.elems)};
  } else if (a.cofinite && b.cofinite) {
    r = FinCofin{true, common(a.elems, b.elems)};
  } else {
    const FinCofin& co = a.cofinite ? a : b;
    const FinCofin& fi = a.cofinite ? b : a;
    r = FinCofin{true, removed(co.elems, fi.elems)};
  }
  return fc_normalize(std::move(r), dom);
}

FinCofin fc_complement(const FinCofin& a, const IntDomain& dom) {
  return fc_normalize(FinCofin{!a.cofinite, a.elems}, dom);
}

FinCofin fc_minus(const FinCofin& a, const FinCofin& b, const IntDomain& dom) {
  return fc_intersect(a, fc_complement(b, dom), dom);
}

bool fc_empty(const FinCofin& a, const IntDomain& dom) {
  if (!a.cofinite) return a.elems.empty();
  // normalized cofinite only over infinite domains
  (void)dom;
  return false;
}

bool fc_is_all(const FinCofin& a, const IntDomain& dom) {
  if (a.cofinite) return a.elems.empty();
  if (dom.infinite) return false;
  return a.elems.size() == dom.elems.size();
}

bool fc_subset(const FinCofin& a, const FinCofin& b, const IntDomain& dom) {
  return fc_empty(fc_minus(a, b, dom), dom);
}

bool fc_finite(const FinCofin& a, const IntDomain& dom) { return !a.cofinite || !dom.infinite; }

std::vector<long> fc_members(const FinCofin& a, const IntDomain& dom) {
  FinCofin n = fc_normalize(a, dom);
  if (n.cofinite) fail(Errc::UnsupportedBackend, "enumerating an infinite set");
  return n.elems;
}

bool fc_first(const FinCofin& a, const IntDomain& dom, long& out) {
  FinCofin n = fc_normalize(a, dom);
  if (!n.cofinite) {
    if (n.elems.empty()) return false;
    out = n.elems.front();
    return true;
  }
  long x = dom.min;
  while (n.contains(x) == false) ++x;
  out = x;
  return true;
}

FinCofin fc_shift_image(const FinCofin& a, const IntDomain& src, long c, const IntDomain& target) {
  FinCofin n = fc_normalize(a, src);
  if (!n.cofinite) {
    std::vector<long> xs;
    xs.reserve(n.elems.size());
    for (long x : n.elems) xs.push_back(x + c);
    return fc_normalize(FinCofin{false, std::move(xs)}, target);
  }
  // image of [src.min, inf) \ E under +c, inside target
  std::vector<long> exc;
  for (long x : n.elems) exc.push_back(x + c);
  if (target.infinite) {
    for (long v = target.min; v < src.min + c; ++v) exc.push_back(v);
  } else {
    for (long v : target.elems)
      if (v < src.min + c) exc.push_back(v);
  }
  std::sort(exc.begin(), exc.end());
  exc.erase(std::unique(exc.begin(), exc.end()), exc.end());
  return fc_normalize(FinCofin{true, std::move(exc)}, target);
}

FinCofin fc_shift_preimage(const FinCofin& v, long c, const IntDomain& idx_dom) {
  std::vector<long> xs;
  xs.reserve(v.elems.size());
  for (long x : v.elems) xs.push_back(x - c);
  return fc_normalize(FinCofin{v.cofinite, std::move(xs)}, idx_dom);
}

std::string fc_str(const FinCofin& a) {
  std::string s = a.cofinite ? "!{" : "{";
  for (std::size_t i = 0; i < a.elems.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a.elems[i]);
  }
  s += "}";
  return s;
}

}  // namespace shiftalg
