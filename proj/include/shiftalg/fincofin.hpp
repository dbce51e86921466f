#ifndef SHIFTALG_FINCOFIN_HPP
#define SHIFTALG_FINCOFIN_HPP

#include <algorithm>
#include <compare>
#include <string>
#include <vector>

#include "shiftalg/base.hpp"

namespace shiftalg {

// Integer domain: either a finite sorted list or the half-line [min, inf).
struct IntDomain {
  bool infinite = false;
  long min = 0;
  std::vector<long> elems;  // finite: sorted unique

  static IntDomain finite(std::vector<long> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return IntDomain{false, 0, std::move(xs)};
  }
  static IntDomain half_line(long min) { return IntDomain{true, min, {}}; }

  bool contains(long x) const {
    if (infinite) return x >= min;
    return std::binary_search(elems.begin(), elems.end(), x);
  }
  std::size_t size() const { return elems.size(); }  // finite only
};

// Finite or cofinite subset of an IntDomain. Canonical relative to a domain:
// finite sets list members (all in-domain); cofinite sets list in-domain
// exceptions and only occur over infinite domains.
struct FinCofin {
  bool cofinite = false;
  std::vector<long> elems;

  static FinCofin none() { return FinCofin{false, {}}; }
  static FinCofin all() { return FinCofin{true, {}}; }
  static FinCofin of(std::vector<long> xs) {
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return FinCofin{false, std::move(xs)};
  }
  static FinCofin single(long x) { return FinCofin{false, {x}}; }

  bool contains(long x) const {
    bool listed = std::binary_search(elems.begin(), elems.end(), x);
    return cofinite ? !listed : listed;
  }
  bool is_all_marker() const { return cofinite && elems.empty(); }

  auto operator<=>(const FinCofin&) const = default;
};

FinCofin fc_normalize(FinCofin s, const IntDomain& dom);
FinCofin fc_intersect(const FinCofin& a, const FinCofin& b, const IntDomain& dom);
FinCofin fc_union(const FinCofin& a, const FinCofin& b, const IntDomain& dom);
FinCofin fc_minus(const FinCofin& a, const FinCofin& b, const IntDomain& dom);
FinCofin fc_complement(const FinCofin& a, const IntDomain& dom);
bool fc_empty(const FinCofin& a, const IntDomain& dom);
bool fc_is_all(const FinCofin& a, const IntDomain& dom);
bool fc_subset(const FinCofin& a, const FinCofin& b, const IntDomain& dom);
bool fc_finite(const FinCofin& a, const IntDomain& dom);
// Members of a finite set (or of a finite domain); fails on infinite sets.
std::vector<long> fc_members(const FinCofin& a, const IntDomain& dom);
// Smallest member, if any.
bool fc_first(const FinCofin& a, const IntDomain& dom, long& out);
// Image/preimage under i -> i + c, normalized into `target`.
FinCofin fc_shift_image(const FinCofin& a, const IntDomain& src, long c, const IntDomain& target);
FinCofin fc_shift_preimage(const FinCofin& v, long c, const IntDomain& idx_dom);
std::string fc_str(const FinCofin& a);

}  // namespace shiftalg

#endif
