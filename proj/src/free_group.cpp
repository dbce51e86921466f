#include "shiftalg/free_group.hpp"

namespace shiftalg {

FreeGroupElement fg_from_pair(const Word& alpha, const Word& beta) {
  std::size_t k = 0;
  while (k < alpha.size() && k < beta.size() &&
         alpha.at(alpha.size() - 1 - k) == beta.at(beta.size() - 1 - k)) {
    ++k;
  }
  return FreeGroupElement{alpha.prefix(alpha.size() - k), beta.prefix(beta.size() - k)};
}

std::optional<FreeGroupElement> fg_mul(const FreeGroupElement& s, const FreeGroupElement& t) {
  // s * t = pos_s neg_s^{-1} pos_t neg_t^{-1}; cancellation happens only at the
  // junction, between the common prefix of neg_s and pos_t.
  std::size_t k = 0;
  while (k < s.neg.size() && k < t.pos.size() && s.neg.at(k) == t.pos.at(k)) ++k;
  const Word ns = s.neg.suffix_from(k);
  const Word pt = t.pos.suffix_from(k);
  if (!ns.is_empty() && !pt.is_empty()) return std::nullopt;
  if (ns.is_empty()) {
    // pos_s pos_t' neg_t^{-1}
    return fg_from_pair(s.pos.concat(pt), t.neg);
  }
  // pos_s (neg_t ns)^{-1}
  return fg_from_pair(s.pos, t.neg.concat(ns));
}

}  // namespace shiftalg
