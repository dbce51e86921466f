#ifndef SHIFTALG_FREE_GROUP_HPP
#define SHIFTALG_FREE_GROUP_HPP

#include <optional>

#include "shiftalg/letters.hpp"

namespace shiftalg {

// Free-group elements of shape alpha * beta^{-1} with alpha, beta positive words.
// Always reduced: pos and neg never share a last letter unless one is empty.
// Elements outside this shape never need to be stored (their domain ideal is zero);
// fg_mul reports them instead of constructing them.
struct FreeGroupElement {
  Word pos;
  Word neg;

  static FreeGroupElement identity() { return FreeGroupElement{}; }
  bool is_identity() const { return pos.is_empty() && neg.is_empty(); }
  FreeGroupElement inverse() const { return FreeGroupElement{neg, pos}; }
  int degree() const { return static_cast<int>(pos.size()) - static_cast<int>(neg.size()); }

  auto operator<=>(const FreeGroupElement&) const = default;
};

// Cancel the longest common suffix of (alpha, beta).
FreeGroupElement fg_from_pair(const Word& alpha, const Word& beta);

// Product in the free group; nullopt when the reduced product is not of the
// positive-negative shape.
std::optional<FreeGroupElement> fg_mul(const FreeGroupElement& s, const FreeGroupElement& t);

}  // namespace shiftalg

#endif
