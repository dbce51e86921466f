#ifndef SHIFTALG_OTW_HPP
#define SHIFTALG_OTW_HPP

#include <optional>

#include "shiftalg/set_algebra.hpp"
#include "shiftalg/subshift.hpp"

namespace shiftalg {

// Point of the OTW compactification X^OTW: an infinite point (eventually
// periodic presentation), a finite word of X^fin, or the empty sequence.
// Finite and Zero exist only over infinite alphabets.
struct OTWPoint {
  enum class Kind { Infinite, Finite, Zero } kind = Kind::Zero;
  EvPeriodic inf;
  Word fin;

  static OTWPoint infinite(const SubshiftPtr& s, EvPeriodic x);
  static OTWPoint finite(const SubshiftPtr& s, Word w);
  static OTWPoint zero(const SubshiftPtr& s);

  std::size_t prefix_len_or(std::size_t cap) const;  // min(|point|, cap)
  Word prefix(std::size_t n) const;                  // first min(n,|point|) letters
  bool operator==(const OTWPoint&) const = default;
};

OTWPoint otw_shift(const SubshiftPtr& s, const OTWPoint& p);

// Generalised cylinder Z(base, excluded): points extending base whose next
// letter avoids the finite excluded set.
struct GenCylinder {
  Word base;
  std::vector<Letter> excluded;  // sorted unique

  static GenCylinder make(const SubshiftPtr& s, Word base, std::vector<Letter> excluded = {});
  bool operator==(const GenCylinder&) const = default;
};

// sigma^n(Z(alpha,F)) = Z(alpha_{n+1,|alpha|},F) ∩ F(alpha_{1,n})
struct ForwardImage {
  GenCylinder cylinder;
  Word follower_of;
};
ForwardImage forward_image(const SubshiftPtr& s, const GenCylinder& z, std::size_t n);

// Z(z1) ∩ sigma^{-n}(Z(z2)), empty or one generalised cylinder
std::optional<GenCylinder> pullback_intersect(const SubshiftPtr& s, const GenCylinder& z1,
                                              std::size_t n, const GenCylinder& z2);

// Z(alpha,F) ∩ X^inf as a set-algebra element
SetExpr restrict_to_Xinf(const SubshiftPtr& s, const GenCylinder& z);

bool is_in_xfin(const SubshiftPtr& s, const Word& w);

// membership of OTW points, straight from the definitions
bool otw_member(const SubshiftPtr& s, const GenCylinder& z, const OTWPoint& p);
bool otw_follower_member(const SubshiftPtr& s, const Word& alpha, const OTWPoint& p);

std::string otw_point_str(const SubshiftPtr& s, const OTWPoint& p);

}  // namespace shiftalg

#endif
