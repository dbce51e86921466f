#ifndef SHIFTALG_STONE_HPP
#define SHIFTALG_STONE_HPP

#include <memory>
#include <optional>

#include "shiftalg/algebra.hpp"
#include "shiftalg/otw.hpp"

namespace shiftalg {

// A finite generator set of U together with the atoms of the subalgebra it
// generates. Every Stone-dual statement in this module is a finite-depth
// statement relative to such a set; the depth label is echoed in outputs.
struct GeneratorSet {
  SubshiftPtr shift;
  std::size_t depth_label = 0;
  std::vector<SetExpr> gens;
  std::vector<SetExpr> atoms;
  // letters the generators were built from; pi reports an exact X^fin point
  // only when an atom excludes this whole window behind a cofinite residue
  std::vector<Letter> window_letters;
};
using GenSetPtr = std::shared_ptr<const GeneratorSet>;

GenSetPtr generator_set(const SubshiftPtr& s, std::vector<SetExpr> gens, std::size_t depth_label);
// cylinders of length <= depth over a letter window, plus single-letter
// follower sets
GenSetPtr canonical_generators(const SubshiftPtr& s, std::size_t depth, std::size_t window = 8);

// Ultrafilter approximation: one atom of a generated subalgebra, optionally
// carrying an eventually periodic point witness (an iota-image).
struct UltraApprox {
  GenSetPtr gens;
  SetExpr atom;
  std::optional<EvPeriodic> point;

  bool compatible(const UltraApprox& o) const;
};

UltraApprox point_to_ultra(const GenSetPtr& gens, const EvPeriodic& x);
// the atom of the coarser set containing this approximation
UltraApprox coarsen(const UltraApprox& xi, const GenSetPtr& coarser);

// sigma-hat at approximation level; NotInDomain when no single first letter
// is forced at the current depth
UltraApprox sigma_hat(const UltraApprox& xi);
bool in_sigma_domain(const UltraApprox& xi);

struct PiResult {
  Word prefix;
  enum class Status { Exact, Truncated, Zero } status = Status::Truncated;
};
PiResult pi(const UltraApprox& xi);

std::vector<UltraApprox> cover_fiber(const SubshiftPtr& s, const OTWPoint& x, std::size_t depth,
                                     std::size_t window = 8);

// Truncated Deaconu-Renault arrow (xi, n, eta), n = k - m, with sigma-hat
// consistency verified at the working depth.
struct GroupoidArrow {
  UltraApprox xi;
  int n = 0;
  UltraApprox eta;
  std::size_t k = 0, m = 0;
};

GroupoidArrow theta(const UltraApprox& xi, const FreeGroupElement& t, const UltraApprox& eta);
// iota-based arrow: eta = iota(point), xi = iota(tau_hat_t(point))
GroupoidArrow arrow_from_point(const GenSetPtr& gens, const FreeGroupElement& t,
                               const EvPeriodic& eta_point);
GroupoidArrow unit_arrow(const UltraApprox& xi);
GroupoidArrow compose(const GroupoidArrow& a, const GroupoidArrow& b);
GroupoidArrow arrow_inverse(const GroupoidArrow& a);

GroupoidArrow epsilon(const GroupoidArrow& a);
GroupoidArrow epsilon_M(const GroupoidArrow& a, const std::vector<Letter>& M);
bool in_epsilon_M_domain(const GroupoidArrow& a, const std::vector<Letter>& M);

// Steinberg-algebra evaluation of an algebra element at an arrow; exact on
// point-backed arrows, depth-checked otherwise.
RingElem groupoid_eval(const AlgebraElement& x, const GroupoidArrow& a);

// basic compact-open bisection Z(O_U, O_V, k, m)
struct Bisection {
  SetExpr u, v;
  std::size_t k = 0, m = 0;
};
// preimage of a basic bisection under epsilon_M, as a finite union
std::vector<Bisection> epsilon_M_preimage(const SubshiftPtr& s, const Bisection& z,
                                          const std::vector<Letter>& M);
bool arrow_in_bisection(const GroupoidArrow& a, const Bisection& z);

// independent equality oracle: compare two elements at one representative
// point-arrow per cell per component; the candidate witness cells come from
// both elements and their difference, evaluation itself is pointwise-exact
bool groupoid_equal_oracle(const AlgebraElement& x, const AlgebraElement& y,
                           const GenSetPtr& gens);

}  // namespace shiftalg

#endif
