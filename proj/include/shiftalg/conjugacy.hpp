#ifndef SHIFTALG_CONJUGACY_HPP
#define SHIFTALG_CONJUGACY_HPP

#include <map>
#include <memory>

#include "shiftalg/stone.hpp"

namespace shiftalg {

// Sliding block code with memory m: image letter i is map[x_{i..i+m}].
// Exact Boolean-algebra machinery is available for memory-0 letter codes
// with a declared inverse; apply_code works for any memory.
struct BlockCode {
  SubshiftPtr src;
  SubshiftPtr dst;
  std::size_t memory = 0;
  std::map<Word, Letter> table;
  std::shared_ptr<const BlockCode> inverse;

  // checks totality on L_{m+1}(src) (finite alphabets)
  static BlockCode make(SubshiftPtr src, SubshiftPtr dst, std::size_t memory,
                        std::map<Word, Letter> table);
  static BlockCode letter_code(SubshiftPtr src, SubshiftPtr dst,
                               const std::vector<std::pair<std::string, std::string>>& pairs,
                               bool with_inverse);

  Letter code_at(const Word& block) const;
};

Word apply_code(const BlockCode& h, const Word& w);  // OutsideLanguage when |w| < m+1... see impl
EvPeriodic apply_code_point(const BlockCode& h, const EvPeriodic& x);

// h(A) for memory-0 codes with declared inverse; the candidate image is
// verified against pointwise coding and Inconsistent is raised on mismatch
SetExpr image_of_set(const BlockCode& h, const SetExpr& a);

// atom-level lift at the canonical depth; second member empty when the image
// is not an atom of the target algebra
struct HHatPair {
  UltraApprox from;
  std::optional<UltraApprox> to;
};
std::vector<HHatPair> induced_h_hat(const BlockCode& h, std::size_t depth,
                                    std::size_t window = 8);

// algebra map s_a -> s_{h(a)}, p_A -> p_{h(A)} (letter codes)
AlgebraElement psi_map(const BlockCode& h, const AlgebraElement& x);

struct ConjugacyReport {
  enum class Status { Pass, Fail, Unknown };
  struct Check {
    std::string name;
    Status status = Status::Unknown;
    std::string witness;
  };
  std::size_t depth = 0;
  std::size_t m_budget = 0;
  std::size_t sample_bound = 0;  // monomial length bound used for check (d)
  std::vector<Check> checks;
  bool all_passed() const {
    for (auto& c : checks)
      if (c.status != Status::Pass) return false;
    return true;
  }
};

// finite-depth necessary-condition checks for Theorem-style conjugacy:
// (a) h-bar is a Boolean-algebra map and pi-intertwines
// (b) h-hat commutes with sigma-hat on domain atoms
// (c) Phi preserves the cocycle and epsilon_M-domains with some finite N
// (d) Psi satisfies the e_M / tau_M identities on sampled elements
ConjugacyReport verify_theone(const BlockCode& h, const BlockCode& h_inv, std::size_t depth,
                              std::size_t m_budget);

}  // namespace shiftalg

#endif
