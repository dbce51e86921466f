#ifndef SHIFTALG_SET_ALGEBRA_HPP
#define SHIFTALG_SET_ALGEBRA_HPP

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "shiftalg/ring.hpp"
#include "shiftalg/subshift.hpp"

namespace shiftalg {

// U carries the top generator X; B is generated by the C(alpha,beta) with
// (alpha,beta) != (omega,omega) and admits no complement-in-X.
enum class Flavor { U, B };

// --- canonical atoms -------------------------------------------------------

// Finite-alphabet atom: { w x in X : x in T }, T a union of follower-algebra
// atoms (mask), T ⊆ F_w.
struct FiniteAtom {
  Word prefix;
  AtomMask tail = 0;
  auto operator<=>(const FiniteAtom&) const = default;
};

// Rule-backend position constraint: an index set of one family, canonically a
// singleton (explicit letter) or a cofinite residue.
struct PosCon {
  int family = 0;
  FinCofin idx;
  auto operator<=>(const PosCon&) const = default;
};

// Rule-backend atom: { x in X : x_i |= prefix[i], s(x_n) in tail }.
struct RuleAtom {
  std::vector<PosCon> prefix;
  FinCofin tail;
  auto operator<=>(const RuleAtom&) const = default;
};

struct FiniteForm {
  std::size_t depth = 0;
  std::vector<FiniteAtom> atoms;  // sorted, nonempty masks, uniform depth
  auto operator<=>(const FiniteForm&) const = default;
};

struct RuleForm {
  std::size_t depth = 0;
  std::vector<RuleAtom> atoms;  // sorted, disjoint, tight, uniform depth
  auto operator<=>(const RuleForm&) const = default;
};

class SetExpr {
 public:
  SetExpr() = default;
  SetExpr(SubshiftPtr s, Flavor f, FiniteForm form)
      : shift_(std::move(s)), flavor_(f), form_(std::move(form)) {}
  SetExpr(SubshiftPtr s, Flavor f, RuleForm form)
      : shift_(std::move(s)), flavor_(f), form_(std::move(form)) {}

  const SubshiftPtr& shift() const { return shift_; }
  Flavor flavor() const { return flavor_; }
  bool finite_backend() const { return std::holds_alternative<FiniteForm>(form_); }
  const FiniteForm& fin() const { return std::get<FiniteForm>(form_); }
  const RuleForm& rule() const { return std::get<RuleForm>(form_); }
  std::size_t depth() const {
    return finite_backend() ? fin().depth : rule().depth;
  }
  std::size_t atom_count() const {
    return finite_backend() ? fin().atoms.size() : rule().atoms.size();
  }
  bool empty() const { return atom_count() == 0; }

  bool same_set(const SetExpr& o) const;  // canonical / semantic equality

 private:
  SubshiftPtr shift_;
  Flavor flavor_ = Flavor::U;
  std::variant<FiniteForm, RuleForm> form_;
};

// --- construction ----------------------------------------------------------

SetExpr se_empty(const SubshiftPtr& s, Flavor f = Flavor::U);
SetExpr se_full(const SubshiftPtr& s);  // X, flavor U
// rule backends: { x : s(x_0) in verts }
SetExpr se_source_set(const SubshiftPtr& s, const FinCofin& verts, Flavor f);
// rule backends: canonicalize one literal atom
SetExpr se_rule_atom(const SubshiftPtr& s, RuleAtom atom, Flavor f);
// C(alpha,beta); flavor B unless both words are empty.
SetExpr c_set(const SubshiftPtr& s, const Word& alpha, const Word& beta);
inline SetExpr z_set(const SubshiftPtr& s, const Word& beta) { return c_set(s, Word{}, beta); }
inline SetExpr f_set(const SubshiftPtr& s, const Word& alpha) { return c_set(s, alpha, Word{}); }

// --- Boolean structure ------------------------------------------------------

SetExpr se_union(const SetExpr& a, const SetExpr& b);
SetExpr se_intersect(const SetExpr& a, const SetExpr& b);
SetExpr se_minus(const SetExpr& a, const SetExpr& b);
SetExpr se_complement(const SetExpr& a);  // TopUnavailable on flavor B
bool se_is_empty(const SetExpr& a);
bool se_equal(const SetExpr& a, const SetExpr& b);
bool se_subset(const SetExpr& a, const SetExpr& b);

// --- dynamics ---------------------------------------------------------------

// r(A, alpha) = { x : alpha x in A }
SetExpr relative_range(const SetExpr& a, const Word& alpha);
// aA = { a x in X : x in A }
SetExpr prepend(Letter a, const SetExpr& A);
SetExpr prepend_word(const Word& w, const SetExpr& A);

// --- letters, regularity, unitality ----------------------------------------

struct LetterSet {
  // per family: index set of emitted letters
  std::vector<std::pair<int, FinCofin>> per_family;
  bool finite(const Alphabet& alpha) const;
  std::vector<Letter> list(const Alphabet& alpha) const;  // finite only
  std::string str(const Alphabet& alpha) const;
};

LetterSet emitted_letters(const SetExpr& a);
bool is_regular(const SetExpr& a);

enum class Ternary { Yes, No, Unknown };
Ternary is_unital(const SubshiftPtr& s, std::size_t letter_window = 8);

// --- atoms of finitely generated subalgebras --------------------------------

std::vector<SetExpr> boolean_atoms(const SubshiftPtr& s, const std::vector<SetExpr>& gens);

// --- points ------------------------------------------------------------------

bool se_contains(const SetExpr& a, const EvPeriodic& x);
EvPeriodic se_sample(const SetExpr& a);  // some point of a nonempty set

// --- misc --------------------------------------------------------------------

SetExpr se_refine(const SetExpr& a, std::size_t depth);
std::string se_str(const SetExpr& a);
// strict ordering on canonical forms, for deterministic containers
bool se_less(const SetExpr& a, const SetExpr& b);

// --- ring-valued step functions ---------------------------------------------

// Finitely supported locally constant function with values in R: a formal sum
// of indicators over pairwise-disjoint canonical cells.
class StepFn {
 public:
  StepFn() = default;
  StepFn(SubshiftPtr s, RingTag ring) : shift_(std::move(s)), ring_(ring) {}
  static StepFn indicator(const SetExpr& e, const RingElem& c);

  const SubshiftPtr& shift() const { return shift_; }
  const RingTag& ring() const { return ring_; }
  const std::vector<std::pair<SetExpr, RingElem>>& cells() const { return cells_; }

  bool is_zero() const { return cells_.empty(); }
  StepFn plus(const StepFn& o) const;
  StepFn minus(const StepFn& o) const;
  StepFn scaled(const RingElem& r) const;
  StepFn times(const StepFn& o) const;  // pointwise product
  bool equal(const StepFn& o) const { return minus(o).is_zero(); }
  SetExpr support() const;
  StepFn restricted(const SetExpr& dom) const;
  // apply an injective set map cell-wise (e.g. a partial-action homeomorphism)
  StepFn mapped(const std::function<SetExpr(const SetExpr&)>& f) const;
  RingElem value_at(const EvPeriodic& x) const;
  std::string str() const;

 private:
  void add_cell(const SetExpr& e, const RingElem& c);
  void normalize();

  SubshiftPtr shift_;
  RingTag ring_;
  std::vector<std::pair<SetExpr, RingElem>> cells_;  // disjoint, nonzero coeffs
};

}  // namespace shiftalg

#endif
