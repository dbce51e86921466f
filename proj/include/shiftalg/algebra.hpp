#ifndef SHIFTALG_ALGEBRA_HPP
#define SHIFTALG_ALGEBRA_HPP

#include <map>
#include <string>
#include <vector>

#include "shiftalg/partial_action.hpp"

namespace shiftalg {

// Element of the unital (flavor U) or plain (flavor B) subshift algebra in
// skew-ring normal form: a finite sum of f_t delta_t with supp(f_t) ⊆ W_t.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(SubshiftPtr s, RingTag ring, Flavor fl)
      : shift_(std::move(s)), ring_(ring), flavor_(fl) {}

  static AlgebraElement zero(const SubshiftPtr& s, RingTag ring, Flavor fl = Flavor::U);
  static AlgebraElement one(const SubshiftPtr& s, RingTag ring, Flavor fl = Flavor::U);
  static AlgebraElement gen_p(const SetExpr& a, RingTag ring, Flavor fl);
  static AlgebraElement gen_s(const SubshiftPtr& s, Letter a, RingTag ring, Flavor fl);
  static AlgebraElement gen_s_star(const SubshiftPtr& s, Letter a, RingTag ring, Flavor fl);
  static AlgebraElement gen_s_word(const SubshiftPtr& s, const Word& w, RingTag ring, Flavor fl);
  static AlgebraElement gen_s_word_star(const SubshiftPtr& s, const Word& w, RingTag ring,
                                        Flavor fl);
  // one skew monomial (support is intersected into W_t)
  static AlgebraElement monomial(const SubshiftPtr& s, const FreeGroupElement& t, const StepFn& f,
                                 Flavor fl);

  const SubshiftPtr& shift() const { return shift_; }
  const RingTag& ring() const { return ring_; }
  Flavor flavor() const { return flavor_; }
  const std::map<FreeGroupElement, StepFn>& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  AlgebraElement plus(const AlgebraElement& o) const;
  AlgebraElement minus(const AlgebraElement& o) const;
  AlgebraElement times(const AlgebraElement& o) const;
  AlgebraElement scaled(const RingElem& r) const;
  AlgebraElement star() const;
  bool equals(const AlgebraElement& o) const;

  std::map<int, AlgebraElement> degree_decompose() const;
  bool homogeneous(int* deg = nullptr) const;

  // Plain -> Unital embedding (identical skew form)
  AlgebraElement as_unital() const;

  std::string str() const;

 private:
  void set_component(const FreeGroupElement& t, StepFn f);
  void check_compatible(const AlgebraElement& o) const;

  SubshiftPtr shift_;
  RingTag ring_;
  Flavor flavor_ = Flavor::U;
  std::map<FreeGroupElement, StepFn> comps_;  // zero components absent
};

AlgebraElement e_M(const SubshiftPtr& s, const std::vector<Letter>& m, RingTag ring,
                   Flavor fl = Flavor::U);
AlgebraElement tau_M(const std::vector<Letter>& m, const AlgebraElement& x);
// x + r*1 in the unital algebra
AlgebraElement unitize(const AlgebraElement& x, const RingElem& r);

// --- relation suites ---------------------------------------------------------

struct RelationReport {
  struct Item {
    std::string relation;
    long checked = 0;
    long passed = 0;
    long skipped = 0;
    std::string witness;  // first failure, if any
    bool ok() const { return passed == checked; }
  };
  std::vector<Item> items;
  bool all_ok() const {
    for (auto& i : items)
      if (!i.ok()) return false;
    return true;
  }
};

struct SuiteOptions {
  int max_len = 3;           // word length bound L
  std::size_t window = 5;    // letter window on infinite alphabets
  std::size_t pool_cap = 24; // cap on the generator pool of sets
  RingTag ring{RingTag::Z, 0};
};

RelationReport relation_suite(const SubshiftPtr& s, const SuiteOptions& opt);

}  // namespace shiftalg

#endif
