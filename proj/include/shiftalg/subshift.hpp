#ifndef SHIFTALG_SUBSHIFT_HPP
#define SHIFTALG_SUBSHIFT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "shiftalg/fincofin.hpp"
#include "shiftalg/letters.hpp"

namespace shiftalg {

// Eventually periodic right-infinite word u v v v ... with canonical
// presentation (v primitive, u minimal).
struct EvPeriodic {
  Word pre;
  Word per;  // nonempty

  Letter head() const { return pre.is_empty() ? per.at(0) : pre.at(0); }
  EvPeriodic drop(std::size_t n = 1) const;
  Letter at(std::size_t i) const;
  Word prefix(std::size_t n) const;
  void canonicalize();
  auto operator<=>(const EvPeriodic&) const = default;
};

using AtomMask = std::uint64_t;

// Deterministic follower automaton for finite-alphabet backends, together
// with the atoms of the Boolean algebra generated by the follower sets of
// its states. All tables are built eagerly; the engine is immutable.
struct FiniteEngine {
  int nletters = 0;

  // minimized classes: partial DFA over dense letter ids
  int nclasses = 0;
  std::vector<std::vector<int>> cdelta;  // [class][letter] -> class or -1
  int cinit = -1;                        // class of F_omega = X
  std::vector<Word> access;              // access word per class (from the empty word)

  // atoms of BoolAlg{F_c}: sign vector per atom, witness point per atom
  int natoms = 0;
  std::vector<std::vector<char>> atom_sign;       // [atom][class] in {0,1}
  std::vector<EvPeriodic> atom_witness;           // a point in the atom
  std::vector<AtomMask> fmask;                    // F_c as atom mask, per class
  std::vector<std::vector<AtomMask>> atom_rel;    // r(atom, a) as mask
  AtomMask full_mask = 0;

  int run(int cls, const Word& w) const;  // -1 when the run dies
  int class_of_word(const Word& w) const { return run(cinit, w); }
  bool survives(int cls, const EvPeriodic& x) const;
  AtomMask rel_mask(AtomMask t, int letter) const;
  int atom_of_point(const EvPeriodic& x) const;  // atom containing x
  // Emptiness of  ∩_{c∈pos} F_c  ∩  ∩_{c∈neg} F_c^c  within X, with witness.
  bool inhabited(const std::vector<int>& pos, const std::vector<int>& neg, EvPeriodic* wit) const;
};

// Rule-presented (ultra)graph backend over a possibly infinite alphabet:
// edge families with affine source/range maps over finite-or-cofinite sets.
struct AffineMap {
  long slope = 0;  // 0 (constant) or 1 (shift)
  long offset = 0;
  long apply(long i) const { return slope ? i + offset : offset; }
};

struct RuleClause {
  FinCofin when;            // indices this clause covers (first match wins)
  AffineMap source;
  bool range_all = false;   // r(e_i) = all vertices
  bool range_affine = false;  // r(e_i) = {i + range_offset}
  long range_offset = 0;
  FinCofin range_set;       // constant range otherwise
};

struct RuleFamilySpec {
  std::string display;      // letter name prefix, e.g. "e"
  IntDomain indices;
  bool show_index = true;
  std::vector<RuleClause> clauses;
};

struct RuleEngine {
  IntDomain vertices;
  std::vector<RuleFamilySpec> families;
  FinCofin live;            // vertices with an infinite outgoing path
  bool live_exact = true;   // fixpoint reached within the iteration cap

  long source_of(Letter a) const;
  // Range of a letter (always finite-or-cofinite for a single letter).
  FinCofin range_of(Letter a) const;
  const RuleClause& clause_of(Letter a) const;
  // Allowed indices of family f whose source lies in V.
  FinCofin indices_with_source_in(int family, const FinCofin& v) const;
  // Union of ranges over the given indices of family f.
  FinCofin range_union(int family, const FinCofin& idx) const;
  // Indices of family f whose range meets V.
  FinCofin indices_with_range_meeting(int family, const FinCofin& v) const;
  // Source vertices of the given indices of family f.
  FinCofin source_image(int family, const FinCofin& idx) const;
  // True when every index in idx has the same constant range (stored in out).
  bool constant_range(int family, const FinCofin& idx, FinCofin& out) const;
};

class Subshift;
using SubshiftPtr = std::shared_ptr<const Subshift>;

struct LanguageSlice {
  std::vector<Word> words;
  bool truncated = false;
};

class Subshift {
 public:
  enum class Kind { Sft, Sofic, Rule };

  static SubshiftPtr sft(Alphabet alpha, std::vector<Word> forbidden, std::string name = "sft");
  // Labelled-graph (sofic) presentation; must be right-resolving.
  static SubshiftPtr sofic(Alphabet alpha, int nvertices,
                           std::vector<std::tuple<int, Letter, int>> edges,
                           std::string name = "sofic");
  static SubshiftPtr rule_graph(IntDomain vertices, std::vector<RuleFamilySpec> families,
                                std::string name = "rule");

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Alphabet& alphabet() const { return alpha_; }
  bool finite_alphabet() const { return alpha_.finite(); }
  bool automaton_backend() const { return fin_.has_value(); }

  const FiniteEngine& finite_engine() const;
  const RuleEngine& rule_engine() const;

  void check_word(const Word& w) const;  // UnknownLetter
  bool in_language(const Word& w) const;
  LanguageSlice enumerate_language(std::size_t n, std::size_t budget) const;

  bool point_in(const EvPeriodic& x) const;
  // Letters that can follow w inside the language, as a window or exact list.
  bool in_xfin(const Word& w) const;  // OTW X^fin membership (infinite alphabets)

  std::string letter_str(Letter a) const { return alpha_.name(a); }
  std::string word_text(const Word& w) const { return word_str(alpha_, w); }

 private:
  Subshift() = default;

  Kind kind_ = Kind::Sft;
  std::string name_;
  Alphabet alpha_;
  std::optional<FiniteEngine> fin_;
  std::optional<RuleEngine> rule_;
};

}  // namespace shiftalg

#endif
