#ifndef SHIFTALG_LETTERS_HPP
#define SHIFTALG_LETTERS_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "shiftalg/base.hpp"

namespace shiftalg {

// A letter is (family, index). Finite families list their indices explicitly;
// an infinite family covers every index >= min_index.
// Canonical letter order: family declaration order, then index.
struct Letter {
  int family = 0;
  long index = 0;
  auto operator<=>(const Letter&) const = default;
};

struct LetterFamily {
  std::string name;
  bool infinite = false;
  long min_index = 0;            // infinite families: indices min_index, min_index+1, ...
  std::vector<long> indices;     // finite families: sorted index list
  bool show_index = true;        // print "e3" vs bare "e"
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<LetterFamily> fams);

  // Finite alphabet over single-symbol names, one family per symbol.
  static Alphabet symbols(const std::vector<std::string>& names);

  std::size_t family_count() const { return fams_.size(); }
  const LetterFamily& family(int f) const { return fams_.at(static_cast<std::size_t>(f)); }
  bool finite() const { return finite_; }
  std::size_t size() const;  // finite alphabets only

  bool contains(Letter a) const;
  std::string name(Letter a) const;
  std::optional<Letter> find(const std::string& name) const;

  // All letters (finite alphabets), or the first `k` in canonical order.
  std::vector<Letter> letters() const;
  std::vector<Letter> window(std::size_t k) const;

  // Dense ids for finite alphabets, in canonical order.
  int id_of(Letter a) const;
  Letter letter_of(int id) const;

  bool single_char_names() const { return single_char_; }

 private:
  std::vector<LetterFamily> fams_;
  bool finite_ = true;
  bool single_char_ = true;
  std::vector<Letter> dense_;  // finite alphabets
};

struct Word {
  std::vector<Letter> letters;

  Word() = default;
  explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

  static Word empty() { return Word{}; }
  std::size_t size() const { return letters.size(); }
  bool is_empty() const { return letters.empty(); }
  Letter at(std::size_t i) const { return letters.at(i); }
  Letter back() const { return letters.back(); }

  // 1-based inclusive slice; returns the empty word when i > j.
  Word slice(std::size_t i, std::size_t j) const;
  Word prefix(std::size_t n) const;         // first n letters
  Word suffix_from(std::size_t n) const;    // drop first n letters
  Word concat(const Word& other) const;
  Word append(Letter a) const;
  bool starts_with(const Word& p) const;

  auto operator<=>(const Word&) const = default;
};

std::string word_str(const Alphabet& alpha, const Word& w);
Word word_parse(const Alphabet& alpha, const std::string& text);

}  // namespace shiftalg

#endif
