#include "shiftalg/letters.hpp"

#include <algorithm>

namespace shiftalg {

Alphabet::Alphabet(std::vector<LetterFamily> fams) : fams_(std::move(fams)) {
  for (auto& f : fams_) {
    if (f.infinite) {
      finite_ = false;
    } else {
      std::sort(f.indices.begin(), f.indices.end());
      f.indices.erase(std::unique(f.indices.begin(), f.indices.end()), f.indices.end());
    }
  }
  for (std::size_t fi = 0; fi < fams_.size(); ++fi) {
    const auto& f = fams_[fi];
    std::string base = f.name;
    if (f.show_index || f.infinite || f.indices.size() != 1) {
      single_char_ = single_char_ && false;
    } else {
      single_char_ = single_char_ && base.size() == 1;
    }
    if (finite_) {
      for (long ix : f.indices) dense_.push_back(Letter{static_cast<int>(fi), ix});
    }
  }
}

Alphabet Alphabet::symbols(const std::vector<std::string>& names) {
  std::vector<LetterFamily> fams;
  fams.reserve(names.size());
  for (const auto& n : names) {
    LetterFamily f;
    f.name = n;
    f.indices = {0};
    f.show_index = false;
    fams.push_back(std::move(f));
  }
  return Alphabet(std::move(fams));
}

std::size_t Alphabet::size() const {
  if (!finite_) fail(Errc::UnsupportedBackend, "size() of infinite alphabet");
  return dense_.size();
}

bool Alphabet::contains(Letter a) const {
  if (a.family < 0 || static_cast<std::size_t>(a.family) >= fams_.size()) return false;
  const auto& f = fams_[static_cast<std::size_t>(a.family)];
  if (f.infinite) return a.index >= f.min_index;
  return std::binary_search(f.indices.begin(), f.indices.end(), a.index);
}

std::string Alphabet::name(Letter a) const {
  const auto& f = family(a.family);
  if (!f.show_index) return f.name;
  return f.name + std::to_string(a.index);
}

std::optional<Letter> Alphabet::find(const std::string& name) const {
  for (std::size_t fi = 0; fi < fams_.size(); ++fi) {
    const auto& f = fams_[fi];
    if (!f.show_index) {
      if (name == f.name) return Letter{static_cast<int>(fi), f.indices.at(0)};
      continue;
    }
    if (name.size() <= f.name.size() || name.compare(0, f.name.size(), f.name) != 0) continue;
    const std::string tail = name.substr(f.name.size());
    if (tail.find_first_not_of("0123456789-") != std::string::npos) continue;
    try {
      Letter a{static_cast<int>(fi), std::stol(tail)};
      if (contains(a)) return a;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::vector<Letter> Alphabet::letters() const {
  if (!finite_) fail(Errc::UnsupportedBackend, "letters() of infinite alphabet");
  return dense_;
}

std::vector<Letter> Alphabet::window(std::size_t k) const {
  // round-robin across families so an infinite family cannot starve later
  // ones; within a family, ascending index
  std::vector<Letter> out;
  std::vector<std::size_t> cursor(fams_.size(), 0);
  bool produced = true;
  while (out.size() < k && produced) {
    produced = false;
    for (std::size_t fi = 0; fi < fams_.size() && out.size() < k; ++fi) {
      const auto& f = fams_[fi];
      if (f.infinite) {
        out.push_back(Letter{static_cast<int>(fi), f.min_index + static_cast<long>(cursor[fi]++)});
        produced = true;
      } else if (cursor[fi] < f.indices.size()) {
        out.push_back(Letter{static_cast<int>(fi), f.indices[cursor[fi]++]});
        produced = true;
      }
    }
  }
  return out;
}

int Alphabet::id_of(Letter a) const {
  auto it = std::lower_bound(dense_.begin(), dense_.end(), a);
  if (it == dense_.end() || *it != a) fail(Errc::UnknownLetter, "letter outside alphabet");
  return static_cast<int>(it - dense_.begin());
}

Letter Alphabet::letter_of(int id) const { return dense_.at(static_cast<std::size_t>(id)); }

Word Word::slice(std::size_t i, std::size_t j) const {
  if (i > j) return Word{};
  if (i < 1 || j > letters.size()) fail(Errc::BadDepth, "slice out of range");
  return Word(std::vector<Letter>(letters.begin() + static_cast<long>(i) - 1,
                                  letters.begin() + static_cast<long>(j)));
}

Word Word::prefix(std::size_t n) const {
  n = std::min(n, letters.size());
  return Word(std::vector<Letter>(letters.begin(), letters.begin() + static_cast<long>(n)));
}

Word Word::suffix_from(std::size_t n) const {
  n = std::min(n, letters.size());
  return Word(std::vector<Letter>(letters.begin() + static_cast<long>(n), letters.end()));
}

Word Word::concat(const Word& other) const {
  Word w = *this;
  w.letters.insert(w.letters.end(), other.letters.begin(), other.letters.end());
  return w;
}

Word Word::append(Letter a) const {
  Word w = *this;
  w.letters.push_back(a);
  return w;
}

bool Word::starts_with(const Word& p) const {
  if (p.size() > size()) return false;
  return std::equal(p.letters.begin(), p.letters.end(), letters.begin());
}

std::string word_str(const Alphabet& alpha, const Word& w) {
  if (w.is_empty()) return "";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !alpha.single_char_names()) out += ".";
    out += alpha.name(w.at(i));
  }
  return out;
}

Word word_parse(const Alphabet& alpha, const std::string& text) {
  Word w;
  if (text.empty()) return w;
  if (alpha.single_char_names() && text.find('.') == std::string::npos) {
    for (char c : text) {
      auto a = alpha.find(std::string(1, c));
      if (!a) fail(Errc::UnknownLetter, "unknown letter '" + std::string(1, c) + "'");
      w.letters.push_back(*a);
    }
    return w;
  }
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t dot = text.find('.', pos);
    std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    auto a = alpha.find(tok);
    if (!a) fail(Errc::UnknownLetter, "unknown letter '" + tok + "'");
    w.letters.push_back(*a);
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  return w;
}

}  // namespace shiftalg
