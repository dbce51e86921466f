#include "shiftalg/parse.hpp"

#include <cctype>

namespace shiftalg {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(Errc::ParseError, what + " at column " + std::to_string(pos + 1) + " in '" + text + "'");
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }
  bool eat_kw(const std::string& kw) {
    skip_ws();
    if (text.compare(pos, kw.size(), kw) == 0) {
      pos += kw.size();
      return true;
    }
    return false;
  }
  std::string until(char stop) {
    std::string out;
    while (pos < text.size() && text[pos] != stop) out += text[pos++];
    return out;
  }
};

Word read_word(const SubshiftPtr& s, Cursor& c, char stop1, char stop2) {
  c.skip_ws();
  std::string tok;
  while (c.pos < c.text.size() && c.text[c.pos] != stop1 && c.text[c.pos] != stop2)
    tok += c.text[c.pos++];
  while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
  try {
    return word_parse(s->alphabet(), tok);
  } catch (const Error& e) {
    c.error(e.what());
  }
}

long read_long(Cursor& c) {
  c.skip_ws();
  std::size_t start = c.pos;
  if (c.pos < c.text.size() && (c.text[c.pos] == '-' || c.text[c.pos] == '+')) ++c.pos;
  while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) ++c.pos;
  if (c.pos == start) c.error("expected an integer");
  return std::stol(c.text.substr(start, c.pos - start));
}

FinCofin read_fincofin(Cursor& c) {
  bool cof = c.eat('!');
  c.expect('{');
  std::vector<long> xs;
  if (!c.eat('}')) {
    for (;;) {
      xs.push_back(read_long(c));
      if (c.eat('}')) break;
      c.expect(',');
    }
  }
  FinCofin f = FinCofin::of(std::move(xs));
  f.cofinite = cof;
  return f;
}

struct SetParser {
  const SubshiftPtr& s;
  Flavor mode;
  Cursor c;

  SetExpr expr() {
    SetExpr acc = term();
    for (;;) {
      if (c.eat('|')) {
        acc = se_union(acc, term());
      } else if (c.eat('\\')) {
        acc = se_minus(acc, term());
      } else {
        return acc;
      }
    }
  }
  SetExpr term() {
    SetExpr acc = factor();
    while (c.eat('&')) acc = se_intersect(acc, factor());
    return acc;
  }
  SetExpr factor() {
    if (c.eat('~')) {
      if (mode == Flavor::B)
        fail(Errc::TopUnavailable, "complement is not available in the B algebra");
      return se_complement(factor());
    }
    if (c.eat('(')) {
      SetExpr e = expr();
      c.expect(')');
      return e;
    }
    return primary();
  }
  SetExpr primary() {
    if (c.eat_kw("C(")) {
      Word a = read_word(s, c, ',', ')');
      c.expect(',');
      Word b = read_word(s, c, ')', ')');
      c.expect(')');
      return c_set(s, a, b);
    }
    if (c.eat_kw("Z(")) {
      Word b = read_word(s, c, ')', ')');
      c.expect(')');
      return z_set(s, b);
    }
    if (c.eat_kw("F(")) {
      Word a = read_word(s, c, ')', ')');
      c.expect(')');
      return f_set(s, a);
    }
    if (c.peek() == '[') return bracket_atom();
    if (c.peek() == 'S') {
      c.expect('S');
      FinCofin f = read_fincofin(c);
      return se_source_set(s, f, mode);
    }
    if (c.eat('X')) {
      if (mode == Flavor::B) fail(Errc::TopUnavailable, "X is not available in the B algebra");
      return se_full(s);
    }
    if (c.eat('0')) return se_empty(s, mode);
    c.error("expected a set expression");
  }
  SetExpr bracket_atom() {
    c.expect('[');
    std::vector<PosCon> cons;
    const auto& alpha = s->alphabet();
    while (c.peek() != ';') {
      c.skip_ws();
      std::string tok;
      while (c.pos < c.text.size() && !std::isspace(static_cast<unsigned char>(c.text[c.pos])) &&
             c.text[c.pos] != ';' && c.text[c.pos] != '{' && c.text[c.pos] != '!' &&
             c.text[c.pos] != '*')
        tok += c.text[c.pos++];
      if (tok.empty()) c.error("expected a position constraint");
      int fam = -1;
      for (std::size_t f = 0; f < alpha.family_count(); ++f)
        if (alpha.family(static_cast<int>(f)).name == tok) fam = static_cast<int>(f);
      if (c.peek() == '*' || c.peek() == '{' || c.peek() == '!') {
        if (fam < 0) c.error("unknown family '" + tok + "'");
        if (c.eat('*')) {
          cons.push_back(PosCon{fam, FinCofin::all()});
        } else {
          cons.push_back(PosCon{fam, read_fincofin(c)});
        }
      } else {
        auto l = alpha.find(tok);
        if (!l) c.error("unknown letter '" + tok + "'");
        cons.push_back(PosCon{l->family, FinCofin::single(l->index)});
      }
    }
    c.expect(';');
    c.skip_ws();
    FinCofin tail = FinCofin::all();
    if (c.eat('*')) {
    } else {
      if (!c.eat_kw("S")) c.error("expected tail S{...} or *");
      tail = read_fincofin(c);
    }
    c.expect(']');
    return se_rule_atom(s, RuleAtom{std::move(cons), tail}, mode);
  }
};

}  // namespace

SetExpr parse_set_expr(const SubshiftPtr& s, const std::string& text, Flavor mode) {
  SetParser p{s, mode, Cursor{text}};
  SetExpr e = p.expr();
  if (!p.c.eof()) p.c.error("unexpected trailing input");
  return e;
}

namespace {

struct AlgParser {
  const SubshiftPtr& s;
  RingTag ring;
  Flavor mode;
  Cursor c;

  AlgebraElement expr() {
    bool neg = false;
    if (c.eat('-')) neg = true;
    AlgebraElement acc = term();
    if (neg) acc = acc.scaled(RingElem(ring, -1));
    for (;;) {
      if (c.eat('+')) {
        acc = acc.plus(term());
      } else if (c.eat('-')) {
        acc = acc.minus(term());
      } else {
        return acc;
      }
    }
  }
  AlgebraElement term() {
    AlgebraElement acc = factor();
    while (c.eat('*')) acc = acc.times(factor());
    return acc;
  }
  AlgebraElement factor() {
    c.skip_ws();
    if (c.eat('(')) {
      AlgebraElement e = expr();
      c.expect(')');
      return e;
    }
    if (c.eat_kw("st(")) {
      Word w = read_word(s, c, ')', ')');
      c.expect(')');
      return AlgebraElement::gen_s_word_star(s, w, ring, mode);
    }
    if (c.eat_kw("s(")) {
      Word w = read_word(s, c, ')', ')');
      c.expect(')');
      return AlgebraElement::gen_s_word(s, w, ring, mode);
    }
    if (c.eat_kw("p(")) {
      // the set expression extends to the matching parenthesis
      int depth = 1;
      std::string inner;
      while (c.pos < c.text.size() && depth > 0) {
        char ch = c.text[c.pos];
        if (ch == '(') ++depth;
        if (ch == ')') {
          --depth;
          if (depth == 0) break;
        }
        inner += ch;
        ++c.pos;
      }
      c.expect(')');
      return AlgebraElement::gen_p(parse_set_expr(s, inner, mode), ring, mode);
    }
    char ch = c.peek();
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+') {
      long num = read_long(c);
      if (num == 1 && c.peek() != '/' && c.peek() != '*') {
        // bare 1 is the unit
        return AlgebraElement::one(s, ring, mode);
      }
      mpq_class q(num);
      if (c.eat('/')) {
        long den = read_long(c);
        q = mpq_class(num, den);
      }
      return AlgebraElement::one(s, ring, mode).scaled(RingElem(ring, q));
    }
    c.error("expected an algebra expression");
  }
};

}  // namespace

AlgebraElement parse_alg_expr(const SubshiftPtr& s, const std::string& text, RingTag ring,
                              Flavor mode) {
  AlgParser p{s, ring, mode, Cursor{text}};
  AlgebraElement e = p.expr();
  if (!p.c.eof()) p.c.error("unexpected trailing input");
  return e;
}

OTWPoint parse_point(const SubshiftPtr& s, const std::string& text) {
  Cursor c{text};
  if (c.eat_kw("inf(")) {
    Word pre = read_word(s, c, ';', ';');
    c.expect(';');
    Word per = read_word(s, c, ')', ')');
    c.expect(')');
    if (per.is_empty()) c.error("empty period");
    EvPeriodic x;
    x.pre = pre;
    x.per = per;
    x.canonicalize();
    return OTWPoint::infinite(s, x);
  }
  if (c.eat_kw("fin(")) {
    Word w = read_word(s, c, ')', ')');
    c.expect(')');
    return OTWPoint::finite(s, w);
  }
  if (c.eat_kw("zero")) return OTWPoint::zero(s);
  c.error("expected inf(pre;per), fin(word) or zero");
}

}  // namespace shiftalg
