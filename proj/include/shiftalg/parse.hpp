#ifndef SHIFTALG_PARSE_HPP
#define SHIFTALG_PARSE_HPP

#include "shiftalg/algebra.hpp"
#include "shiftalg/otw.hpp"

namespace shiftalg {

// Set grammar:  C(alpha,beta)  Z(beta)  F(alpha)  X  0  with  &  |  ~  \
// plus parentheses, the bracket atom form printed by se_str, and S{...} /
// S!{...} source-vertex sets on rule backends. In B mode, X and ~ raise
// TopUnavailable.
SetExpr parse_set_expr(const SubshiftPtr& s, const std::string& text, Flavor mode = Flavor::U);

// Algebra grammar:  s(w)  st(w)  p(<set-expr>)  1  integer and a/b scalars,
// with + - * and parentheses.
AlgebraElement parse_alg_expr(const SubshiftPtr& s, const std::string& text, RingTag ring,
                              Flavor mode = Flavor::U);

// Point literals:  inf(pre;per)  fin(word)  zero
OTWPoint parse_point(const SubshiftPtr& s, const std::string& text);

}  // namespace shiftalg

#endif
