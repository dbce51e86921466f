#ifndef SHIFTALG_PARTIAL_ACTION_HPP
#define SHIFTALG_PARTIAL_ACTION_HPP

#include <optional>

#include "shiftalg/free_group.hpp"
#include "shiftalg/set_algebra.hpp"

namespace shiftalg {

// Domain W_t of the set-theoretic partial action: W_{beta alpha^{-1}} =
// C(alpha, beta), so for t = pos neg^{-1} this is C(neg, pos).
SetExpr domain_of(const SubshiftPtr& s, const FreeGroupElement& t);

// tau_hat_t(B ∩ W_{t^{-1}}): strip neg, prepend pos.
SetExpr tau_hat_apply(const SubshiftPtr& s, const FreeGroupElement& t, const SetExpr& B);

// Dual action on step functions: tau_t(f) = f ∘ tau_hat_{t^{-1}}, i.e. the
// cells of f inside W_{t^{-1}} pushed forward through tau_hat_t.
StepFn tau_apply(const SubshiftPtr& s, const FreeGroupElement& t, const StepFn& f);

// One skew-ring monomial f_t delta_t with supp(f) ⊆ W_t.
struct SkewTerm {
  FreeGroupElement t;
  StepFn f;
};

SkewTerm make_skew_term(const SubshiftPtr& s, const FreeGroupElement& t, const StepFn& f);

// (f_s delta_s)(g_t delta_t) = tau_s(tau_{s^{-1}}(f_s) g_t) delta_{st};
// nullopt when the product vanishes (including the non-positive-negative st).
std::optional<SkewTerm> skew_mul(const SubshiftPtr& s, const SkewTerm& u, const SkewTerm& v);

}  // namespace shiftalg

#endif
