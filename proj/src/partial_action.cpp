#include "shiftalg/partial_action.hpp"

namespace shiftalg {

SetExpr domain_of(const SubshiftPtr& s, const FreeGroupElement& t) {
  return c_set(s, t.neg, t.pos);
}

SetExpr tau_hat_apply(const SubshiftPtr& s, const FreeGroupElement& t, const SetExpr& B) {
  SetExpr dom = domain_of(s, t.inverse());  // C(pos, neg)
  SetExpr inside = se_intersect(B, dom);
  if (inside.empty()) return se_empty(s, B.flavor());
  return prepend_word(t.pos, relative_range(inside, t.neg));
}

StepFn tau_apply(const SubshiftPtr& s, const FreeGroupElement& t, const StepFn& f) {
  return f.mapped([&](const SetExpr& cell) { return tau_hat_apply(s, t, cell); });
}

SkewTerm make_skew_term(const SubshiftPtr& s, const FreeGroupElement& t, const StepFn& f) {
  if (!f.is_zero() && !se_subset(f.support(), domain_of(s, t)))
    fail(Errc::Internal, "skew term support escapes W_t");
  return SkewTerm{t, f};
}

std::optional<SkewTerm> skew_mul(const SubshiftPtr& s, const SkewTerm& u, const SkewTerm& v) {
  auto st = fg_mul(u.t, v.t);
  if (!st) return std::nullopt;  // D_{st} = {0}
  StepFn pulled = tau_apply(s, u.t.inverse(), u.f);
  StepFn prod = pulled.times(v.f);
  if (prod.is_zero()) return std::nullopt;
  StepFn pushed = tau_apply(s, u.t, prod);
  if (pushed.is_zero()) return std::nullopt;
  return SkewTerm{*st, pushed};
}

}  // namespace shiftalg
