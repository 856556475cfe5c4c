#include <set>

#include "cup/error.hpp"
#include "cup/ifol.hpp"
#include "ifol_nodes.hpp"

namespace cup {

namespace {

using ifn::Ctx;
using ifn::Delta;

Term subst_const(const Term& t, const std::string& from, const Term& to) {
  switch (t.kind()) {
    case TermKind::Const:
      return t.name() == from ? to : t;
    case TermKind::App:
      return Term::app(subst_const(t.fn(), from, to), subst_const(t.arg(), from, to));
    case TermKind::Lam:
      return Term::lam_raw(t.name(), t.ann(), subst_const(t.body(), from, to));
    case TermKind::Fix:
      return Term::fix_raw(t.name(), t.ann(), subst_const(t.body(), from, to));
    default:
      return t;
  }
}

void rename_eigen(IFolProof& t, const std::string& from, const Term& to) {
  auto on_term = [&](const Term& m) { return subst_const(m, from, to); };
  for (auto& e : t.sequent.ctx)
    if (e.first == from) e.first = to.name();
  for (auto& d : t.sequent.delta) d = d.map_terms(on_term);
  t.sequent.goal = t.sequent.goal.map_terms(on_term);
  if (!t.witness.empty()) t.witness = subst_const(t.witness, from, to);
  if (t.fresh == from) t.fresh = to.name();
  for (auto& c : t.children) rename_eigen(c, from, to);
}

void collect_names(const IFolProof& t, std::set<std::string>& out) {
  for (const auto& e : t.sequent.ctx) out.insert(e.first);
  if (!t.fresh.empty()) out.insert(t.fresh);
  for (const auto& c : t.children) collect_names(c, out);
}

// Γ-weakening: splice the new variable into every context of the premise,
// renaming any inner eigenvariable that reuses its name.
void insert_ctx(IFolProof& t, size_t pos, const std::pair<std::string, SimpleType>& entry,
                const Signature& sig, std::set<std::string>& avoid) {
  if (t.fresh == entry.first &&
      (t.rule == IFolRule::AllI || t.rule == IFolRule::ExE || t.rule == IFolRule::Weak)) {
    std::string nn = entry.first;
    while (avoid.count(nn) || sig.has_constant(nn) || sig.has_predicate(nn)) nn += "'";
    avoid.insert(nn);
    rename_eigen(t, entry.first, Term::constant(nn));
  }
  t.sequent.ctx.insert(t.sequent.ctx.begin() + pos, entry);
  for (auto& c : t.children) insert_ctx(c, pos, entry, sig, avoid);
}

void need_children(const IFolProof& n, size_t count) {
  if (n.children.size() != count)
    fail(Errc::RuleError, std::string(ifol_rule_name(n.rule)) + ": expected " +
                              std::to_string(count) + " premise(s)");
}

Formula last_later(const IFolSequent& s, FormulaKind inner, const char* what) {
  if (s.delta.empty() || s.delta.back().kind() != FormulaKind::Later ||
      s.delta.back().body().kind() != inner)
    fail(Errc::RuleError, std::string(what) + ": last assumption has the wrong shape");
  return s.delta.back();
}

// ⊢ ▷X → ▷φᵢ for X ≡ φ₁∧φ₂: →I under an appended X, project the component,
// then Next and Mon.
IFolProof later_component(const Ctx& c, const Delta& d, const Formula& x, int which) {
  Delta inner = d;
  inner.push_back(x);
  return ifn::mon(
      ifn::next_i(ifn::impl_i(ifn::and_e(which, ifn::proj(c, inner, static_cast<int>(d.size()))))));
}

// Δ ⊢ ∀x.▷φ with ▷(∀x.φ) sitting at assumption position `at`.
IFolProof push_forall(const Signature& sig, const Ctx& c, const Delta& d, int at,
                      const Formula& shifted) {
  Formula a = d[at].body();
  Signature ext = IFolSequent{c, {}, Formula::top()}.extended(sig);
  std::string f = ifn::fresh_eigen(ext, a.var_hint());
  Ctx c2 = c;
  c2.emplace_back(f, a.var_type());
  Delta inner = d;
  inner.push_back(a);
  IFolProof inst = ifn::mon(ifn::next_i(ifn::impl_i(
      ifn::all_e(Term::constant(f), ifn::proj(c2, inner, static_cast<int>(d.size()))))));
  return ifn::all_i(f, shifted, ifn::impl_e(std::move(inst), ifn::proj(c2, d, at)));
}

}  // namespace

IFolProof expand_derived(const Signature& sig, const IFolProof& n) {
  const IFolSequent& s = n.sequent;
  switch (n.rule) {
    case IFolRule::Weak: {
      need_children(n, 1);
      if (n.fresh.empty()) fail(Errc::RuleError, "weak: missing variable name");
      if (s.ctx.empty() || s.ctx.back().first != n.fresh || !(s.ctx.back().second == n.fresh_type))
        fail(Errc::RuleError, "weak: conclusion context does not end with the new variable");
      IFolProof t = n.children[0];
      std::set<std::string> avoid;
      collect_names(t, avoid);
      avoid.insert(n.fresh);
      insert_ctx(t, s.ctx.size() - 1, s.ctx.back(), sig, avoid);
      return t;
    }
    case IFolRule::MonL: {
      need_children(n, 1);
      Formula back = last_later(s, FormulaKind::Implies, "mon-l");
      int at = static_cast<int>(s.delta.size()) - 1;
      IFolProof L = ifn::impl_i(n.children[0]);
      ifn::thin(L, at, back);
      return ifn::impl_e(std::move(L), ifn::mon(ifn::proj(s.ctx, s.delta, at)));
    }
    case IFolRule::LaterAndL: {
      need_children(n, 1);
      Formula back = last_later(s, FormulaKind::And, "later-and-l");
      Formula x = back.body();
      int at = static_cast<int>(s.delta.size()) - 1;
      IFolProof lhs =
          ifn::impl_e(later_component(s.ctx, s.delta, x, 1), ifn::proj(s.ctx, s.delta, at));
      IFolProof rhs =
          ifn::impl_e(later_component(s.ctx, s.delta, x, 2), ifn::proj(s.ctx, s.delta, at));
      IFolProof L = ifn::impl_i(n.children[0]);
      ifn::thin(L, at, back);
      return ifn::impl_e(std::move(L), ifn::and_i(std::move(lhs), std::move(rhs)));
    }
    case IFolRule::LaterAndR: {
      need_children(n, 1);
      if (s.goal.kind() != FormulaKind::And || s.goal.left().kind() != FormulaKind::Later ||
          s.goal.right().kind() != FormulaKind::Later)
        fail(Errc::RuleError, "later-and-r: goal is not a conjunction of laters");
      Formula x = Formula::conj(s.goal.left().body(), s.goal.right().body());
      IFolProof lhs = ifn::impl_e(later_component(s.ctx, s.delta, x, 1), n.children[0]);
      IFolProof rhs = ifn::impl_e(later_component(s.ctx, s.delta, x, 2), n.children[0]);
      return ifn::and_i(std::move(lhs), std::move(rhs));
    }
    case IFolRule::LaterAllL: {
      need_children(n, 1);
      Formula back = last_later(s, FormulaKind::Forall, "later-all-l");
      Formula a = back.body();
      std::string h = a.var_hint().empty() ? "x" : a.var_hint();
      Formula shifted = Formula::forall(h, a.var_type(), Formula::later(a.open_var(h)));
      int at = static_cast<int>(s.delta.size()) - 1;
      IFolProof L = ifn::impl_i(n.children[0]);
      ifn::thin(L, at, back);
      return ifn::impl_e(std::move(L), push_forall(sig, s.ctx, s.delta, at, shifted));
    }
    case IFolRule::LaterAllR: {
      need_children(n, 1);
      if (s.goal.kind() != FormulaKind::Forall)
        fail(Errc::RuleError, "later-all-r: goal is not a forall");
      std::string h = s.goal.var_hint().empty() ? "x" : s.goal.var_hint();
      Formula opened = s.goal.open_var(h);
      if (opened.kind() != FormulaKind::Later)
        fail(Errc::RuleError, "later-all-r: goal body is not a later");
      Formula a = Formula::forall(h, s.goal.var_type(), opened.body());
      Delta inner = s.delta;
      inner.push_back(Formula::later(a));
      IFolProof L = ifn::impl_i(
          push_forall(sig, s.ctx, inner, static_cast<int>(s.delta.size()), s.goal));
      return ifn::impl_e(std::move(L), n.children[0]);
    }
    case IFolRule::AndLaterIntro: {
      need_children(n, 1);
      if (s.goal.kind() != FormulaKind::Later || s.goal.body().kind() != FormulaKind::And)
        fail(Errc::RuleError, "and-later-intro: goal is not a later conjunction");
      Formula phi = s.goal.body().left(), psi = s.goal.body().right();
      Delta dd = s.delta;
      dd.push_back(Formula::conj(Formula::later(phi), Formula::later(psi)));
      int at = static_cast<int>(s.delta.size());
      Delta two = dd;
      two.push_back(phi);
      two.push_back(psi);
      IFolProof pair = ifn::and_i(ifn::proj(s.ctx, two, at + 1), ifn::proj(s.ctx, two, at + 2));
      IFolProof curried = ifn::mon(ifn::next_i(ifn::impl_i(ifn::impl_i(std::move(pair)))));
      IFolProof step1 = ifn::impl_e(std::move(curried), ifn::and_e(1, ifn::proj(s.ctx, dd, at)));
      IFolProof step2 = ifn::impl_e(ifn::mon(std::move(step1)), ifn::and_e(2, ifn::proj(s.ctx, dd, at)));
      return ifn::impl_e(ifn::impl_i(std::move(step2)), n.children[0]);
    }
    case IFolRule::AllLaterIntro:
      fail(Errc::NotDerived,
           "all-later-intro: ∀x.▷φ ⊢ ▷(∀x.φ) is not derivable from the Next/Mon/FP fragment");
    default:
      fail(Errc::RuleError, std::string(ifol_rule_name(n.rule)) + ": not an admissible rule");
  }
}

IFolProof expand_all(const Signature& sig, const IFolProof& t) {
  IFolProof out = t;
  for (auto& c : out.children) c = expand_all(sig, c);
  while (!ifol_rule_primitive(out.rule)) out = expand_derived(sig, out);
  return out;
}

}  // namespace cup
