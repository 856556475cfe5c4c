#include <functional>

#include "cup/error.hpp"
#include "cup/ifol.hpp"
#include "cup/logic.hpp"
#include "ifol_nodes.hpp"

namespace cup {

namespace {

bool atoms_only(const Formula& f) {
  if (f.kind() == FormulaKind::Atom) return true;
  if (f.kind() == FormulaKind::And) return atoms_only(f.left()) && atoms_only(f.right());
  return false;
}

}  // namespace

Formula guard_atoms(const Formula& cg) {
  switch (cg.kind()) {
    case FormulaKind::Atom:
      return Formula::later(cg);
    case FormulaKind::And:
      return Formula::conj(guard_atoms(cg.left()), guard_atoms(cg.right()));
    case FormulaKind::Forall: {
      std::string h = cg.var_hint().empty() ? "x" : cg.var_hint();
      auto fv = cg.free_vars();
      while (fv.count(h)) h += "'";
      return Formula::forall(h, cg.var_type(), guard_atoms(cg.open_var(h)));
    }
    case FormulaKind::Implies:
      if (!atoms_only(cg.left()))
        fail(Errc::UnsupportedShape,
             "coinduction hypothesis antecedent is not a conjunction of atoms");
      return Formula::implies(guard_atoms(cg.left()), guard_atoms(cg.right()));
    default:
      fail(Errc::UnsupportedShape, "connective has no guarded counterpart here");
  }
}

namespace {

using ifn::Ctx;
using ifn::Delta;

struct Translator {
  const Program& p;
  int fuel;
  std::vector<Formula> gp;
  Ctx ctx;
  Delta delta;
  std::vector<int> hyp_pos;
  std::vector<int> extra_pos;

  Translator(const Program& p_, int fuel_) : p(p_), fuel(fuel_), gp(guard_program(p_)) {}

  Signature ext() const {
    Signature out = p.sig;
    for (const auto& [c, ty] : ctx) out.add_constant(c, ty);
    return out;
  }

  IFolProof mk(IFolRule r, Formula goal, std::vector<IFolProof> kids) const {
    IFolProof n;
    n.rule = r;
    n.sequent = {ctx, delta, std::move(goal)};
    n.children = std::move(kids);
    return n;
  }

  int clause_pos(const std::string& name) const {
    for (size_t i = 0; i < p.clauses.size(); ++i)
      if (p.clauses[i].name == name) return static_cast<int>(i);
    fail(Errc::BadProgram, "translate: unknown clause " + name);
  }

  // ▷X from ag(X), where `have` proves ag(X) and X is a conjunction of atoms.
  IFolProof unguard(const Formula& x, const std::function<IFolProof()>& have) {
    if (x.kind() == FormulaKind::Atom) return have();
    IFolProof pair = ifn::and_i(unguard(x.left(), [&] { return ifn::and_e(1, have()); }),
                                unguard(x.right(), [&] { return ifn::and_e(2, have()); }));
    IFolProof n = mk(IFolRule::AndLaterIntro, Formula::later(x), {});
    n.children.push_back(std::move(pair));
    return n;
  }

  // ag(φ) from ▷φ: Later is pushed through ∧/∀/→ with the admissible rules,
  // Mon feeding implication antecedents through unguard.
  IFolProof push_goal(const Formula& phi, const std::function<IFolProof()>& have) {
    switch (phi.kind()) {
      case FormulaKind::Atom:
        return have();
      case FormulaKind::And: {
        Formula split =
            Formula::conj(Formula::later(phi.left()), Formula::later(phi.right()));
        auto part = [&](int which) {
          IFolProof s = mk(IFolRule::LaterAndR, split, {});
          s.children.push_back(have());
          return ifn::and_e(which, std::move(s));
        };
        IFolProof l = push_goal(phi.left(), [&] { return part(1); });
        IFolProof r = push_goal(phi.right(), [&] { return part(2); });
        return ifn::and_i(std::move(l), std::move(r));
      }
      case FormulaKind::Forall: {
        std::string h = phi.var_hint().empty() ? "x" : phi.var_hint();
        Formula shifted = Formula::forall(h, phi.var_type(),
                                          Formula::later(phi.open_var(h)));
        std::string f = ifn::fresh_eigen(ext(), phi.var_hint());
        ctx.emplace_back(f, phi.var_type());
        IFolProof body = push_goal(phi.open(Term::constant(f)), [&] {
          IFolProof s = mk(IFolRule::LaterAllR, shifted, {});
          s.children.push_back(have());
          return ifn::all_e(Term::constant(f), std::move(s));
        });
        ctx.pop_back();
        Formula concl = guard_atoms(phi);
        return ifn::all_i(f, concl, std::move(body));
      }
      case FormulaKind::Implies: {
        Formula agx = guard_atoms(phi.left());
        delta.push_back(agx);
        int at = static_cast<int>(delta.size()) - 1;
        IFolProof body = push_goal(phi.right(), [&] {
          IFolProof arg = unguard(phi.left(), [&] { return ifn::proj(ctx, delta, at); });
          return ifn::impl_e(ifn::mon(have()), std::move(arg));
        });
        delta.pop_back();
        return ifn::impl_i(std::move(body));
      }
      default:
        fail(Errc::UnsupportedShape, "connective has no guarded counterpart here");
    }
  }

  // Elimination walk along a focused chain; `cur` proves the decorated
  // assumption so far.
  IFolProof walk(const CupProof& n, IFolProof cur) {
    switch (n.rule) {
      case CupRule::Init:
        return cur;
      case CupRule::AllL:
        if (cur.sequent.goal.kind() != FormulaKind::Forall)
          fail(Errc::RuleError, "translate: all-l against a non-forall shape");
        return walk(n.children[0], ifn::all_e(n.witness, std::move(cur)));
      case CupRule::AndL1:
      case CupRule::AndL2:
        if (cur.sequent.goal.kind() != FormulaKind::And)
          fail(Errc::RuleError, "translate: and-l against a non-conjunction shape");
        return walk(n.children[0],
                    ifn::and_e(n.rule == CupRule::AndL1 ? 1 : 2, std::move(cur)));
      case CupRule::ImplL: {
        if (cur.sequent.goal.kind() != FormulaKind::Implies)
          fail(Errc::RuleError, "translate: impl-l against a non-implication shape");
        Formula side_want = cur.sequent.goal.left();
        IFolProof side = xgoal(n.children[1], side_want);
        return walk(n.children[0], ifn::impl_e(std::move(cur), std::move(side)));
      }
      default:
        fail(Errc::RuleError, "translate: unexpected rule on a focused sequent");
    }
  }

  IFolProof xdec(const CupProof& n, const Formula& want) {
    int pos;
    if (!n.clause.empty())
      pos = clause_pos(n.clause);
    else if (n.hyp >= 0)
      pos = hyp_pos.at(n.hyp);
    else
      pos = extra_pos.at(n.extra_idx);
    IFolProof t = walk(n.children[0], ifn::proj(ctx, delta, pos));
    Formula end = t.sequent.goal;
    if (end == want) return t;
    Signature e = ext();
    if (formula_convertible(e, end, want, fuel) == Convertibility::Yes)
      return mk(IFolRule::Conv, want, {std::move(t)});
    if (want.kind() == FormulaKind::Later) {
      Formula inner = want.body();
      if (end == inner) return mk(IFolRule::Next, want, {std::move(t)});
      if (formula_convertible(e, end, inner, fuel) == Convertibility::Yes)
        return mk(IFolRule::Next, want, {mk(IFolRule::Conv, inner, {std::move(t)})});
    }
    fail(Errc::UnsupportedShape,
         "translate: resolved head does not meet the guarded goal shape");
  }

  IFolProof xgoal(const CupProof& n, const Formula& want) {
    switch (n.rule) {
      case CupRule::TopR:
        return mk(IFolRule::TopI, want, {});
      case CupRule::AndR: {
        IFolProof l = xgoal(n.children[0], want.left());
        IFolProof r = xgoal(n.children[1], want.right());
        return mk(IFolRule::AndI, want, {std::move(l), std::move(r)});
      }
      case CupRule::OrR1:
        return mk(IFolRule::OrI1, want, {xgoal(n.children[0], want.left())});
      case CupRule::OrR2:
        return mk(IFolRule::OrI2, want, {xgoal(n.children[0], want.right())});
      case CupRule::ExistsR: {
        IFolProof b = xgoal(n.children[0], want.open(n.witness));
        IFolProof out = mk(IFolRule::ExI, want, {std::move(b)});
        out.witness = n.witness;
        return out;
      }
      case CupRule::AllR: {
        ctx.emplace_back(n.fresh, want.var_type());
        IFolProof b = xgoal(n.children[0], want.open(Term::constant(n.fresh)));
        ctx.pop_back();
        IFolProof out = mk(IFolRule::AllI, want, {std::move(b)});
        out.fresh = n.fresh;
        return out;
      }
      case CupRule::ImplR: {
        delta.push_back(want.left());
        extra_pos.push_back(static_cast<int>(delta.size()) - 1);
        IFolProof b = xgoal(n.children[0], want.right());
        extra_pos.pop_back();
        delta.pop_back();
        return mk(IFolRule::ImplI, want, {std::move(b)});
      }
      case CupRule::Dec:
        return xdec(n, want);
      default:
        fail(Errc::RuleError, "translate: unexpected rule on a plain goal");
    }
  }

  IFolProof xguarded(const CupProof& n, const Formula& goal) {
    switch (n.rule) {
      case CupRule::AllRg: {
        ctx.emplace_back(n.fresh, goal.var_type());
        IFolProof b = xguarded(n.children[0], goal.open(Term::constant(n.fresh)));
        ctx.pop_back();
        IFolProof out = mk(IFolRule::AllI, goal, {std::move(b)});
        out.fresh = n.fresh;
        return out;
      }
      case CupRule::AndRg: {
        IFolProof l = xguarded(n.children[0], goal.left());
        IFolProof r = xguarded(n.children[1], goal.right());
        return mk(IFolRule::AndI, goal, {std::move(l), std::move(r)});
      }
      case CupRule::ImplRg: {
        delta.push_back(goal.left());
        hyp_pos.push_back(static_cast<int>(delta.size()) - 1);
        IFolProof b = xguarded(n.children[0], goal.right());
        hyp_pos.pop_back();
        delta.pop_back();
        return mk(IFolRule::ImplI, goal, {std::move(b)});
      }
      case CupRule::DecG:
        return xdec(n, goal);
      default:
        fail(Errc::RuleError, "translate: unexpected rule on a guarded goal");
    }
  }

  IFolProof xcofix(const CupProof& pi) {
    Formula phi0 = pi.sequent.goal;
    const CupProof& body = pi.children.at(0);
    int np = static_cast<int>(gp.size());
    delta = gp;

    if (phi0.kind() == FormulaKind::Atom) {
      delta.push_back(Formula::later(phi0));
      hyp_pos.assign(1, np);
      IFolProof inner = xguarded(body, phi0);
      delta.pop_back();
      hyp_pos.clear();
      return mk(IFolRule::FP, phi0, {std::move(inner)});
    }

    if (phi0.kind() == FormulaKind::Forall &&
        phi0.open_var("%probe").kind() == FormulaKind::Atom) {
      Formula lam = guard_atoms(phi0);
      delta.push_back(lam);
      hyp_pos.assign(1, np);
      IFolProof inner = xguarded(body, phi0);
      hyp_pos.clear();
      delta.back() = Formula::later(phi0);
      IFolProof shift = mk(IFolRule::LaterAllL, phi0, {std::move(inner)});
      delta.pop_back();
      return mk(IFolRule::FP, phi0, {std::move(shift)});
    }

    Formula lam = guard_atoms(phi0);
    delta.push_back(Formula::later(phi0));
    IFolProof push = push_goal(phi0, [&] { return ifn::proj(ctx, delta, np); });
    delta.push_back(lam);
    hyp_pos.assign(1, np + 1);
    IFolProof main = xguarded(body, phi0);
    hyp_pos.clear();
    delta.pop_back();
    IFolProof maj = mk(IFolRule::ImplI, Formula::implies(lam, phi0), {std::move(main)});
    IFolProof cut = mk(IFolRule::ImplE, phi0, {std::move(maj), std::move(push)});
    delta.pop_back();
    return mk(IFolRule::FP, phi0, {std::move(cut)});
  }

  IFolProof run(const CupProof& pi) {
    if (pi.sequent.kind == SequentKind::CoRoot) {
      if (pi.rule != CupRule::Cofix) fail(Errc::RuleError, "translate: malformed proof root");
      return xcofix(pi);
    }
    if (pi.sequent.kind != SequentKind::Goal)
      fail(Errc::RuleError, "translate: proof root must be a co-root or plain goal");
    delta = gp;
    return xgoal(pi, pi.sequent.goal);
  }
};

}  // namespace

IFolProof translate(const Program& p, const CupProof& pi, int fuel) {
  Translator tr(p, fuel);
  return tr.run(pi);
}

}  // namespace cup
