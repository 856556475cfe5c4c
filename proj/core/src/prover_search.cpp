#include <algorithm>

#include "cup/error.hpp"
#include "cup/kernel.hpp"
#include "cup/prover.hpp"

namespace cup {

SearchConfig SearchConfig::for_logic(const LogicId& l) {
  SearchConfig cfg;
  cfg.logic = l;
  cfg.mode = l.with_fix ? UnifyMode::ModuloWhnf : UnifyMode::Syntactic;
  return cfg;
}

namespace {

// Free variables of a zonked goal are metavariables awaiting instantiation;
// classification treats them as base-typed context entries.
Context meta_context(const Formula& f) {
  Context ctx;
  for (const auto& v : f.free_vars()) ctx.push(v, SimpleType());
  return ctx;
}

struct Searcher {
  const Program& p;
  const SearchConfig& cfg;
  MetaStore store;
  int budget = 0;
  bool cutoff = false;

  std::string fresh_eigen(const Signature& ext, const std::string& hint) {
    std::string base = hint.empty() ? "c" : hint;
    std::string name = base;
    while (ext.has_constant(name) || ext.has_predicate(name)) name += "'";
    return name;
  }

  bool spend() {
    if (budget == 0) {
      cutoff = true;
      return false;
    }
    --budget;
    return true;
  }

  bool co_prove(const CupSequent& s, CupProof& out) {
    out = CupProof{};
    out.sequent = s;
    Signature ext = s.extended(p.sig);
    switch (s.goal.kind()) {
      case FormulaKind::Forall: {
        out.rule = CupRule::AllRg;
        out.fresh = fresh_eigen(ext, s.goal.var_hint());
        CupSequent c = s;
        c.eigen.emplace_back(out.fresh, s.goal.var_type());
        c.goal = s.goal.open(Term::constant(out.fresh));
        out.children.resize(1);
        return co_prove(c, out.children[0]);
      }
      case FormulaKind::And: {
        out.rule = CupRule::AndRg;
        CupSequent l = s, r = s;
        l.goal = s.goal.left();
        r.goal = s.goal.right();
        out.children.resize(2);
        size_t m = store.mark();
        if (co_prove(l, out.children[0]) && co_prove(r, out.children[1])) return true;
        store.undo(m);
        return false;
      }
      case FormulaKind::Implies: {
        Context none;
        if (!is_coinduction_goal(cfg.logic, ext, none, s.goal.left()))
          fail(Errc::IllFormedGoal, "coinduction hypothesis is not a coinduction goal: " +
                                        s.goal.left().key());
        out.rule = CupRule::ImplRg;
        CupSequent c = s;
        c.hyps.push_back(s.goal.left());
        c.goal = s.goal.right();
        out.children.resize(1);
        return co_prove(c, out.children[0]);
      }
      case FormulaKind::Atom: {
        out.rule = CupRule::DecG;
        if (!spend()) return false;
        out.children.resize(1);
        for (const auto& cl : p.clauses) {
          size_t m = store.mark();
          out.clause = cl.name;
          CupSequent c = s;
          c.kind = SequentKind::Focused;
          c.focus = cl.to_formula();
          if (focus(c, out.children[0])) {
            ++budget;
            return true;
          }
          store.undo(m);
        }
        ++budget;
        return false;
      }
      default:
        return false;
    }
  }

  bool prove(const CupSequent& s, CupProof& out) {
    out = CupProof{};
    out.sequent = s;
    Signature ext = s.extended(p.sig);
    switch (s.goal.kind()) {
      case FormulaKind::Top:
        out.rule = CupRule::TopR;
        return true;
      case FormulaKind::And: {
        out.rule = CupRule::AndR;
        CupSequent l = s, r = s;
        l.goal = s.goal.left();
        r.goal = s.goal.right();
        out.children.resize(2);
        size_t m = store.mark();
        if (prove(l, out.children[0]) && prove(r, out.children[1])) return true;
        store.undo(m);
        return false;
      }
      case FormulaKind::Or: {
        out.children.resize(1);
        for (CupRule r : {CupRule::OrR1, CupRule::OrR2}) {
          size_t m = store.mark();
          out.rule = r;
          CupSequent c = s;
          c.goal = r == CupRule::OrR1 ? s.goal.left() : s.goal.right();
          if (prove(c, out.children[0])) return true;
          store.undo(m);
        }
        return false;
      }
      case FormulaKind::Exists: {
        out.rule = CupRule::ExistsR;
        std::string mv = store.fresh(s.goal.var_hint());
        out.witness = Term::var(mv);
        CupSequent c = s;
        c.goal = s.goal.open(out.witness);
        out.children.resize(1);
        return prove(c, out.children[0]);
      }
      case FormulaKind::Forall: {
        if (!cfg.logic.harrop) return false;
        out.rule = CupRule::AllR;
        out.fresh = fresh_eigen(ext, s.goal.var_hint());
        CupSequent c = s;
        c.eigen.emplace_back(out.fresh, s.goal.var_type());
        c.goal = s.goal.open(Term::constant(out.fresh));
        out.children.resize(1);
        return prove(c, out.children[0]);
      }
      case FormulaKind::Implies: {
        if (!cfg.logic.harrop) return false;
        Formula left = store.zonk(s.goal.left());
        Context ctx = meta_context(left);
        if (!is_definite_formula(cfg.logic, ext, ctx, left)) return false;
        out.rule = CupRule::ImplR;
        CupSequent c = s;
        c.extra.push_back(s.goal.left());
        c.goal = s.goal.right();
        out.children.resize(1);
        return prove(c, out.children[0]);
      }
      case FormulaKind::Atom: {
        out.rule = CupRule::Dec;
        if (!spend()) return false;
        out.children.resize(1);
        for (size_t i = 0; i < s.hyps.size(); ++i) {
          size_t m = store.mark();
          out.clause.clear();
          out.hyp = static_cast<int>(i);
          out.extra_idx = -1;
          CupSequent c = s;
          c.kind = SequentKind::Focused;
          c.focus = s.hyps[i];
          if (focus(c, out.children[0])) {
            ++budget;
            return true;
          }
          store.undo(m);
        }
        for (size_t i = 0; i < s.extra.size(); ++i) {
          size_t m = store.mark();
          out.clause.clear();
          out.hyp = -1;
          out.extra_idx = static_cast<int>(i);
          CupSequent c = s;
          c.kind = SequentKind::Focused;
          c.focus = s.extra[i];
          if (focus(c, out.children[0])) {
            ++budget;
            return true;
          }
          store.undo(m);
        }
        for (const auto& cl : p.clauses) {
          size_t m = store.mark();
          out.clause = cl.name;
          out.hyp = -1;
          out.extra_idx = -1;
          CupSequent c = s;
          c.kind = SequentKind::Focused;
          c.focus = cl.to_formula();
          if (focus(c, out.children[0])) {
            ++budget;
            return true;
          }
          store.undo(m);
        }
        ++budget;
        return false;
      }
      default:
        return false;
    }
  }

  bool focus(const CupSequent& s, CupProof& out) {
    out = CupProof{};
    out.sequent = s;
    Signature ext = s.extended(p.sig);
    switch (s.focus.kind()) {
      case FormulaKind::Top:
      case FormulaKind::Atom: {
        out.rule = CupRule::Init;
        if (s.focus.kind() == FormulaKind::Top) return s.goal.kind() == FormulaKind::Top;
        if (s.goal.kind() != FormulaKind::Atom) return false;
        if (s.focus.pred() != s.goal.pred()) return false;
        const auto& fa = s.focus.args();
        const auto& ga = s.goal.args();
        if (fa.size() != ga.size()) return false;
        size_t m = store.mark();
        for (size_t i = 0; i < fa.size(); ++i) {
          if (!store_unify(ext, store, fa[i], ga[i], cfg.mode, cfg.fuel)) {
            store.undo(m);
            return false;
          }
        }
        return true;
      }
      case FormulaKind::Forall: {
        out.rule = CupRule::AllL;
        std::string mv = store.fresh(s.focus.var_hint());
        out.witness = Term::var(mv);
        CupSequent c = s;
        c.focus = s.focus.open(out.witness);
        out.children.resize(1);
        return focus(c, out.children[0]);
      }
      case FormulaKind::And: {
        out.children.resize(1);
        for (CupRule r : {CupRule::AndL1, CupRule::AndL2}) {
          size_t m = store.mark();
          out.rule = r;
          CupSequent c = s;
          c.focus = r == CupRule::AndL1 ? s.focus.left() : s.focus.right();
          if (focus(c, out.children[0])) return true;
          store.undo(m);
        }
        return false;
      }
      case FormulaKind::Implies: {
        out.rule = CupRule::ImplL;
        CupSequent head = s, side = s;
        head.focus = s.focus.right();
        side.kind = SequentKind::Goal;
        side.goal = s.focus.left();
        side.focus = Formula();
        out.children.resize(2);
        size_t m = store.mark();
        if (focus(head, out.children[0]) && prove(side, out.children[1])) return true;
        store.undo(m);
        return false;
      }
      default:
        return false;
    }
  }

  // ---- final instantiation --------------------------------------------

  void collect_unsolved(const CupProof& n, std::vector<std::string>& vars) {
    auto note = [&](const std::string& v) {
      if (store.is_meta(v) && std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    };
    if (!n.witness.empty())
      for (const auto& v : store.zonk(n.witness).free_vars()) note(v);
    for (const auto& f : {n.sequent.goal, n.sequent.focus})
      if (!f.empty())
        for (const auto& v : store.zonk(f).free_vars()) note(v);
    for (const auto& c : n.children) collect_unsolved(c, vars);
  }

  std::optional<Term> default_witness() const {
    for (const auto& [name, ty] : p.sig.constants())
      if (ty.order() == 0) return Term::constant(name);
    return std::nullopt;
  }

  void zonk_tree(CupProof& n) {
    CupSequent& s = n.sequent;
    for (auto& h : s.hyps) h = store.zonk(h);
    for (auto& e : s.extra) e = store.zonk(e);
    if (!s.goal.empty()) s.goal = store.zonk(s.goal);
    if (!s.focus.empty()) s.focus = store.zonk(s.focus);
    if (!n.witness.empty()) n.witness = store.zonk(n.witness);
    for (auto& c : n.children) zonk_tree(c);
  }

  void finalize(CupProof& root) {
    std::vector<std::string> leftovers;
    collect_unsolved(root, leftovers);
    if (!leftovers.empty()) {
      auto dflt = default_witness();
      if (dflt)
        for (const auto& v : leftovers) store.bind(v, *dflt);
    }
    zonk_tree(root);
  }
};

}  // namespace

SearchOutcome search(const Program& p, const Formula& goal, const SearchConfig& cfg) {
  Context none;
  well_formed(p.sig, none, goal);
  for (const auto& cl : p.clauses) {
    if (!is_definite_formula(cfg.logic, p.sig, none, cl.to_formula()))
      fail(Errc::BadProgram,
           "clause " + cl.name + " is not a definite formula of " + cfg.logic.name());
  }

  Program ext = p;
  for (const auto& [name, f] : cfg.lemmas)
    for (const auto& cl : normalize_to_horn({{name, f}})) ext.add(cl);

  bool coinductive = is_coinduction_goal(cfg.logic, ext.sig, none, goal);
  if (!coinductive && !is_goal_formula(cfg.logic, ext.sig, none, goal))
    fail(Errc::IllFormedGoal, "not a goal formula of " + cfg.logic.name());

  SearchOutcome out;
  for (int depth = 1; depth <= cfg.max_depth; ++depth) {
    Searcher se{ext, cfg, {}, /*budget=*/depth, /*cutoff=*/false};
    CupProof root;
    bool found;
    if (coinductive) {
      root.rule = CupRule::Cofix;
      root.sequent.kind = SequentKind::CoRoot;
      root.sequent.goal = goal;
      CupSequent start;
      start.kind = SequentKind::Guarded;
      start.hyps.push_back(goal);
      start.goal = goal;
      root.children.resize(1);
      found = se.co_prove(start, root.children[0]);
    } else {
      CupSequent start;
      start.kind = SequentKind::Goal;
      start.goal = goal;
      found = se.prove(start, root);
    }
    if (found) {
      se.finalize(root);
      out.proof = std::move(root);
      return out;
    }
    out.exhausted_at = depth;
    if (!se.cutoff) break;  // search space fully explored below the ceiling
  }
  return out;
}

LemmaOutcome prove_with_lemma(const Program& p, const std::string& lemma_name,
                              const Formula& lemma, const Formula& target,
                              const SearchConfig& cfg) {
  LemmaOutcome out;
  Context none;
  if (!is_coinduction_goal(cfg.logic, p.sig, none, lemma))
    fail(Errc::IllFormedGoal, "lemma is not a coinduction goal of " + cfg.logic.name());
  out.extended = p;
  SearchOutcome first = search(p, lemma, cfg);
  if (!first.proof) return out;
  out.lemma_proof = std::move(first.proof);
  for (const auto& cl : normalize_to_horn({{lemma_name, lemma}})) out.extended.add(cl);
  SearchOutcome second = search(out.extended, target, cfg);
  if (!second.proof) return out;
  out.target_proof = std::move(second.proof);
  return out;
}

}  // namespace cup
