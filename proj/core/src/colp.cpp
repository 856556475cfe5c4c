#include <algorithm>
#include <map>
#include <set>

#include "cup/error.hpp"
#include "cup/kernel.hpp"
#include "cup/prover.hpp"

namespace cup {

namespace {

// Minimal fix-term presentation of a rational tree: unfold the term graph
// into states, merge bisimilar ones, rebuild with binders at the back-edges.
struct RationalGraph {
  const Signature& sig;
  int fuel;
  std::vector<std::string> label;
  std::vector<std::vector<int>> succ;
  std::map<std::string, int> index;
  bool bailed = false;

  int explore(const Term& t) {
    auto it = index.find(t.key());
    if (it != index.end()) return it->second;
    int id = static_cast<int>(label.size());
    index.emplace(t.key(), id);
    label.emplace_back();
    succ.emplace_back();
    auto w = whnf(sig, t, fuel);
    if (!w) {
      bailed = true;
      return id;
    }
    std::vector<Term> args;
    Term head = w->spine(&args);
    if (head.kind() != TermKind::Const && head.kind() != TermKind::FreeVar) {
      bailed = true;
      return id;
    }
    if (head.kind() == TermKind::FreeVar && !args.empty()) {
      bailed = true;
      return id;
    }
    label[id] = head.name();
    for (const auto& a : args) {
      int s = explore(a);
      if (bailed) return id;
      succ[id].push_back(s);
    }
    return id;
  }
};

Term rebuild(const RationalGraph& g, const std::vector<int>& cls, int root,
             const std::string& hint, const Signature& sig) {
  int classes = 1 + *std::max_element(cls.begin(), cls.end());
  std::vector<int> repr(classes, -1);
  for (size_t s = 0; s < cls.size(); ++s)
    if (repr[cls[s]] < 0) repr[cls[s]] = static_cast<int>(s);

  std::vector<std::string> binder(classes);
  std::string next = hint.empty() ? "x" : hint;
  for (int c = 0; c < classes; ++c) {
    while (sig.has_constant(next) || sig.has_predicate(next)) next += "'";
    binder[c] = next;
    next += "'";
  }

  std::vector<bool> on_stack(classes, false), used(classes, false);
  auto build = [&](auto&& self, int c) -> Term {
    if (on_stack[c]) {
      used[c] = true;
      return Term::var(binder[c]);
    }
    on_stack[c] = true;
    int s = repr[c];
    Term out = sig.has_constant(g.label[s]) ? Term::constant(g.label[s])
                                            : Term::var(g.label[s]);
    for (int nxt : g.succ[s]) out = Term::app(out, self(self, cls[nxt]));
    on_stack[c] = false;
    if (used[c]) return Term::fix(binder[c], SimpleType(), out);
    return out;
  };
  return build(build, cls[root]);
}

Term canonical_rational(const Signature& sig, const Term& t, const std::string& hint,
                        int fuel) {
  RationalGraph g{sig, fuel, {}, {}, {}, false};
  int root = g.explore(t);
  if (g.bailed) return t;

  size_t n = g.label.size();
  std::vector<int> cls(n);
  {
    std::map<std::pair<std::string, size_t>, int> groups;
    for (size_t s = 0; s < n; ++s) {
      auto key = std::make_pair(g.label[s], g.succ[s].size());
      auto [it, fresh] = groups.emplace(key, static_cast<int>(groups.size()));
      (void)fresh;
      cls[s] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> groups;
    std::vector<int> next(n);
    for (size_t s = 0; s < n; ++s) {
      std::vector<int> sig_key{cls[s]};
      for (int nx : g.succ[s]) sig_key.push_back(cls[nx]);
      auto [it, fresh] = groups.emplace(std::move(sig_key), static_cast<int>(groups.size()));
      (void)fresh;
      next[s] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  return rebuild(g, cls, root, hint, sig);
}

struct ColpGoal {
  Formula atom;
  std::vector<Formula> ancestors;
};

struct ColpEngine {
  const Program& p;
  MetaStore store;
  std::function<bool(const std::string&)> flex;
  int steps_left;
  int steps_used = 0;

  bool unify_with(const Formula& a, const Formula& b) {
    if (a.kind() != FormulaKind::Atom || b.kind() != FormulaKind::Atom) return false;
    if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
    size_t m = store.mark();
    for (size_t i = 0; i < a.args().size(); ++i) {
      if (!store_unify(p.sig, store, a.args()[i], b.args()[i], UnifyMode::Rational,
                       kDefaultFuel, flex)) {
        store.undo(m);
        return false;
      }
    }
    return true;
  }

  bool solve(std::vector<ColpGoal> goals) {
    if (goals.empty()) return true;
    ColpGoal g = std::move(goals.back());
    goals.pop_back();
    for (const auto& anc : g.ancestors) {
      size_t m = store.mark();
      if (unify_with(anc, g.atom)) {
        if (solve(goals)) return true;
        store.undo(m);
      }
    }
    for (const auto& cl : p.clauses) {
      if (steps_left == 0) return false;
      Substitution rename;
      for (const auto& [v, ty] : cl.vars) {
        (void)ty;
        rename.bind(v, Term::var(store.fresh(v)));
      }
      size_t m = store.mark();
      if (!unify_with(rename.apply(cl.head), g.atom)) continue;
      --steps_left;
      ++steps_used;
      std::vector<ColpGoal> rest = goals;
      std::vector<Formula> chain = g.ancestors;
      chain.push_back(g.atom);
      for (auto it = cl.body.rbegin(); it != cl.body.rend(); ++it)
        rest.push_back(ColpGoal{rename.apply(*it), chain});
      if (solve(rest)) return true;
      store.undo(m);
    }
    return false;
  }
};

}  // namespace

ColpAnswer colp_solve(const Program& p, const Formula& query, int bound) {
  if (query.kind() != FormulaKind::Atom)
    fail(Errc::IllFormedGoal, "colp query must be an atom");
  for (const auto& cl : p.clauses)
    if (!clause_is_horn(p.sig, cl))
      fail(Errc::BadProgram, "clause " + cl.name + " is not a first-order Horn clause");
  {
    Context qctx;
    for (const auto& v : query.free_vars()) qctx.push(v, SimpleType());
    AtomClass c = classify_atom(p.sig, qctx, query);
    if (!c.first_order) fail(Errc::IllFormedGoal, "colp query must be first-order");
  }

  ColpAnswer ans;
  for (const auto& arg : query.args())
    for (const auto& v : arg.free_vars())
      if (std::find(ans.query_vars.begin(), ans.query_vars.end(), v) == ans.query_vars.end())
        ans.query_vars.push_back(v);

  std::set<std::string> qset(ans.query_vars.begin(), ans.query_vars.end());
  ColpEngine eng{p,
                 {},
                 [qset](const std::string& v) {
                   return (!v.empty() && v[0] == '?') || qset.count(v) > 0;
                 },
                 bound};
  if (!eng.solve({ColpGoal{query, {}}})) return ans;

  ans.success = true;
  ans.steps = eng.steps_used;
  for (const auto& v : ans.query_vars) {
    Term t = eng.store.zonk(Term::var(v));
    if (t.kind() == TermKind::FreeVar && t.name() == v) continue;  // unconstrained
    ans.subst.bind(v, canonical_rational(p.sig, t, v, kDefaultFuel));
  }
  return ans;
}

}  // namespace cup
