#include "cup/herbrand.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cup/error.hpp"
#include "cup/syntax.hpp"

namespace cup {

TruncatedTerm TruncatedTerm::bot() {
  TruncatedTerm t;
  t.bottom = true;
  return t;
}

TruncatedTerm TruncatedTerm::node(std::string head, std::vector<TruncatedTerm> args) {
  TruncatedTerm t;
  t.head = std::move(head);
  t.args = std::move(args);
  return t;
}

bool TruncatedTerm::operator==(const TruncatedTerm& o) const {
  return bottom == o.bottom && head == o.head && args == o.args;
}

bool TruncatedTerm::operator<(const TruncatedTerm& o) const {
  if (bottom != o.bottom) return bottom < o.bottom;
  if (head != o.head) return head < o.head;
  return args < o.args;
}

std::string TruncatedTerm::to_string() const {
  if (bottom) return "_|_";
  if (args.empty()) return head;
  std::string out = head + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out + ")";
}

bool TruncatedAtom::operator==(const TruncatedAtom& o) const {
  return pred == o.pred && args == o.args;
}

bool TruncatedAtom::operator<(const TruncatedAtom& o) const {
  if (pred != o.pred) return pred < o.pred;
  return args < o.args;
}

std::string TruncatedAtom::to_string() const {
  if (args.empty()) return pred;
  std::string out = pred + "(";
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ", ";
    out += args[i].to_string();
  }
  return out + ")";
}

namespace {

TruncatedTerm trunc_coterm(const Coterm& c, int d, int k, int fuel) {
  auto o = c.observe(fuel);
  if (!o || o->is_var) return TruncatedTerm::bot();
  if (o->args.empty()) return TruncatedTerm::node(o->head);
  if (d >= k) return TruncatedTerm::bot();
  std::vector<TruncatedTerm> args;
  args.reserve(o->args.size());
  for (const Coterm& a : o->args) args.push_back(trunc_coterm(a, d + 1, k, fuel));
  return TruncatedTerm::node(o->head, std::move(args));
}

TruncatedTerm trunc_cut(const TruncatedTerm& t, int d, int k) {
  if (t.bottom) return t;
  if (t.args.empty()) return t;
  if (d >= k) return TruncatedTerm::bot();
  std::vector<TruncatedTerm> args;
  args.reserve(t.args.size());
  for (const TruncatedTerm& a : t.args) args.push_back(trunc_cut(a, d + 1, k));
  return TruncatedTerm::node(t.head, std::move(args));
}

}  // namespace

TruncatedTerm truncate(const Coterm& c, int k, int fuel) {
  if (k < 1) fail(Errc::Input, "truncate: depth must be positive");
  return trunc_coterm(c, 1, k, fuel);
}

TruncatedTerm truncate(const TruncatedTerm& t, int k) {
  if (k < 1) fail(Errc::Input, "truncate: depth must be positive");
  return trunc_cut(t, 1, k);
}

bool refines(const TruncatedTerm& a, const TruncatedTerm& b) {
  if (a.bottom) return true;
  if (b.bottom) return false;
  if (a.head != b.head || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!refines(a.args[i], b.args[i])) return false;
  return true;
}

bool refines(const TruncatedAtom& a, const TruncatedAtom& b) {
  if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!refines(a.args[i], b.args[i])) return false;
  return true;
}

namespace {

void tuples(const std::vector<TruncatedTerm>& u, int n,
            const std::function<void(const std::vector<TruncatedTerm>&)>& f) {
  std::vector<TruncatedTerm> cur(static_cast<size_t>(n));
  std::function<void(int)> go = [&](int j) {
    if (j == n) {
      f(cur);
      return;
    }
    for (const TruncatedTerm& t : u) {
      cur[static_cast<size_t>(j)] = t;
      go(j + 1);
    }
  };
  go(0);
}

}  // namespace

std::vector<TruncatedTerm> universe_terms(const Signature& sig, int k) {
  if (k < 1) fail(Errc::Input, "universe_terms: depth must be positive");
  std::vector<std::pair<std::string, int>> ctors;
  bool deeper = false;  // can any ground coterm reach below depth k?
  for (const auto& [name, ty] : sig.constants())
    if (auto ar = ty.arity()) {
      ctors.emplace_back(name, *ar);
      if (*ar > 0) deeper = true;
    }

  std::vector<TruncatedTerm> cur;
  if (deeper) cur.push_back(TruncatedTerm::bot());
  for (const auto& [name, ar] : ctors)
    if (ar == 0) cur.push_back(TruncatedTerm::node(name));
  for (int d = 2; d <= k; ++d) {
    std::vector<TruncatedTerm> next;
    for (const auto& [name, ar] : ctors) {
      if (ar == 0) {
        next.push_back(TruncatedTerm::node(name));
        continue;
      }
      tuples(cur, ar, [&](const std::vector<TruncatedTerm>& args) {
        next.push_back(TruncatedTerm::node(name, args));
      });
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<TruncatedAtom> universe_atoms(const Signature& sig, int k) {
  std::vector<TruncatedTerm> u = universe_terms(sig, k);
  std::vector<TruncatedAtom> out;
  for (const auto& [name, ty] : sig.predicates()) {
    if (!ty.first_order()) continue;
    tuples(u, ty.arity(), [&](const std::vector<TruncatedTerm>& args) {
      out.push_back(TruncatedAtom{name, args});
    });
  }
  return out;
}

namespace {

using Binding = std::map<std::string, TruncatedTerm>;

// Clause atoms are first-order applicative: constructor spines over clause
// variables. Variables missing from the binding evaluate to _|_.
TruncatedTerm eval_term(const Term& t, const Binding& th) {
  switch (t.kind()) {
    case TermKind::FreeVar: {
      auto it = th.find(t.name());
      return it == th.end() ? TruncatedTerm::bot() : it->second;
    }
    case TermKind::Const:
      return TruncatedTerm::node(t.name());
    case TermKind::App: {
      std::vector<const Term*> rev;
      const Term* cur = &t;
      while (cur->kind() == TermKind::App) {
        rev.push_back(&cur->arg());
        cur = &cur->fn();
      }
      if (cur->kind() != TermKind::Const)
        fail(Errc::UnsupportedShape,
             "herbrand: clause term is not first-order applicative: " + print_term(t));
      std::vector<TruncatedTerm> args;
      args.reserve(rev.size());
      for (auto it = rev.rbegin(); it != rev.rend(); ++it) args.push_back(eval_term(**it, th));
      return TruncatedTerm::node(cur->name(), std::move(args));
    }
    default:
      fail(Errc::UnsupportedShape,
           "herbrand: clause term is not first-order applicative: " + print_term(t));
  }
}

TruncatedAtom eval_atom(const Formula& f, const Binding& th, int k) {
  if (f.kind() != FormulaKind::Atom)
    fail(Errc::UnsupportedShape, "herbrand: clause body is not atomic: " + print_formula(f));
  TruncatedAtom out;
  out.pred = f.pred();
  for (const Term& a : f.args()) out.args.push_back(trunc_cut(eval_term(a, th), 1, k));
  return out;
}

bool merge_tt(TruncatedTerm& into, const TruncatedTerm& t) {
  if (t.bottom) return true;
  if (into.bottom) {
    into = t;
    return true;
  }
  if (into.head != t.head || into.args.size() != t.args.size()) return false;
  for (size_t i = 0; i < into.args.size(); ++i)
    if (!merge_tt(into.args[i], t.args[i])) return false;
  return true;
}

// Match a clause pattern against a truncated term; _|_ matches anything and
// binds the pattern variables beneath it to _|_.
bool match_term(const Term& pat, const TruncatedTerm& tt, Binding& th) {
  switch (pat.kind()) {
    case TermKind::FreeVar: {
      auto [it, fresh] = th.try_emplace(pat.name(), TruncatedTerm::bot());
      (void)fresh;
      return merge_tt(it->second, tt);
    }
    case TermKind::Const:
      return tt.bottom || (tt.head == pat.name() && tt.args.empty());
    case TermKind::App: {
      std::vector<const Term*> rev;
      const Term* cur = &pat;
      while (cur->kind() == TermKind::App) {
        rev.push_back(&cur->arg());
        cur = &cur->fn();
      }
      if (cur->kind() != TermKind::Const)
        fail(Errc::UnsupportedShape,
             "herbrand: clause term is not first-order applicative: " + print_term(pat));
      if (tt.bottom) {
        for (const Term* a : rev)
          if (!match_term(*a, TruncatedTerm::bot(), th)) return false;
        return true;
      }
      if (tt.head != cur->name() || tt.args.size() != rev.size()) return false;
      for (size_t i = 0; i < rev.size(); ++i)
        if (!match_term(*rev[rev.size() - 1 - i], tt.args[i], th)) return false;
      return true;
    }
    default:
      fail(Errc::UnsupportedShape,
           "herbrand: clause term is not first-order applicative: " + print_term(pat));
  }
}

bool clause_match(const HornClause& c, const TruncatedAtom& e, Binding& th) {
  if (c.head.kind() != FormulaKind::Atom || c.head.pred() != e.pred) return false;
  const std::vector<Term>& hargs = c.head.args();
  if (hargs.size() != e.args.size()) return false;
  for (size_t i = 0; i < hargs.size(); ++i)
    if (!match_term(hargs[i], e.args[i], th)) return false;
  return true;
}

// One-step support: some clause instance covers e with every truncated body
// atom refining a member of i.
bool supported(const Program& p, const TruncatedAtom& e, const Interpretation& i, int k) {
  for (const HornClause& c : p.clauses) {
    Binding th;
    if (!clause_match(c, e, th)) continue;
    bool ok = true;
    for (const Formula& b : c.body) {
      TruncatedAtom bt = eval_atom(b, th, k);
      bool sup = std::any_of(i.begin(), i.end(),
                             [&](const TruncatedAtom& m) { return refines(bt, m); });
      if (!sup) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

Interpretation phi_step(const Program& p, const Interpretation& i, int k) {
  if (k < 1) fail(Errc::Input, "phi_step: depth must be positive");
  std::vector<TruncatedTerm> u = universe_terms(p.sig, k);
  Interpretation out;
  for (const HornClause& c : p.clauses) {
    int n = static_cast<int>(c.vars.size());
    if (n > 0 && u.empty()) continue;
    tuples(u, n, [&](const std::vector<TruncatedTerm>& vals) {
      Binding th;
      for (int j = 0; j < n; ++j) th[c.vars[static_cast<size_t>(j)].first] = vals[static_cast<size_t>(j)];
      for (const Formula& b : c.body) {
        TruncatedAtom bt = eval_atom(b, th, k);
        bool sup = std::any_of(i.begin(), i.end(),
                               [&](const TruncatedAtom& m) { return refines(bt, m); });
        if (!sup) return;
      }
      out.insert(eval_atom(c.head, th, k));
    });
  }
  return out;
}

Interpretation gfp_truncated(const Program& p, int k) {
  if (k < 1) fail(Errc::Input, "gfp_truncated: depth must be positive");
  std::vector<TruncatedAtom> base = universe_atoms(p.sig, k);
  Interpretation i(base.begin(), base.end());
  while (true) {
    Interpretation next = phi_step(p, i, k);
    if (next == i) return i;
    i = std::move(next);
  }
}

bool model_member(const Program& p, const Formula& atom, int k) {
  if (k < 1) fail(Errc::Input, "model_member: depth must be positive");
  if (atom.kind() != FormulaKind::Atom)
    fail(Errc::NotGround, "model query must be an atom: " + print_formula(atom));
  if (!atom.free_vars().empty())
    fail(Errc::NotGround, "model query must be ground: " + print_formula(atom));

  TruncatedAtom q;
  q.pred = atom.pred();
  for (const Term& a : atom.args()) q.args.push_back(truncate(interpret_guarded(p.sig, a), k));

  // Coinductive backward search: an atom already assumed on the current path
  // holds; otherwise it needs a clause instance whose truncated body atoms
  // hold in turn. The truncated-atom space is finite, so paths cannot grow
  // forever.
  std::function<bool(const TruncatedAtom&, std::set<TruncatedAtom>)> member =
      [&](const TruncatedAtom& a, std::set<TruncatedAtom> assumed) -> bool {
    if (!assumed.insert(a).second) return true;
    for (const HornClause& c : p.clauses) {
      Binding th;
      if (!clause_match(c, a, th)) continue;
      bool ok = true;
      for (const Formula& b : c.body) {
        if (!member(eval_atom(b, th, k), assumed)) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
    return false;
  };
  return member(q, {});
}

namespace {

Term const_to_var(const Term& t, const std::set<std::string>& names) {
  switch (t.kind()) {
    case TermKind::Const:
      return names.count(t.name()) ? Term::var(t.name()) : t;
    case TermKind::App:
      return Term::app(const_to_var(t.fn(), names), const_to_var(t.arg(), names));
    case TermKind::Lam:
      return Term::lam_raw(t.name(), t.ann(), const_to_var(t.body(), names));
    case TermKind::Fix:
      return Term::fix_raw(t.name(), t.ann(), const_to_var(t.body(), names));
    default:
      return t;
  }
}

void flatten_atoms(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::And:
      flatten_atoms(f.left(), out);
      flatten_atoms(f.right(), out);
      return;
    case FormulaKind::Atom:
      out.push_back(f);
      return;
    default:
      fail(Errc::NotHornGuarded,
           "root goal body is not a conjunction of atoms: " + print_formula(f));
  }
}

}  // namespace

Invariant extract_invariant(const Program& p, const CupProof& pi, const KleisliSubst& theta0) {
  if (pi.rule != CupRule::Cofix || pi.sequent.kind != SequentKind::CoRoot)
    fail(Errc::NotHornGuarded, "invariant extraction expects a coinductive proof root");

  Invariant inv;
  inv.theta0 = theta0;

  const CupProof* g = &pi.children.at(0);
  while (g->rule == CupRule::AllRg) {
    inv.vars.emplace_back(g->fresh, g->sequent.goal.var_type());
    g = &g->children.at(0);
  }
  std::vector<Formula> assumed_raw;
  while (g->rule == CupRule::ImplRg) {
    flatten_atoms(g->sequent.goal.left(), assumed_raw);
    g = &g->children.at(0);
  }
  if (g->rule != CupRule::DecG || g->sequent.goal.kind() != FormulaKind::Atom)
    fail(Errc::NotHornGuarded,
         "root goal is not Horn-guarded: expected forall-prefixed atomic bodies over one head");

  std::set<std::string> cnames;
  Context cctx;
  for (const auto& [name, ty] : inv.vars) {
    if (!theta0.count(name)) fail(Errc::Input, "theta0 does not close coinduction variable " + name);
    cnames.insert(name);
    cctx.push(name, ty);
  }
  auto devar = [&](const Formula& f) {
    return f.map_terms([&](const Term& t) { return const_to_var(t, cnames); });
  };
  for (const Formula& a : assumed_raw) inv.assumed.push_back(devar(a));

  std::function<void(const CupProof&)> walk = [&](const CupProof& n) {
    if ((n.sequent.kind == SequentKind::Guarded || n.sequent.kind == SequentKind::Goal) &&
        n.sequent.goal.kind() == FormulaKind::Atom) {
      Formula d = devar(n.sequent.goal);
      if (std::find(inv.proven.begin(), inv.proven.end(), d) == inv.proven.end())
        inv.proven.push_back(d);
    }
    if (n.rule == CupRule::Dec && n.hyp == 0) {
      Signature ext = n.sequent.extended(p.sig);
      KleisliSubst ag;
      size_t j = 0;
      const CupProof* c = &n.children.at(0);
      while (c->rule == CupRule::AllL) {
        if (j >= inv.vars.size())
          fail(Errc::RuleError, "hypothesis instantiation exceeds the coinduction variables");
        ag[inv.vars[j].first] = interpret_guarded(ext, const_to_var(c->witness, cnames), cctx);
        ++j;
        c = &c->children.at(0);
      }
      if (j != inv.vars.size())
        fail(Errc::RuleError, "hypothesis instantiation does not cover the coinduction variables");
      inv.agents.push_back(std::move(ag));
    }
    for (const CupProof& c : n.children) walk(c);
  };
  walk(pi);
  return inv;
}

InvariantCheck check_invariant(const Program& p, const Invariant& inv, int k, int len_bound) {
  if (k < 1) fail(Errc::Input, "check_invariant: depth must be positive");
  if (len_bound < 0) fail(Errc::Input, "check_invariant: word bound must be non-negative");

  Context cctx;
  for (const auto& [name, ty] : inv.vars) cctx.push(name, ty);

  std::vector<KleisliSubst> words{inv.theta0};
  std::vector<KleisliSubst> frontier{inv.theta0};
  for (int n = 1; n <= len_bound; ++n) {
    std::vector<KleisliSubst> next;
    for (const KleisliSubst& w : frontier)
      for (const KleisliSubst& ag : inv.agents) next.push_back(compose(ag, w));
    if (next.empty()) break;
    words.insert(words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  auto inst = [&](const Formula& f, const KleisliSubst& w) {
    TruncatedAtom t;
    t.pred = f.pred();
    for (const Term& a : f.args())
      t.args.push_back(truncate(substitute(interpret_guarded(p.sig, a, cctx), w), k));
    return t;
  };

  Interpretation all;
  std::vector<TruncatedAtom> derived;
  for (const KleisliSubst& w : words)
    for (const Formula& d : inv.proven) {
      TruncatedAtom t = inst(d, w);
      all.insert(t);
      derived.push_back(t);
    }
  for (const Formula& a : inv.assumed) all.insert(inst(a, inv.theta0));

  for (const TruncatedAtom& e : derived)
    if (!supported(p, e, all, k)) return {false, e};
  return {};
}

}  // namespace cup
