#include "cup/logic.hpp"

#include "cup/error.hpp"
#include "cup/kernel.hpp"

namespace cup {

namespace {

std::string fresh_in(const Context& ctx, const std::string& hint) {
  std::string n = hint.empty() ? "x" : hint;
  while (ctx.contains(n)) n += "'";
  return n;
}

}  // namespace

AtomClass classify_atom(const Signature& sig, const Context& ctx, const Formula& a) {
  if (a.kind() == FormulaKind::Top) return AtomClass{true, true, true};
  if (a.kind() != FormulaKind::Atom) fail(Errc::NotAnAtom, "expected an atom");

  auto pt = sig.find_predicate(a.pred());
  if (!pt) fail(Errc::UnknownPredicate, "predicate '" + a.pred() + "' not in signature");

  AtomClass c;
  c.first_order = pt->first_order();
  c.guarded = true;
  c.simple = true;
  for (const Term& t : a.args()) {
    if (t.contains_fix()) c.simple = false;
    if (!is_guarded(sig, ctx, t)) c.guarded = false;
    for (const std::string& v : t.free_vars()) {
      auto vt = ctx.find(v);
      if (!vt) fail(Errc::UnboundVariable, "variable '" + v + "' not in context");
      if (vt->order() != 0) c.first_order = false;
    }
  }
  if (c.first_order) {
    for (const Term& t : a.args())
      if (!infer_type(sig, ctx, t).is_base()) c.first_order = false;
  }
  return c;
}

void well_formed(const Signature& sig, const Context& ctx, const Formula& f,
                 bool allow_later) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return;
    case FormulaKind::Atom: {
      auto pt = sig.find_predicate(f.pred());
      if (!pt) fail(Errc::UnknownPredicate, "predicate '" + f.pred() + "' not in signature");
      if (static_cast<int>(f.args().size()) != pt->arity())
        fail(Errc::ArityMismatch, "predicate '" + f.pred() + "' expects " +
                                      std::to_string(pt->arity()) + " arguments, got " +
                                      std::to_string(f.args().size()));
      for (int i = 0; i < pt->arity(); ++i) {
        SimpleType at = infer_type(sig, ctx, f.args()[i]);
        if (at != pt->args()[i])
          fail(Errc::ArityMismatch, "argument " + std::to_string(i + 1) + " of '" +
                                        f.pred() + "' has type " + at.to_string() +
                                        ", expected " + pt->args()[i].to_string());
      }
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      well_formed(sig, ctx, f.left(), allow_later);
      well_formed(sig, ctx, f.right(), allow_later);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::string x = fresh_in(ctx, f.var_hint());
      well_formed(sig, ctx.with(x, f.var_type()), f.open_var(x), allow_later);
      return;
    }
    case FormulaKind::Later:
      if (!allow_later) fail(Errc::IllFormedGoal, "later modality not allowed here");
      well_formed(sig, ctx, f.body(), allow_later);
      return;
  }
  fail(Errc::IllFormedGoal, "ill-formed formula");
}

std::string LogicId::name() const {
  std::string n = "co";
  n += higher_order ? "ho" : "fo";
  n += harrop ? "hh" : "hc";
  if (with_fix) n += "_fix";
  return n;
}

std::optional<LogicId> LogicId::parse(const std::string& name) {
  for (const LogicId& l : all())
    if (l.name() == name) return l;
  return std::nullopt;
}

const std::vector<LogicId>& LogicId::all() {
  static const std::vector<LogicId> ls = [] {
    std::vector<LogicId> v;
    for (bool ho : {false, true})
      for (bool hh : {false, true})
        for (bool fx : {false, true}) v.push_back(LogicId{ho, hh, fx});
    return v;
  }();
  return ls;
}

bool LogicId::subsumed_by(const LogicId& other) const {
  return (!higher_order || other.higher_order) && (!harrop || other.harrop) &&
         (!with_fix || other.with_fix);
}

namespace {

bool atom_ok(const LogicId& l, const Signature& sig, const Context& ctx, const Formula& a) {
  AtomClass c = classify_atom(sig, ctx, a);
  if (!l.higher_order && !c.first_order) return false;
  return l.with_fix ? c.guarded : c.simple;
}

}  // namespace

bool is_definite_formula(const LogicId& l, const Signature& sig, const Context& ctx,
                         const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
      return atom_ok(l, sig, ctx, f);
    case FormulaKind::Implies:
      return is_goal_formula(l, sig, ctx, f.left()) &&
             is_definite_formula(l, sig, ctx, f.right());
    case FormulaKind::And:
      return is_definite_formula(l, sig, ctx, f.left()) &&
             is_definite_formula(l, sig, ctx, f.right());
    case FormulaKind::Forall: {
      std::string x = fresh_in(ctx, f.var_hint());
      return is_definite_formula(l, sig, ctx.with(x, f.var_type()), f.open_var(x));
    }
    default:
      return false;
  }
}

bool is_goal_formula(const LogicId& l, const Signature& sig, const Context& ctx,
                     const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
      return atom_ok(l, sig, ctx, f);
    case FormulaKind::And:
    case FormulaKind::Or:
      return is_goal_formula(l, sig, ctx, f.left()) && is_goal_formula(l, sig, ctx, f.right());
    case FormulaKind::Exists: {
      std::string x = fresh_in(ctx, f.var_hint());
      return is_goal_formula(l, sig, ctx.with(x, f.var_type()), f.open_var(x));
    }
    case FormulaKind::Implies:
      return l.harrop && is_definite_formula(l, sig, ctx, f.left()) &&
             is_goal_formula(l, sig, ctx, f.right());
    case FormulaKind::Forall: {
      if (!l.harrop) return false;
      std::string x = fresh_in(ctx, f.var_hint());
      return is_goal_formula(l, sig, ctx.with(x, f.var_type()), f.open_var(x));
    }
    default:
      return false;
  }
}

bool is_coinduction_goal(const LogicId& l, const Signature& sig, const Context& ctx,
                         const Formula& f) {
  return is_definite_formula(l, sig, ctx, f) && is_goal_formula(l, sig, ctx, f);
}

Formula HornClause::to_formula() const {
  Formula f = head;
  if (!body.empty()) {
    Formula g = body.back();
    for (size_t i = body.size() - 1; i-- > 0;) g = Formula::conj(body[i], g);
    f = Formula::implies(g, f);
  }
  for (size_t i = vars.size(); i-- > 0;) f = Formula::forall(vars[i].first, vars[i].second, f);
  return f;
}

void Program::add(const HornClause& c) {
  if (find(c.name)) fail(Errc::DuplicateName, "clause '" + c.name + "' already defined");
  clauses.push_back(c);
}

const HornClause* Program::find(const std::string& name) const {
  for (const HornClause& c : clauses)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

void split_conjuncts(const Formula& g, std::vector<Formula>* out) {
  if (g.kind() == FormulaKind::And) {
    split_conjuncts(g.left(), out);
    split_conjuncts(g.right(), out);
  } else {
    out->push_back(g);
  }
}

std::string fresh_var(const std::vector<std::pair<std::string, SimpleType>>& vars,
                      const std::string& hint) {
  std::string n = hint.empty() ? "x" : hint;
  auto taken = [&](const std::string& s) {
    for (const auto& [v, t] : vars)
      if (v == s) return true;
    return false;
  };
  while (taken(n)) n += "'";
  return n;
}

void norm_clause(const Formula& d, HornClause acc, std::vector<HornClause>* out) {
  switch (d.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Top:
      acc.head = d;
      out->push_back(std::move(acc));
      return;
    case FormulaKind::And:
      norm_clause(d.left(), acc, out);
      norm_clause(d.right(), std::move(acc), out);
      return;
    case FormulaKind::Forall: {
      std::string x = fresh_var(acc.vars, d.var_hint());
      acc.vars.emplace_back(x, d.var_type());
      norm_clause(d.open_var(x), std::move(acc), out);
      return;
    }
    case FormulaKind::Implies:
      split_conjuncts(d.left(), &acc.body);
      norm_clause(d.right(), std::move(acc), out);
      return;
    default:
      fail(Errc::NotDefiniteHorn, "clause '" + acc.name + "' is not a definite formula");
  }
}

}  // namespace

std::vector<HornClause> normalize_to_horn(
    const std::vector<std::pair<std::string, Formula>>& named_ds) {
  std::vector<HornClause> out;
  for (const auto& [name, d] : named_ds) {
    std::vector<HornClause> here;
    HornClause acc;
    acc.name = name;
    norm_clause(d, std::move(acc), &here);
    if (here.size() > 1)
      for (size_t i = 0; i < here.size(); ++i)
        here[i].name = name + "_" + std::to_string(i + 1);
    for (HornClause& c : here) out.push_back(std::move(c));
  }
  return out;
}

std::vector<HornClause> normalize_to_horn(const std::vector<Formula>& ds) {
  std::vector<std::pair<std::string, Formula>> named;
  for (size_t i = 0; i < ds.size(); ++i) named.emplace_back("c" + std::to_string(i), ds[i]);
  return normalize_to_horn(named);
}

namespace {

bool clause_atoms_are(const Signature& sig, const HornClause& c, bool need_simple) {
  Context ctx;
  for (const auto& [v, t] : c.vars) ctx.push(v, t);
  std::vector<Formula> atoms = c.body;
  atoms.push_back(c.head);
  for (const Formula& a : atoms) {
    if (!a.is_atom()) return false;
    AtomClass cls = classify_atom(sig, ctx, a);
    if (!cls.first_order) return false;
    if (!(need_simple ? cls.simple : cls.guarded)) return false;
  }
  return true;
}

}  // namespace

bool clause_is_horn(const Signature& sig, const HornClause& c) {
  return clause_atoms_are(sig, c, true);
}

bool clause_is_horn_guarded(const Signature& sig, const HornClause& c) {
  return clause_atoms_are(sig, c, false);
}

std::vector<Formula> guard_program(const Program& p) {
  std::vector<Formula> out;
  for (const HornClause& c : p.clauses) {
    if (!clause_is_horn_guarded(p.sig, c))
      fail(Errc::NotHornGuarded, "clause '" + c.name + "' is not first-order guarded");
    HornClause g = c;
    for (Formula& b : g.body) b = Formula::later(b);
    out.push_back(g.to_formula());
  }
  return out;
}

}  // namespace cup
