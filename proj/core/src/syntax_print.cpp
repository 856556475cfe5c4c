#include <algorithm>
#include <sstream>

#include "cup/syntax.hpp"

namespace cup {

namespace {

bool mentions(const Term& t, const std::string& name) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return false;
    case TermKind::FreeVar:
    case TermKind::Const:
      return t.name() == name;
    case TermKind::App:
      return mentions(t.fn(), name) || mentions(t.arg(), name);
    case TermKind::Lam:
    case TermKind::Fix:
      return mentions(t.body(), name);
  }
  return false;
}

bool mentions(const Formula& f, const std::string& name) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return false;
    case FormulaKind::Atom:
      for (const Term& t : f.args())
        if (mentions(t, name)) return true;
      return false;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return mentions(f.left(), name) || mentions(f.right(), name);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
    case FormulaKind::Later:
      return mentions(f.body(), name);
  }
  return false;
}

// Binder names must not capture a free variable or shadow a constant that
// the body mentions, or the printed text would reparse differently.
template <typename T>
std::string binder_name(const std::string& hint, const T& closed_body) {
  std::string n = hint.empty() ? "x" : hint;
  while (mentions(closed_body, n)) n += "'";
  return n;
}

// Term precedence: 0 top (binders bare), 1 function position, 2 argument.
std::string pt(const Term& t, int prec) {
  switch (t.kind()) {
    case TermKind::FreeVar:
    case TermKind::Const:
      return t.name();
    case TermKind::BoundVar:
      return "#" + std::to_string(t.index());
    case TermKind::App: {
      std::string s = pt(t.fn(), 1) + " " + pt(t.arg(), 2);
      return prec >= 2 ? "(" + s + ")" : s;
    }
    case TermKind::Lam:
    case TermKind::Fix: {
      std::string x = binder_name(t.name(), t.body());
      std::string s = (t.kind() == TermKind::Fix ? "fix " : "\\") + x;
      if (!t.ann().is_base()) s += " : " + print_type(t.ann());
      s += ". " + pt(t.open_var(x), 0);
      return prec >= 1 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

// Formula precedence: 0 top (quantifiers bare), 1 =>, 2 \/, 3 /\, 4 unary.
std::string pf(const Formula& f, int prec) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return "top";
    case FormulaKind::Atom: {
      std::string s = f.pred();
      for (const Term& t : f.args()) s += " " + pt(t, 2);
      return s;
    }
    case FormulaKind::Later: {
      std::string s = "|> " + pf(f.body(), 4);
      return prec > 4 ? "(" + s + ")" : s;
    }
    case FormulaKind::And: {
      std::string s = pf(f.left(), 4) + " /\\ " + pf(f.right(), 3);
      return prec > 3 ? "(" + s + ")" : s;
    }
    case FormulaKind::Or: {
      std::string s = pf(f.left(), 3) + " \\/ " + pf(f.right(), 2);
      return prec > 2 ? "(" + s + ")" : s;
    }
    case FormulaKind::Implies: {
      std::string s = pf(f.left(), 2) + " => " + pf(f.right(), 0);
      return prec > 1 ? "(" + s + ")" : s;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      bool is_all = f.kind() == FormulaKind::Forall;
      std::string s = is_all ? "forall" : "exists";
      Formula cur = f;
      std::vector<std::string> names;
      for (;;) {
        std::string x = cur.var_hint().empty() ? "x" : cur.var_hint();
        while (mentions(cur.body(), x) ||
               std::find(names.begin(), names.end(), x) != names.end())
          x += "'";
        names.push_back(x);
        if (cur.var_type().is_base())
          s += " " + x;
        else
          s += " (" + x + " : " + print_type(cur.var_type()) + ")";
        Formula body = cur.open_var(x);
        if (body.kind() == f.kind() && (body.kind() == FormulaKind::Forall) == is_all) {
          cur = body;
          continue;
        }
        s += ". " + pf(body, 0);
        break;
      }
      return prec > 0 ? "(" + s + ")" : s;
    }
  }
  return "?";
}

}  // namespace

std::string print_type(const SimpleType& t) {
  if (t.is_base()) return "i";
  std::string dom = print_type(t.dom());
  if (t.dom().is_arrow()) dom = "(" + dom + ")";
  return dom + " -> " + print_type(t.cod());
}

std::string print_prop_type(const PropType& t) {
  std::string s;
  for (const SimpleType& a : t.args()) {
    std::string d = print_type(a);
    if (a.is_arrow()) d = "(" + d + ")";
    s += d + " -> ";
  }
  return s + "o";
}

std::string print_term(const Term& t) { return pt(t, 0); }

std::string print_formula(const Formula& f) { return pf(f, 0); }

std::string print_program(const Program& p) {
  std::ostringstream os;
  for (const auto& [n, t] : p.sig.constants()) os << "const " << n << " : " << print_type(t) << ".\n";
  for (const auto& [n, t] : p.sig.predicates())
    os << "pred " << n << " : " << print_prop_type(t) << ".\n";
  for (const HornClause& c : p.clauses)
    os << "clause " << c.name << ": " << print_formula(c.to_formula()) << ".\n";
  return os.str();
}

}  // namespace cup
