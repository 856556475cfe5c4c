#include "cup/formula.hpp"

#include <sstream>

#include "cup/error.hpp"

namespace cup {

struct Formula::Node {
  FormulaKind kind;
  std::string pred;            // Atom
  std::vector<Term> args;      // Atom
  Formula left, right;         // And / Or / Implies
  Formula body;                // Forall / Exists / Later
  std::string hint;            // Forall / Exists
  SimpleType var_type;         // Forall / Exists
};

Formula Formula::make(Node&& n) {
  Formula f;
  f.node_ = std::make_shared<const Node>(std::move(n));
  return f;
}

Formula open_f(const Formula& f, int depth, const Term& value);
Formula close_f(const Formula& f, int depth, const std::string& name);

Formula open_f(const Formula& f, int depth, const Term& value) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      bool changed = false;
      for (const Term& t : f.args()) {
        args.push_back(t.open_index(depth, value));
        changed = changed || args.back() != t;
      }
      return changed ? Formula::atom(f.pred(), args) : f;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      Formula l = open_f(f.left(), depth, value);
      Formula r = open_f(f.right(), depth, value);
      if (l == f.left() && r == f.right()) return f;
      switch (f.kind()) {
        case FormulaKind::And: return Formula::conj(l, r);
        case FormulaKind::Or: return Formula::disj(l, r);
        default: return Formula::implies(l, r);
      }
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula b = open_f(f.body(), depth + 1, value);
      if (b == f.body()) return f;
      Formula::Node n;
      n.kind = f.kind();
      n.hint = f.var_hint();
      n.var_type = f.var_type();
      n.body = b;
      return Formula::make(std::move(n));
    }
    case FormulaKind::Later: {
      Formula b = open_f(f.body(), depth, value);
      return b == f.body() ? f : Formula::later(b);
    }
  }
  fail(Errc::RuleError, "open_f: bad formula");
}

Formula close_f(const Formula& f, int depth, const std::string& name) {
  switch (f.kind()) {
    case FormulaKind::Top:
      return f;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      bool changed = false;
      for (const Term& t : f.args()) {
        args.push_back(t.close_free(name, depth));
        changed = changed || args.back() != t;
      }
      return changed ? Formula::atom(f.pred(), args) : f;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies: {
      Formula l = close_f(f.left(), depth, name);
      Formula r = close_f(f.right(), depth, name);
      if (l == f.left() && r == f.right()) return f;
      switch (f.kind()) {
        case FormulaKind::And: return Formula::conj(l, r);
        case FormulaKind::Or: return Formula::disj(l, r);
        default: return Formula::implies(l, r);
      }
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula b = close_f(f.body(), depth + 1, name);
      if (b == f.body()) return f;
      Formula::Node n;
      n.kind = f.kind();
      n.hint = f.var_hint();
      n.var_type = f.var_type();
      n.body = b;
      return Formula::make(std::move(n));
    }
    case FormulaKind::Later: {
      Formula b = close_f(f.body(), depth, name);
      return b == f.body() ? f : Formula::later(b);
    }
  }
  fail(Errc::RuleError, "close_f: bad formula");
}

Formula Formula::atom(const std::string& pred, const std::vector<Term>& args) {
  Node n;
  n.kind = FormulaKind::Atom;
  n.pred = pred;
  n.args = args;
  return make(std::move(n));
}

Formula Formula::top() {
  Node n;
  n.kind = FormulaKind::Top;
  return make(std::move(n));
}

Formula Formula::conj(const Formula& l, const Formula& r) {
  Node n;
  n.kind = FormulaKind::And;
  n.left = l;
  n.right = r;
  return make(std::move(n));
}

Formula Formula::disj(const Formula& l, const Formula& r) {
  Node n;
  n.kind = FormulaKind::Or;
  n.left = l;
  n.right = r;
  return make(std::move(n));
}

Formula Formula::implies(const Formula& l, const Formula& r) {
  Node n;
  n.kind = FormulaKind::Implies;
  n.left = l;
  n.right = r;
  return make(std::move(n));
}

Formula Formula::forall(const std::string& name, const SimpleType& ty, const Formula& body) {
  Node n;
  n.kind = FormulaKind::Forall;
  n.hint = name;
  n.var_type = ty;
  n.body = close_f(body, 0, name);
  return make(std::move(n));
}

Formula Formula::exists(const std::string& name, const SimpleType& ty, const Formula& body) {
  Node n;
  n.kind = FormulaKind::Exists;
  n.hint = name;
  n.var_type = ty;
  n.body = close_f(body, 0, name);
  return make(std::move(n));
}

Formula Formula::later(const Formula& f) {
  Node n;
  n.kind = FormulaKind::Later;
  n.body = f;
  return make(std::move(n));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::pred() const { return node_->pred; }
const std::vector<Term>& Formula::args() const { return node_->args; }
const Formula& Formula::left() const { return node_->left; }
const Formula& Formula::right() const { return node_->right; }
const Formula& Formula::body() const { return node_->body; }
const std::string& Formula::var_hint() const { return node_->hint; }
const SimpleType& Formula::var_type() const { return node_->var_type; }

bool Formula::is_atom() const {
  return kind() == FormulaKind::Atom || kind() == FormulaKind::Top;
}

Formula Formula::open(const Term& value) const {
  if (kind() != FormulaKind::Forall && kind() != FormulaKind::Exists)
    fail(Errc::RuleError, "open: not a quantifier");
  return open_f(body(), 0, value);
}

Formula Formula::subst(const std::string& name, const Term& value) const {
  return map_terms([&](const Term& t) { return t.subst(name, value); });
}

Formula Formula::map_terms(const std::function<Term(const Term&)>& fn) const {
  switch (kind()) {
    case FormulaKind::Top:
      return *this;
    case FormulaKind::Atom: {
      std::vector<Term> args;
      args.reserve(this->args().size());
      bool changed = false;
      for (const Term& t : this->args()) {
        args.push_back(fn(t));
        changed = changed || args.back() != t;
      }
      return changed ? atom(pred(), args) : *this;
    }
    case FormulaKind::And: {
      Formula l = left().map_terms(fn), r = right().map_terms(fn);
      return l == left() && r == right() ? *this : conj(l, r);
    }
    case FormulaKind::Or: {
      Formula l = left().map_terms(fn), r = right().map_terms(fn);
      return l == left() && r == right() ? *this : disj(l, r);
    }
    case FormulaKind::Implies: {
      Formula l = left().map_terms(fn), r = right().map_terms(fn);
      return l == left() && r == right() ? *this : implies(l, r);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula b = body().map_terms(fn);
      if (b == body()) return *this;
      Node n;
      n.kind = kind();
      n.hint = var_hint();
      n.var_type = var_type();
      n.body = b;
      return make(std::move(n));
    }
    case FormulaKind::Later: {
      Formula b = body().map_terms(fn);
      return b == body() ? *this : later(b);
    }
  }
  fail(Errc::RuleError, "map_terms: bad formula");
}

std::set<std::string> Formula::free_vars() const {
  std::set<std::string> out;
  map_terms([&](const Term& t) {
    auto fv = t.free_vars();
    out.insert(fv.begin(), fv.end());
    return t;
  });
  return out;
}

bool Formula::has_free(const std::string& name) const {
  return free_vars().count(name) > 0;
}

bool Formula::has_later() const {
  switch (kind()) {
    case FormulaKind::Later:
      return true;
    case FormulaKind::Atom:
    case FormulaKind::Top:
      return false;
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return left().has_later() || right().has_later();
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return body().has_later();
  }
  return false;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case FormulaKind::Top:
      return true;
    case FormulaKind::Atom:
      return pred() == other.pred() && args() == other.args();
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return left() == other.left() && right() == other.right();
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return var_type() == other.var_type() && body() == other.body();
    case FormulaKind::Later:
      return body() == other.body();
  }
  return false;
}

std::string Formula::key() const {
  std::ostringstream os;
  switch (kind()) {
    case FormulaKind::Top:
      return "T";
    case FormulaKind::Atom: {
      os << "(p " << pred();
      for (const Term& t : args()) os << ' ' << t.key();
      os << ')';
      return os.str();
    }
    case FormulaKind::And:
      return "(& " + left().key() + " " + right().key() + ")";
    case FormulaKind::Or:
      return "(| " + left().key() + " " + right().key() + ")";
    case FormulaKind::Implies:
      return "(-> " + left().key() + " " + right().key() + ")";
    case FormulaKind::Forall:
      return "(all " + var_type().to_string() + " " + body().key() + ")";
    case FormulaKind::Exists:
      return "(ex " + var_type().to_string() + " " + body().key() + ")";
    case FormulaKind::Later:
      return "(> " + body().key() + ")";
  }
  return "?";
}

}  // namespace cup
