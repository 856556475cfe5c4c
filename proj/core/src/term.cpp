#include "cup/term.hpp"

#include <sstream>

#include "cup/error.hpp"

namespace cup {

struct Term::Node {
  TermKind kind;
  int index = 0;         // BoundVar
  std::string name;      // FreeVar / Const / binder hint
  SimpleType ann;        // Lam / Fix
  Term fn, arg;          // App
  Term body;             // Lam / Fix
};

namespace {

// Replaces BoundVar(depth) with value. value is locally closed, so no shift.
Term open_at(const Term& t, int depth, const Term& value) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t.index() == depth ? value : t;
    case TermKind::FreeVar:
    case TermKind::Const:
      return t;
    case TermKind::App: {
      Term fn = open_at(t.fn(), depth, value);
      Term arg = open_at(t.arg(), depth, value);
      if (fn == t.fn() && arg == t.arg()) return t;
      return Term::app(fn, arg);
    }
    case TermKind::Lam: {
      Term body = open_at(t.body(), depth + 1, value);
      if (body == t.body()) return t;
      return Term::lam_raw(t.name(), t.ann(), body);
    }
    case TermKind::Fix: {
      Term body = open_at(t.body(), depth + 1, value);
      if (body == t.body()) return t;
      return Term::fix_raw(t.name(), t.ann(), body);
    }
  }
  fail(Errc::RuleError, "open_at: bad term");
}

// Replaces the free variable `name` with BoundVar(depth).
Term close_at(const Term& t, int depth, const std::string& name) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t;
    case TermKind::FreeVar:
      return t.name() == name ? Term::bound(depth) : t;
    case TermKind::Const:
      return t;
    case TermKind::App: {
      Term fn = close_at(t.fn(), depth, name);
      Term arg = close_at(t.arg(), depth, name);
      if (fn == t.fn() && arg == t.arg()) return t;
      return Term::app(fn, arg);
    }
    case TermKind::Lam: {
      Term body = close_at(t.body(), depth + 1, name);
      if (body == t.body()) return t;
      return Term::lam_raw(t.name(), t.ann(), body);
    }
    case TermKind::Fix: {
      Term body = close_at(t.body(), depth + 1, name);
      if (body == t.body()) return t;
      return Term::fix_raw(t.name(), t.ann(), body);
    }
  }
  fail(Errc::RuleError, "close_at: bad term");
}

bool closed_at(const Term& t, int depth) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      return t.index() < depth;
    case TermKind::FreeVar:
    case TermKind::Const:
      return true;
    case TermKind::App:
      return closed_at(t.fn(), depth) && closed_at(t.arg(), depth);
    case TermKind::Lam:
    case TermKind::Fix:
      return closed_at(t.body(), depth + 1);
  }
  return false;
}

void collect_free(const Term& t, std::set<std::string>* out) {
  switch (t.kind()) {
    case TermKind::BoundVar:
    case TermKind::Const:
      return;
    case TermKind::FreeVar:
      out->insert(t.name());
      return;
    case TermKind::App:
      collect_free(t.fn(), out);
      collect_free(t.arg(), out);
      return;
    case TermKind::Lam:
    case TermKind::Fix:
      collect_free(t.body(), out);
      return;
  }
}

void key_rec(const Term& t, std::ostringstream& os) {
  switch (t.kind()) {
    case TermKind::BoundVar:
      os << '#' << t.index();
      return;
    case TermKind::FreeVar:
      os << 'v' << t.name().size() << ':' << t.name();
      return;
    case TermKind::Const:
      os << 'c' << t.name().size() << ':' << t.name();
      return;
    case TermKind::App:
      os << "(a ";
      key_rec(t.fn(), os);
      os << ' ';
      key_rec(t.arg(), os);
      os << ')';
      return;
    case TermKind::Lam:
      os << "(l " << t.ann().to_string() << ' ';
      key_rec(t.body(), os);
      os << ')';
      return;
    case TermKind::Fix:
      os << "(f " << t.ann().to_string() << ' ';
      key_rec(t.body(), os);
      os << ')';
      return;
  }
}

}  // namespace

Term Term::var(const std::string& name) {
  Node n;
  n.kind = TermKind::FreeVar;
  n.name = name;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::constant(const std::string& name) {
  Node n;
  n.kind = TermKind::Const;
  n.name = name;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::app(const Term& fn, const Term& arg) {
  Node n;
  n.kind = TermKind::App;
  n.fn = fn;
  n.arg = arg;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::app(const Term& fn, const std::vector<Term>& args) {
  Term t = fn;
  for (const Term& a : args) t = app(t, a);
  return t;
}

Term Term::lam(const std::string& name, const SimpleType& ann, const Term& body) {
  return lam_raw(name, ann, close_at(body, 0, name));
}

Term Term::fix(const std::string& name, const SimpleType& ann, const Term& body) {
  return fix_raw(name, ann, close_at(body, 0, name));
}

Term Term::bound(int index) {
  Node n;
  n.kind = TermKind::BoundVar;
  n.index = index;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::lam_raw(const std::string& hint, const SimpleType& ann, const Term& body) {
  Node n;
  n.kind = TermKind::Lam;
  n.name = hint;
  n.ann = ann;
  n.body = body;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

Term Term::fix_raw(const std::string& hint, const SimpleType& ann, const Term& body) {
  Node n;
  n.kind = TermKind::Fix;
  n.name = hint;
  n.ann = ann;
  n.body = body;
  Term t;
  t.node_ = std::make_shared<const Node>(std::move(n));
  return t;
}

TermKind Term::kind() const { return node_->kind; }
int Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const SimpleType& Term::ann() const { return node_->ann; }
const Term& Term::fn() const { return node_->fn; }
const Term& Term::arg() const { return node_->arg; }
const Term& Term::body() const { return node_->body; }

Term Term::open(const Term& value) const {
  if (kind() != TermKind::Lam && kind() != TermKind::Fix)
    fail(Errc::RuleError, "open: not a binder");
  return open_at(body(), 0, value);
}

Term Term::open_index(int depth, const Term& value) const {
  return open_at(*this, depth, value);
}

Term Term::close_free(const std::string& name, int depth) const {
  return close_at(*this, depth, name);
}

Term Term::subst(const std::string& name, const Term& value) const {
  return map_free([&](const std::string& v) -> std::optional<Term> {
    if (v == name) return value;
    return std::nullopt;
  });
}

Term Term::map_free(const std::function<std::optional<Term>(const std::string&)>& fn) const {
  switch (kind()) {
    case TermKind::BoundVar:
    case TermKind::Const:
      return *this;
    case TermKind::FreeVar: {
      std::optional<Term> r = fn(name());
      return r ? *r : *this;
    }
    case TermKind::App: {
      Term f = this->fn().map_free(fn);
      Term a = arg().map_free(fn);
      if (f == this->fn() && a == arg()) return *this;
      return app(f, a);
    }
    case TermKind::Lam: {
      Term b = body().map_free(fn);
      if (b == body()) return *this;
      return lam_raw(name(), ann(), b);
    }
    case TermKind::Fix: {
      Term b = body().map_free(fn);
      if (b == body()) return *this;
      return fix_raw(name(), ann(), b);
    }
  }
  fail(Errc::RuleError, "map_free: bad term");
}

bool Term::has_free(const std::string& name) const {
  switch (kind()) {
    case TermKind::BoundVar:
    case TermKind::Const:
      return false;
    case TermKind::FreeVar:
      return this->name() == name;
    case TermKind::App:
      return fn().has_free(name) || arg().has_free(name);
    case TermKind::Lam:
    case TermKind::Fix:
      return body().has_free(name);
  }
  return false;
}

std::set<std::string> Term::free_vars() const {
  std::set<std::string> out;
  collect_free(*this, &out);
  return out;
}

bool Term::locally_closed() const { return closed_at(*this, 0); }

bool Term::contains_fix() const {
  switch (kind()) {
    case TermKind::BoundVar:
    case TermKind::FreeVar:
    case TermKind::Const:
      return false;
    case TermKind::App:
      return fn().contains_fix() || arg().contains_fix();
    case TermKind::Lam:
      return body().contains_fix();
    case TermKind::Fix:
      return true;
  }
  return false;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case TermKind::BoundVar:
      return index() == other.index();
    case TermKind::FreeVar:
    case TermKind::Const:
      return name() == other.name();
    case TermKind::App:
      return fn() == other.fn() && arg() == other.arg();
    case TermKind::Lam:
    case TermKind::Fix:
      return ann() == other.ann() && body() == other.body();
  }
  return false;
}

std::string Term::key() const {
  std::ostringstream os;
  key_rec(*this, os);
  return os.str();
}

Term Term::spine(std::vector<Term>* args) const {
  if (kind() == TermKind::App) {
    Term head = fn().spine(args);
    args->push_back(arg());
    return head;
  }
  return *this;
}

}  // namespace cup
