#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cup/types.hpp"

namespace cup {

enum class TermKind { BoundVar, FreeVar, Const, App, Lam, Fix };

// Immutable terms of the simply typed lambda calculus with a fix binder.
// Bound variables are de Bruijn indices; free variables and signature
// constants are named. Binders keep the surface name only as a printing hint,
// so alpha equality is plain structural equality.
class Term {
 public:
  Term() = default;  // empty handle; not a valid term

  static Term var(const std::string& name);
  static Term constant(const std::string& name);
  static Term app(const Term& fn, const Term& arg);
  static Term app(const Term& fn, const std::vector<Term>& args);
  /// Binds free occurrences of `name` in `body`.
  static Term lam(const std::string& name, const SimpleType& ann, const Term& body);
  static Term fix(const std::string& name, const SimpleType& ann, const Term& body);
  static Term bound(int index);
  /// Binder constructors over an already nameless body (no closing pass).
  static Term lam_raw(const std::string& hint, const SimpleType& ann, const Term& body);
  static Term fix_raw(const std::string& hint, const SimpleType& ann, const Term& body);

  bool empty() const { return node_ == nullptr; }
  TermKind kind() const;
  int index() const;                // BoundVar
  const std::string& name() const;  // FreeVar / Const; binder hint for Lam / Fix
  const SimpleType& ann() const;    // Lam / Fix
  const Term& fn() const;           // App
  const Term& arg() const;          // App
  const Term& body() const;         // Lam / Fix

  /// Replaces the binder variable of this Lam/Fix body with `value`
  /// (value must be locally closed). Returns the opened body.
  Term open(const Term& value) const;
  /// Opens the binder with a fresh free variable of the given name.
  Term open_var(const std::string& name) const { return open(Term::var(name)); }

  /// Binder plumbing for enclosing constructs (formula quantifiers) whose
  /// indices share this term's de Bruijn space: replace BoundVar(depth) with
  /// `value`, respectively bind free `name` as BoundVar(depth). The depth
  /// shifts under this term's own binders.
  Term open_index(int depth, const Term& value) const;
  Term close_free(const std::string& name, int depth) const;

  /// Capture-avoiding substitution of a free variable.
  Term subst(const std::string& name, const Term& value) const;
  /// Applies fn to every free variable; empty result keeps the variable.
  Term map_free(const std::function<std::optional<Term>(const std::string&)>& fn) const;

  bool has_free(const std::string& name) const;
  std::set<std::string> free_vars() const;
  bool locally_closed() const;
  bool contains_fix() const;

  /// Alpha equality (structural equality on the nameless representation).
  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }

  /// Canonical key of the nameless form; equal keys iff alpha equal.
  std::string key() const;

  /// Spine view: returns the head and pushes arguments into args (left to right).
  Term spine(std::vector<Term>* args) const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

}  // namespace cup
