#pragma once

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "cup/term.hpp"

namespace cup {

enum class FormulaKind { Atom, Top, And, Or, Implies, Forall, Exists, Later };

// First-order formulae over atoms p M₁…Mₙ, with an optional later modality.
// Quantifiers bind term variables; their indices live in the same de Bruijn
// space as the terms' own binders, so a quantified variable occurring under a
// λ inside an atom argument carries the appropriately shifted index.
class Formula {
 public:
  Formula() = default;  // empty handle; not a valid formula

  static Formula atom(const std::string& pred, const std::vector<Term>& args);
  static Formula top();
  static Formula conj(const Formula& l, const Formula& r);
  static Formula disj(const Formula& l, const Formula& r);
  static Formula implies(const Formula& l, const Formula& r);
  /// Binds free occurrences of `name` in `body`.
  static Formula forall(const std::string& name, const SimpleType& ty, const Formula& body);
  static Formula exists(const std::string& name, const SimpleType& ty, const Formula& body);
  static Formula later(const Formula& f);

  bool empty() const { return node_ == nullptr; }
  FormulaKind kind() const;
  const std::string& pred() const;           // Atom
  const std::vector<Term>& args() const;     // Atom
  const Formula& left() const;               // And / Or / Implies
  const Formula& right() const;              // And / Or / Implies
  const Formula& body() const;               // Forall / Exists / Later
  const std::string& var_hint() const;       // Forall / Exists
  const SimpleType& var_type() const;        // Forall / Exists

  bool is_atom() const;  // Atom or Top

  /// Replaces this quantifier's variable with `value` (locally closed).
  Formula open(const Term& value) const;
  Formula open_var(const std::string& name) const { return open(Term::var(name)); }

  Formula subst(const std::string& name, const Term& value) const;
  /// Rewrites every term in every atom.
  Formula map_terms(const std::function<Term(const Term&)>& fn) const;

  std::set<std::string> free_vars() const;
  bool has_free(const std::string& name) const;
  bool has_later() const;

  /// Alpha equality.
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  std::string key() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;

  static Formula make(Node&& n);
  friend Formula open_f(const Formula&, int, const Term&);
  friend Formula close_f(const Formula&, int, const std::string&);
};

}  // namespace cup
