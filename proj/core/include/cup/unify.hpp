#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cup/formula.hpp"
#include "cup/kernel.hpp"
#include "cup/signature.hpp"
#include "cup/term.hpp"

namespace cup {

enum class UnifyMode {
  Syntactic,   // Robinson with occurs-check
  Rational,    // occurs failures x ≐ C[x] become x := fix x. C[x]
  ModuloWhnf,  // head-normalize both sides before symbol-clash decisions
};

const char* unify_mode_name(UnifyMode m);

// Idempotent variable → term map; apply resolves recursively.
class Substitution {
 public:
  bool empty() const { return map_.empty(); }
  const Term* find(const std::string& v) const;
  void bind(const std::string& v, const Term& t);
  const std::map<std::string, Term>& entries() const { return map_; }

  Term apply(const Term& t) const;
  Formula apply(const Formula& f) const;

 private:
  std::map<std::string, Term> map_;
};

enum class UnifyStatus { Ok, NoUnifier, OccursCheck };

struct UnifyOutcome {
  UnifyStatus status = UnifyStatus::NoUnifier;
  Substitution subst;  // meaningful when status == Ok

  explicit operator bool() const { return status == UnifyStatus::Ok; }
};

/// First-order unification of two terms of type ι. Every free variable is
/// unifiable; constants and eigenvariables must be in sig.
UnifyOutcome unify(const Signature& sig, const Term& t1, const Term& t2, UnifyMode mode,
                   int fuel = kDefaultFuel);

/// Same predicate on both sides, arguments unified pointwise.
UnifyOutcome unify_atoms(const Signature& sig, const Formula& a, const Formula& b,
                         UnifyMode mode, int fuel = kDefaultFuel);

// Mutable binding store used by the search: metavariables are free variables
// spelled "?n", bindings undo via trail marks on backtrack.
class MetaStore {
 public:
  std::string fresh(const std::string& hint);
  bool is_meta(const std::string& name) const;
  const Term* lookup(const std::string& v) const;
  void bind(const std::string& v, const Term& t);

  size_t mark() const { return trail_.size(); }
  void undo(size_t mark);

  /// Chase bindings at the root only.
  Term resolve(Term t) const;
  /// Substitute bindings everywhere (bound metas may bind further metas).
  Term zonk(const Term& t) const;
  Formula zonk(const Formula& f) const;
  /// Metavariables of t still unbound after zonking.
  std::vector<std::string> unsolved(const Term& t) const;

 private:
  int counter_ = 0;
  std::map<std::string, Term> bindings_;
  std::vector<std::string> trail_;
};

/// Store-backed unification; on failure the store is rewound to entry state.
/// `flex` decides which free variables may be bound (default: store metas).
bool store_unify(const Signature& sig, MetaStore& store, const Term& a, const Term& b,
                 UnifyMode mode, int fuel,
                 const std::function<bool(const std::string&)>& flex = nullptr);

}  // namespace cup
