#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cup/formula.hpp"
#include "cup/signature.hpp"

namespace cup {

struct AtomClass {
  bool first_order = false;
  bool guarded = false;
  bool simple = false;  // simple implies guarded
};

/// Classification of a well-formed atom (⊤ carries every flag).
/// Throws NotAnAtom on non-atomic input.
AtomClass classify_atom(const Signature& sig, const Context& ctx, const Formula& a);

/// Typing check for formulae. Throws UnknownPredicate / ArityMismatch /
/// UnboundVariable / UnknownConstant; ▷ is rejected unless allow_later.
void well_formed(const Signature& sig, const Context& ctx, const Formula& f,
                 bool allow_later = false);

// One point of the logic cube: {fo,ho} × {hc,hh} × {plain,fix}.
struct LogicId {
  bool higher_order = false;
  bool harrop = false;
  bool with_fix = false;

  std::string name() const;
  static std::optional<LogicId> parse(const std::string& name);
  static const std::vector<LogicId>& all();

  /// Cube order: every feature of *this is also enabled in `other`.
  bool subsumed_by(const LogicId& other) const;

  bool operator==(const LogicId& o) const {
    return higher_order == o.higher_order && harrop == o.harrop && with_fix == o.with_fix;
  }
};

/// Grammar membership per the logic's table row. Atom class: simple for the
/// plain logics, guarded for the fix ones; first-order unless higher_order.
bool is_definite_formula(const LogicId& l, const Signature& sig, const Context& ctx,
                         const Formula& f);
bool is_goal_formula(const LogicId& l, const Signature& sig, const Context& ctx,
                     const Formula& f);
/// Simultaneously a D- and a G-formula: admissible as coinduction hypothesis.
bool is_coinduction_goal(const LogicId& l, const Signature& sig, const Context& ctx,
                         const Formula& f);

// ∀vars. body₁ ∧ … ∧ bodyₙ → head, stored opened: the quantified variables
// occur free in body/head under their given names.
struct HornClause {
  std::string name;
  std::vector<std::pair<std::string, SimpleType>> vars;
  std::vector<Formula> body;
  Formula head;

  Formula to_formula() const;
};

struct Program {
  Signature sig;
  std::vector<HornClause> clauses;

  void add(const HornClause& c);
  const HornClause* find(const std::string& name) const;
};

/// Reshapes first-order definite formulae into clauses: quantifiers pulled
/// out, ∧ split into separate clauses, nested implications flattened into the
/// body list. ∨/∃ inside body goals are left intact.
std::vector<HornClause> normalize_to_horn(
    const std::vector<std::pair<std::string, Formula>>& named_ds);
std::vector<HornClause> normalize_to_horn(const std::vector<Formula>& ds);

/// All atoms first-order simple (H) resp. first-order guarded (Hg).
bool clause_is_horn(const Signature& sig, const HornClause& c);
bool clause_is_horn_guarded(const Signature& sig, const HornClause& c);

/// The guarding of a program: each body atom Aᵢ becomes ▷Aᵢ; heads and facts
/// untouched. Requires every clause to be an Hg-formula.
std::vector<Formula> guard_program(const Program& p);

}  // namespace cup
