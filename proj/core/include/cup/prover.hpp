#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cup/logic.hpp"
#include "cup/unify.hpp"

namespace cup {

enum class CupRule {
  // coinductive layer
  Cofix,
  DecG,
  AllRg,
  AndRg,
  ImplRg,
  // uniform goal phase
  TopR,
  AndR,
  OrR1,
  OrR2,
  ExistsR,
  AllR,
  ImplR,
  Dec,
  // focused phase
  Init,
  ImplL,
  AndL1,
  AndL2,
  AllL,
};

const char* cup_rule_name(CupRule r);
std::optional<CupRule> parse_cup_rule(const std::string& name);

enum class SequentKind {
  CoRoot,   // ⊢co φ
  Guarded,  // Σ;P;Δ ⊢ ⟨φ⟩
  Goal,     // Σ;P;Δ ⊢ G
  Focused,  // Σ;P;Δ --D→ A
};

const char* sequent_kind_name(SequentKind k);

// P and the base signature live in the ambient Program; the sequent carries
// only what the rules change: eigenvariable extensions of Σ, the clauses
// added to P by →R, and the hypotheses Δ.
struct CupSequent {
  SequentKind kind = SequentKind::Goal;
  std::vector<std::pair<std::string, SimpleType>> eigen;
  std::vector<Formula> extra;  // →R additions to P, in introduction order
  std::vector<Formula> hyps;   // Δ
  Formula goal;
  Formula focus;  // Focused only

  Signature extended(const Signature& base) const;
  bool operator==(const CupSequent& o) const;
};

// Payload fields are rule-specific: clause/hyp/extra identify the Dec(G)
// focus, witness instantiates ∀L/∃R, fresh names the ∀R(g) eigenvariable.
struct CupProof {
  CupRule rule = CupRule::Init;
  CupSequent sequent;
  std::string clause;   // Dec/DecG: program clause name
  int hyp = -1;         // Dec: index into Δ
  int extra_idx = -1;   // Dec: index into extra
  Term witness;         // ∀L/∃R
  std::string fresh;    // ∀R/∀Rg
  std::vector<CupProof> children;

  size_t size() const;
};

struct CheckResult {
  bool ok = true;
  std::string path;  // dotted child indices from the root, "" = root
  std::string reason;

  static CheckResult failure(std::string path, std::string reason);
};

/// Re-derives every child sequent from its parent plus the rule payload and
/// compares against the stored tree; all side conditions enforced (DecG picks
/// from P only, Init needs convertible = Yes, eigenvariables fresh, witnesses
/// closed guarded-base, →Rg hypotheses coinduction goals, Cofix at the root
/// and nowhere else).
CheckResult check_proof(const Program& p, const LogicId& logic, const CupProof& pi);

struct SearchConfig {
  LogicId logic;
  int max_depth = 64;       // iterative-deepening ceiling on Dec/DecG count
  int fuel = kDefaultFuel;  // conversion/whnf budget per kernel call
  UnifyMode mode = UnifyMode::Syntactic;
  std::vector<std::pair<std::string, Formula>> lemmas;  // admitted into P

  static SearchConfig for_logic(const LogicId& l);
};

struct SearchOutcome {
  std::optional<CupProof> proof;
  int exhausted_at = 0;  // depth ceiling that was exhausted when !proof
};

/// Goal-directed search. Coinduction goals get the Cofix discipline; other
/// goal formulae of the logic are proved by a plain uniform derivation.
SearchOutcome search(const Program& p, const Formula& goal, const SearchConfig& cfg);

struct LemmaOutcome {
  std::optional<CupProof> lemma_proof;
  std::optional<CupProof> target_proof;
  Program extended;  // p plus the lemma clause (valid when lemma_proof holds)

  bool ok() const { return lemma_proof.has_value() && target_proof.has_value(); }
};

/// Two-phase workflow: prove the lemma, admit it as a program clause, prove
/// the target from the extension.
LemmaOutcome prove_with_lemma(const Program& p, const std::string& lemma_name,
                              const Formula& lemma, const Formula& target,
                              const SearchConfig& cfg);

// --- CoLP comparison mode -------------------------------------------------

struct ColpAnswer {
  bool success = false;
  int steps = 0;                         // resolution steps spent
  std::vector<std::string> query_vars;   // printing order
  Substitution subst;                    // restricted to query_vars, canonical
};

/// Coinductive SLD: ancestor-only loop detection with rational unification;
/// plain SLD steps otherwise; fails at the bound. Answers are canonicalized
/// by minimizing each bound rational tree and rebinding it as a fix-term
/// named after the query variable.
ColpAnswer colp_solve(const Program& p, const Formula& query, int bound = 64);

}  // namespace cup
