#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cup/kernel.hpp"
#include "cup/prover.hpp"

namespace cup {

enum class IFolRule {
  // primitive rules
  Proj,
  Conv,
  TopI,
  AndI,
  AndE1,
  AndE2,
  OrI1,
  OrI2,
  OrE,
  ImplI,
  ImplE,
  AllI,
  AllE,
  ExI,
  ExE,
  Next,
  Mon,
  FP,
  // admissible rules, checked by macro expansion
  Weak,
  MonL,
  LaterAndR,
  LaterAndL,
  LaterAllR,
  LaterAllL,
  AndLaterIntro,
  AllLaterIntro,
};

const char* ifol_rule_name(IFolRule r);
std::optional<IFolRule> parse_ifol_rule(const std::string& name);
bool ifol_rule_primitive(IFolRule r);

// Γ | Δ ⊢ φ. The context Γ lists eigenvariables, realised as signature
// extensions exactly like the CUP sequents; Δ is an ordered assumption list
// and Proj selects by position.
struct IFolSequent {
  std::vector<std::pair<std::string, SimpleType>> ctx;
  std::vector<Formula> delta;
  Formula goal;

  Signature extended(const Signature& base) const;
  bool operator==(const IFolSequent& o) const;
  bool operator!=(const IFolSequent& o) const { return !(*this == o); }
};

// Payloads: index selects the Proj assumption, witness instantiates ∀E/∃I,
// fresh (with its type for Weak) names the variable added by ∀I/∃E/Weak.
struct IFolProof {
  IFolRule rule = IFolRule::Proj;
  IFolSequent sequent;
  int index = -1;
  Term witness;
  std::string fresh;
  SimpleType fresh_type;
  std::vector<IFolProof> children;

  size_t size() const;
};

/// Structural conversion: same connective skeleton, atom arguments pairwise
/// convertible. No is definitive, Unknown propagates from the kernel.
Convertibility formula_convertible(const Signature& sig, const Formula& f,
                                   const Formula& g, int fuel = kDefaultFuel);

/// Re-derives every child sequent from its parent and the rule payload.
/// Admissible rules are validated by expanding them into primitives first;
/// Conv demands convertible = Yes, ∀E/∃I witnesses closed guarded base.
CheckResult check_ifol_proof(const Signature& sig, const IFolProof& t,
                             int fuel = kDefaultFuel);

/// One-level macro expansion of an admissible rule node into primitives with
/// the node's children grafted at the leaves. Throws RuleError on a primitive
/// node and NotDerived for ∀▷-intro, which the Next/Mon/FP fragment cannot
/// express.
IFolProof expand_derived(const Signature& sig, const IFolProof& node);

/// Full expansion: admissible nodes replaced bottom-up until none remain.
IFolProof expand_all(const Signature& sig, const IFolProof& t);

/// ▷ on every atom of a coinduction goal: the shape the coinduction
/// hypothesis assumes in iFOL▷. Implication antecedents must be atoms or
/// conjunctions of atoms (UnsupportedShape otherwise).
Formula guard_atoms(const Formula& cg);

/// Proof translation: a checked CUP proof over p becomes an iFOL▷ proof of
/// ⌜P⌝ ⊢ goal. Cofix maps to FP, the coinduction hypothesis is reshaped to
/// guard_atoms form (a single ▷∀L step when the goal is ∀x.A, a cut with an
/// explicit pushing derivation in general), clause focus becomes
/// Proj/∀E/∧E/→E against the guarded program, and plain-headed subproofs are
/// lifted to guarded positions with Next. Throws UnsupportedShape when the
/// proof leads to a seam the modality cannot close.
IFolProof translate(const Program& p, const CupProof& pi, int fuel = kDefaultFuel);

}  // namespace cup
