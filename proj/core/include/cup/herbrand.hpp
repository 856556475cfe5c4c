#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cup/coterm.hpp"
#include "cup/logic.hpp"
#include "cup/prover.hpp"

namespace cup {

/// A coterm cut off at a finite depth: missing subtrees are _|_.
struct TruncatedTerm {
  bool bottom = false;
  std::string head;
  std::vector<TruncatedTerm> args;

  static TruncatedTerm bot();
  static TruncatedTerm node(std::string head, std::vector<TruncatedTerm> args = {});

  bool operator==(const TruncatedTerm& o) const;
  bool operator!=(const TruncatedTerm& o) const { return !(*this == o); }
  bool operator<(const TruncatedTerm& o) const;
  std::string to_string() const;
};

struct TruncatedAtom {
  std::string pred;
  std::vector<TruncatedTerm> args;

  bool operator==(const TruncatedAtom& o) const;
  bool operator!=(const TruncatedAtom& o) const { return !(*this == o); }
  bool operator<(const TruncatedAtom& o) const;
  std::string to_string() const;
};

/// A finite stage of the coinductive Herbrand model.
using Interpretation = std::set<TruncatedAtom>;

/// Cut a coterm at depth k: the root sits at depth 1, and any constructor
/// with arguments at depth k collapses to _|_ (nullary heads survive).
TruncatedTerm truncate(const Coterm& c, int k, int fuel = kDefaultFuel);
TruncatedTerm truncate(const TruncatedTerm& t, int k);

/// Refinement order: a <= b when a is b with some subtrees cut to _|_.
bool refines(const TruncatedTerm& a, const TruncatedTerm& b);
bool refines(const TruncatedAtom& a, const TruncatedAtom& b);

/// All depth-k truncations of ground coterms over the signature's
/// first-order constants (_|_ appears only at depth k).
std::vector<TruncatedTerm> universe_terms(const Signature& sig, int k);
std::vector<TruncatedAtom> universe_atoms(const Signature& sig, int k);

/// One step of the truncated consequence operator: heads of clause
/// instances (variables ranging over universe_terms) whose truncated body
/// atoms each refine some member of i. Monotone in i.
Interpretation phi_step(const Program& p, const Interpretation& i, int k);

/// Greatest fixed point of phi_step below the full depth-k universe,
/// reached by descending iteration.
Interpretation gfp_truncated(const Program& p, int k);

/// Does the ground atom's depth-k truncation refine a member of the
/// truncated-model gfp? Decided by coinductive backward search over the
/// finite space of truncated atoms. Fails with NotGround on open atoms.
bool model_member(const Program& p, const Formula& atom, int k);

/// Candidate invariant harvested from a proof: theta0 closes the
/// coinduction variables, each agent maps them one clause step forward,
/// `proven` lists the atomic goals established by the proof and `assumed`
/// the body atoms the root goal takes as hypotheses.
struct Invariant {
  std::vector<std::pair<std::string, SimpleType>> vars;
  KleisliSubst theta0;
  std::vector<KleisliSubst> agents;
  std::vector<Formula> proven;
  std::vector<Formula> assumed;
};

/// Read an invariant off a checked coinductive proof of a Horn-guarded
/// goal. Fails with NotHornGuarded when the root is not of that shape and
/// with Input when theta0 misses a coinduction variable.
Invariant extract_invariant(const Program& p, const CupProof& pi, const KleisliSubst& theta0);

struct InvariantCheck {
  bool ok = true;
  std::optional<TruncatedAtom> counterexample;
};

/// Instantiate the invariant along every agent word of length <= len_bound,
/// truncate at depth k, and verify each proven instance is supported by a
/// clause whose body atoms refine members of the enumerated set (assumed
/// instances join the set as given members).
InvariantCheck check_invariant(const Program& p, const Invariant& inv, int k = 4,
                               int len_bound = 4);

}  // namespace cup
