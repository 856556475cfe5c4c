#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cup/ifol.hpp"
#include "cup/logic.hpp"
#include "cup/prover.hpp"
#include "cup/syntax.hpp"

namespace cup {

// A serialized proof carries the logic it was searched in and any lemmas the
// program was extended with, so a checker can rebuild the exact clause set
// from the original source file plus the proof text alone.
struct ProofFile {
  LogicId logic;
  std::vector<std::pair<std::string, Formula>> lemmas;
  CupProof proof;
};

std::string print_cup_proof(const ProofFile& pf);
std::string print_ifol_proof(const IFolProof& pi);

/// Parses every `(cup-proof ...)` / `(ifol-proof ...)` form in the text.
/// Formulas are reparsed under `sig` extended with the node's eigenvariables;
/// lemma formulas under `sig` alone.
std::vector<ProofFile> parse_cup_proofs(const Signature& sig, const std::string& text);
std::vector<IFolProof> parse_ifol_proofs(const Signature& sig, const std::string& text);

}  // namespace cup
