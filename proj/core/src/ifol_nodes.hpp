#pragma once

// Internal construction helpers shared by the expansion and translation
// passes. Each builder computes its conclusion from the premises, so callers
// only spell out leaves and payloads.

#include "cup/ifol.hpp"

namespace cup::ifn {

using Ctx = std::vector<std::pair<std::string, SimpleType>>;
using Delta = std::vector<Formula>;

inline IFolProof unary(IFolRule r, IFolSequent s, IFolProof kid) {
  IFolProof n;
  n.rule = r;
  n.sequent = std::move(s);
  n.children.push_back(std::move(kid));
  return n;
}

inline IFolProof proj(Ctx c, Delta d, int i) {
  IFolProof n;
  n.rule = IFolRule::Proj;
  n.sequent = {std::move(c), std::move(d), Formula()};
  n.sequent.goal = n.sequent.delta[i];
  n.index = i;
  return n;
}

inline IFolProof impl_i(IFolProof body) {
  IFolSequent s = body.sequent;
  Formula hyp = s.delta.back();
  s.delta.pop_back();
  s.goal = Formula::implies(hyp, body.sequent.goal);
  return unary(IFolRule::ImplI, std::move(s), std::move(body));
}

inline IFolProof impl_e(IFolProof maj, IFolProof mnr) {
  IFolProof n;
  n.rule = IFolRule::ImplE;
  n.sequent = maj.sequent;
  n.sequent.goal = maj.sequent.goal.right();
  n.children.push_back(std::move(maj));
  n.children.push_back(std::move(mnr));
  return n;
}

inline IFolProof and_i(IFolProof l, IFolProof r) {
  IFolProof n;
  n.rule = IFolRule::AndI;
  n.sequent = l.sequent;
  n.sequent.goal = Formula::conj(l.sequent.goal, r.sequent.goal);
  n.children.push_back(std::move(l));
  n.children.push_back(std::move(r));
  return n;
}

inline IFolProof and_e(int which, IFolProof t) {
  IFolSequent s = t.sequent;
  s.goal = which == 1 ? t.sequent.goal.left() : t.sequent.goal.right();
  return unary(which == 1 ? IFolRule::AndE1 : IFolRule::AndE2, std::move(s), std::move(t));
}

inline IFolProof next_i(IFolProof t) {
  IFolSequent s = t.sequent;
  s.goal = Formula::later(t.sequent.goal);
  return unary(IFolRule::Next, std::move(s), std::move(t));
}

inline IFolProof mon(IFolProof t) {
  Formula inner = t.sequent.goal.body();
  IFolSequent s = t.sequent;
  s.goal = Formula::implies(Formula::later(inner.left()), Formula::later(inner.right()));
  return unary(IFolRule::Mon, std::move(s), std::move(t));
}

inline IFolProof all_e(const Term& w, IFolProof t) {
  IFolSequent s = t.sequent;
  s.goal = t.sequent.goal.open(w);
  IFolProof n = unary(IFolRule::AllE, std::move(s), std::move(t));
  n.witness = w;
  return n;
}

inline IFolProof all_i(const std::string& f, const Formula& concl, IFolProof body) {
  IFolSequent s = body.sequent;
  s.ctx.pop_back();
  s.goal = concl;
  IFolProof n = unary(IFolRule::AllI, std::move(s), std::move(body));
  n.fresh = f;
  return n;
}

// Inserts an assumption at a fixed position of every sequent in the tree.
// Appended assumptions always sit behind the insertion point, so OrE/ExE
// principals and →I pops are unaffected; only Proj indices shift.
inline void thin(IFolProof& t, int pos, const Formula& x) {
  t.sequent.delta.insert(t.sequent.delta.begin() + pos, x);
  if (t.rule == IFolRule::Proj && t.index >= pos) ++t.index;
  for (auto& c : t.children) thin(c, pos, x);
}

inline std::string fresh_eigen(const Signature& ext, const std::string& hint) {
  std::string name = hint.empty() ? "c" : hint;
  while (ext.has_constant(name) || ext.has_predicate(name)) name += "'";
  return name;
}

}  // namespace cup::ifn
