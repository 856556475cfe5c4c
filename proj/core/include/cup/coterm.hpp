#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cup/kernel.hpp"
#include "cup/signature.hpp"
#include "cup/term.hpp"

namespace cup {

class Coterm;

/// One layer of a coterm: a variable leaf, or a constructor applied to
/// coterm arguments.
struct Observation {
  bool is_var = false;
  std::string head;
  std::vector<Coterm> args;
};

/// An element of the coterm algebra over first-order constructors.
///
/// A coterm is productive but possibly infinite, so it is represented by
/// its observations: `observe` exposes one constructor layer on demand.
/// Rational coterms (finitely many distinct subtrees) are backed by an
/// explicit graph; irrational ones stay as lazy guarded terms.
class Coterm {
 public:
  struct GraphNode {
    bool is_var = false;
    std::string label;  // constructor or variable name
    std::vector<int> succ;
  };
  struct Graph {
    std::vector<GraphNode> nodes;
  };

  Coterm() = default;

  static Coterm var(const std::string& name);
  /// Lazy coterm: the head normal forms of a guarded term, computed on demand.
  static Coterm lazy(const Signature& sig, const Context& ctx, const Term& t);
  static Coterm graph(std::shared_ptr<const Graph> g, int root);

  bool empty() const { return node_ == nullptr; }
  /// Backed by an explicit finite graph (variable leaves count).
  bool is_rational() const;

  /// Expose one constructor layer. Fails (nullopt) when head normalisation
  /// runs out of fuel or the underlying term is stuck.
  std::optional<Observation> observe(int fuel = kDefaultFuel) const;

  const Graph* graph_view() const;  // nullptr unless graph-backed
  int graph_root() const;

 private:
  friend Coterm substitute(const Coterm&, const std::map<std::string, Coterm>&);
  struct Node;
  explicit Coterm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Coterm with_subst(const Coterm& c,
                           std::shared_ptr<const std::map<std::string, Coterm>> theta);
  std::shared_ptr<const Node> node_;
};

/// Total assignment of coterms to a finite set of variables; the Kleisli
/// arrows of the coterm monad.
using KleisliSubst = std::map<std::string, Coterm>;

/// Interpret a guarded first-order term as a coterm, unfolding fix.
/// Detects rational results (a fix body recurring on an alpha-equal term)
/// and ties them into an explicit graph; irregular coterms stay lazy.
/// Free variables listed in `ctx` become variable leaves.
/// Fails with NotGuarded when the term is outside the guarded fragment.
Coterm interpret_guarded(const Signature& sig, const Term& m, const Context& ctx = Context{});

/// Compare the observations of every node at depth <= k, the root sitting
/// at depth 0 (negative k compares nothing).
bool coterm_equal(const Coterm& a, const Coterm& b, int k, int fuel = kDefaultFuel);

/// Decide bisimilarity of two rational coterms by product exploration.
/// Fails with Input when either side is not graph-backed.
bool rational_equal(const Coterm& a, const Coterm& b);

/// Capture-free substitution of coterms for variable leaves, performed
/// lazily under observation.
Coterm substitute(const Coterm& c, const KleisliSubst& theta);

/// Kleisli composition: compose(theta, delta)(v) = theta(v)[delta], so
/// substitute(t, compose(theta, delta)) == substitute(substitute(t, theta), delta).
KleisliSubst compose(const KleisliSubst& theta, const KleisliSubst& delta);

}  // namespace cup
