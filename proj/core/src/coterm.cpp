#include "cup/coterm.hpp"

#include <functional>
#include <set>

#include "cup/error.hpp"
#include "cup/syntax.hpp"

namespace cup {

struct Coterm::Node {
  enum class Kind { Var, Lazy, GraphRef, Subst } kind = Kind::Var;
  // Var
  std::string name;
  // Lazy
  Signature sig;
  Context ctx;
  Term term;
  // GraphRef
  std::shared_ptr<const Graph> graph;
  int root = 0;
  // Subst
  Coterm inner;
  std::shared_ptr<const KleisliSubst> theta;
};

Coterm Coterm::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Var;
  n->name = name;
  return Coterm(std::move(n));
}

Coterm Coterm::lazy(const Signature& sig, const Context& ctx, const Term& t) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Lazy;
  n->sig = sig;
  n->ctx = ctx;
  n->term = t;
  return Coterm(std::move(n));
}

Coterm Coterm::graph(std::shared_ptr<const Graph> g, int root) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::GraphRef;
  n->graph = std::move(g);
  n->root = root;
  return Coterm(std::move(n));
}

bool Coterm::is_rational() const {
  if (!node_) return false;
  return node_->kind == Node::Kind::GraphRef || node_->kind == Node::Kind::Var;
}

const Coterm::Graph* Coterm::graph_view() const {
  if (node_ && node_->kind == Node::Kind::GraphRef) return node_->graph.get();
  return nullptr;
}

int Coterm::graph_root() const { return node_ ? node_->root : 0; }

std::optional<Observation> Coterm::observe(int fuel) const {
  if (!node_) return std::nullopt;
  switch (node_->kind) {
    case Node::Kind::Var:
      return Observation{true, node_->name, {}};
    case Node::Kind::Lazy: {
      auto hf = head_normal_form(node_->sig, node_->ctx, node_->term, fuel);
      if (!hf) return std::nullopt;
      Observation o;
      o.is_var = hf->is_var;
      o.head = hf->head;
      if (!hf->is_var)
        for (const Term& a : hf->args) o.args.push_back(Coterm::lazy(node_->sig, node_->ctx, a));
      return o;
    }
    case Node::Kind::GraphRef: {
      const GraphNode& gn = node_->graph->nodes.at(static_cast<size_t>(node_->root));
      Observation o;
      o.is_var = gn.is_var;
      o.head = gn.label;
      if (!gn.is_var)
        for (int s : gn.succ) o.args.push_back(Coterm::graph(node_->graph, s));
      return o;
    }
    case Node::Kind::Subst: {
      auto o = node_->inner.observe(fuel);
      if (!o) return std::nullopt;
      if (o->is_var) {
        auto it = node_->theta->find(o->head);
        if (it == node_->theta->end()) return o;
        return it->second.observe(fuel);
      }
      for (Coterm& a : o->args) a = with_subst(a, node_->theta);
      return o;
    }
  }
  return std::nullopt;
}

Coterm Coterm::with_subst(const Coterm& c, std::shared_ptr<const KleisliSubst> theta) {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::Subst;
  n->inner = c;
  n->theta = std::move(theta);
  return Coterm(std::move(n));
}

Coterm substitute(const Coterm& c, const KleisliSubst& theta) {
  if (theta.empty() || c.empty()) return c;
  return Coterm::with_subst(c, std::make_shared<const KleisliSubst>(theta));
}

KleisliSubst compose(const KleisliSubst& theta, const KleisliSubst& delta) {
  KleisliSubst out;
  for (const auto& [v, c] : theta) out.emplace(v, substitute(c, delta));
  return out;
}

Coterm interpret_guarded(const Signature& sig, const Term& m, const Context& ctx) {
  if (!is_first_order_guarded(sig, ctx, m))
    fail(Errc::NotGuarded, "interpret: term is not first-order guarded: " + print_term(m));

  // Eagerly explore head normal forms, reusing nodes whenever a subterm
  // recurs alpha-equal; a fix whose unfolding cycles back produces a
  // finite graph with a back edge. Irregular coterms blow the node budget
  // and fall back to the lazy representation.
  constexpr int kNodeBudget = 256;
  Coterm::Graph g;
  std::map<std::string, int> seen;
  bool give_up = false;

  std::function<int(const Term&)> go = [&](const Term& t) -> int {
    std::string key = t.key();
    if (auto it = seen.find(key); it != seen.end()) return it->second;
    if (static_cast<int>(g.nodes.size()) >= kNodeBudget) {
      give_up = true;
      return 0;
    }
    auto hf = head_normal_form(sig, ctx, t);
    if (!hf) {
      give_up = true;
      return 0;
    }
    int id = static_cast<int>(g.nodes.size());
    g.nodes.emplace_back();
    seen.emplace(std::move(key), id);
    g.nodes[static_cast<size_t>(id)].is_var = hf->is_var;
    g.nodes[static_cast<size_t>(id)].label = hf->head;
    if (!hf->is_var)
      for (const Term& a : hf->args) {
        int c = go(a);
        if (give_up) return 0;
        g.nodes[static_cast<size_t>(id)].succ.push_back(c);
      }
    return id;
  };

  int root = go(m);
  if (give_up) return Coterm::lazy(sig, ctx, m);
  return Coterm::graph(std::make_shared<const Coterm::Graph>(std::move(g)), root);
}

bool coterm_equal(const Coterm& a, const Coterm& b, int k, int fuel) {
  if (k < 0) return true;
  auto oa = a.observe(fuel);
  auto ob = b.observe(fuel);
  if (!oa || !ob) return false;
  if (oa->is_var != ob->is_var) return false;
  if (oa->head != ob->head || oa->args.size() != ob->args.size()) return false;
  for (size_t i = 0; i < oa->args.size(); ++i)
    if (!coterm_equal(oa->args[i], ob->args[i], k - 1, fuel)) return false;
  return true;
}

bool rational_equal(const Coterm& a, const Coterm& b) {
  // Both sides must expose finite graphs; bisimilarity is then decidable by
  // exploring the product.
  struct Side {
    const Coterm::Graph* g = nullptr;
    int root = 0;
    Coterm::Graph own;  // storage for a synthesised variable node
  };
  auto side = [](const Coterm& c) -> Side {
    Side s;
    if (const Coterm::Graph* g = c.graph_view()) {
      s.g = g;
      s.root = c.graph_root();
      return s;
    }
    auto o = c.observe();
    if (c.is_rational() && o && o->is_var) {
      s.own.nodes.push_back({true, o->head, {}});
      s.g = &s.own;
      s.root = 0;
      return s;
    }
    fail(Errc::Input, "rational_equal: coterm is not in rational (graph) form");
  };
  Side sa = side(a);
  Side sb = side(b);

  std::set<std::pair<int, int>> visited;
  std::vector<std::pair<int, int>> work{{sa.root, sb.root}};
  while (!work.empty()) {
    auto [i, j] = work.back();
    work.pop_back();
    if (!visited.insert({i, j}).second) continue;
    const Coterm::GraphNode& na = sa.g->nodes.at(static_cast<size_t>(i));
    const Coterm::GraphNode& nb = sb.g->nodes.at(static_cast<size_t>(j));
    if (na.is_var != nb.is_var || na.label != nb.label) return false;
    if (na.succ.size() != nb.succ.size()) return false;
    for (size_t x = 0; x < na.succ.size(); ++x) work.push_back({na.succ[x], nb.succ[x]});
  }
  return true;
}

}  // namespace cup
