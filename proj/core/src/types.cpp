#include "cup/types.hpp"

#include <algorithm>

#include "cup/error.hpp"

namespace cup {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::Parse: return "parse-error";
    case Errc::UnboundVariable: return "unbound-variable";
    case Errc::UnknownConstant: return "unknown-constant";
    case Errc::UnknownPredicate: return "unknown-predicate";
    case Errc::DuplicateName: return "duplicate-name";
    case Errc::ArrowMismatch: return "arrow-mismatch";
    case Errc::ArityMismatch: return "arity-mismatch";
    case Errc::NotAnAtom: return "not-an-atom";
    case Errc::NotGuarded: return "not-guarded";
    case Errc::NotGround: return "not-ground";
    case Errc::NotHornGuarded: return "not-horn-guarded";
    case Errc::NotDefiniteHorn: return "not-definite-horn";
    case Errc::IllFormedGoal: return "ill-formed-goal";
    case Errc::BadProgram: return "bad-program";
    case Errc::RuleError: return "rule-error";
    case Errc::NotDerived: return "not-derived";
    case Errc::UnsupportedShape: return "unsupported-shape";
    case Errc::FuelExhausted: return "fuel-exhausted";
    case Errc::NoUnifier: return "no-unifier";
    case Errc::OccursCheck: return "occurs-check";
    case Errc::Input: return "input-error";
  }
  return "error";
}

SimpleType SimpleType::base() { return SimpleType(); }

SimpleType SimpleType::arrow(const SimpleType& dom, const SimpleType& cod) {
  SimpleType t;
  t.node_ = std::make_shared<const Node>(Node{dom, cod});
  return t;
}

SimpleType SimpleType::arrows(const std::vector<SimpleType>& doms, const SimpleType& cod) {
  SimpleType t = cod;
  for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = arrow(*it, t);
  return t;
}

const SimpleType& SimpleType::dom() const {
  if (!node_) fail(Errc::Input, "base type has no domain");
  return node_->dom;
}

const SimpleType& SimpleType::cod() const {
  if (!node_) fail(Errc::Input, "base type has no codomain");
  return node_->cod;
}

int SimpleType::order() const {
  if (is_base()) return 0;
  return std::max(dom().order() + 1, cod().order());
}

std::optional<int> SimpleType::arity() const {
  if (order() > 1) return std::nullopt;
  int n = 0;
  SimpleType t = *this;
  while (t.is_arrow()) {
    ++n;
    t = t.cod();
  }
  return n;
}

std::vector<SimpleType> SimpleType::argument_types() const {
  std::vector<SimpleType> out;
  SimpleType t = *this;
  while (t.is_arrow()) {
    out.push_back(t.dom());
    t = t.cod();
  }
  return out;
}

bool SimpleType::operator==(const SimpleType& other) const {
  if (node_ == other.node_) return true;
  if (is_base() || other.is_base()) return is_base() && other.is_base();
  return dom() == other.dom() && cod() == other.cod();
}

std::string SimpleType::to_string() const {
  if (is_base()) return "i";
  std::string d = dom().to_string();
  if (dom().is_arrow()) d = "(" + d + ")";
  return d + " -> " + cod().to_string();
}

bool PropType::first_order() const {
  for (const auto& a : args_)
    if (!a.is_base()) return false;
  return true;
}

std::string PropType::to_string() const {
  std::string s;
  for (const auto& a : args_) {
    std::string d = a.to_string();
    if (a.is_arrow()) d = "(" + d + ")";
    s += d + " -> ";
  }
  return s + "o";
}

}  // namespace cup
