#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cup/types.hpp"

namespace cup {

// Term and predicate symbols, in declaration order.
class Signature {
 public:
  void add_constant(const std::string& name, const SimpleType& ty);
  void add_predicate(const std::string& name, const PropType& ty);

  std::optional<SimpleType> find_constant(const std::string& name) const;
  std::optional<PropType> find_predicate(const std::string& name) const;
  bool has_constant(const std::string& name) const { return find_constant(name).has_value(); }
  bool has_predicate(const std::string& name) const { return find_predicate(name).has_value(); }

  const std::vector<std::pair<std::string, SimpleType>>& constants() const { return consts_; }
  const std::vector<std::pair<std::string, PropType>>& predicates() const { return preds_; }

  /// Copy extended with one constant (eigenvariable extension Σ, c:τ).
  Signature with_constant(const std::string& name, const SimpleType& ty) const;

  /// Every term symbol has order ≤ 1.
  bool first_order() const;

 private:
  std::vector<std::pair<std::string, SimpleType>> consts_;
  std::vector<std::pair<std::string, PropType>> preds_;
};

// Typing context for free variables, in binding order.
class Context {
 public:
  Context() = default;

  void push(const std::string& name, const SimpleType& ty);
  std::optional<SimpleType> find(const std::string& name) const;
  bool contains(const std::string& name) const { return find(name).has_value(); }

  Context with(const std::string& name, const SimpleType& ty) const;

  const std::vector<std::pair<std::string, SimpleType>>& vars() const { return vars_; }
  bool empty() const { return vars_.empty(); }

  /// Every variable has a type of order 0 (i.e. the base type).
  bool all_order_zero() const;

 private:
  std::vector<std::pair<std::string, SimpleType>> vars_;
};

}  // namespace cup
