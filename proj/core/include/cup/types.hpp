#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cup {

// Simple types over a single base type i:  t ::= i | t -> t.
class SimpleType {
 public:
  SimpleType() = default;  // the base type i

  static SimpleType base();
  static SimpleType arrow(const SimpleType& dom, const SimpleType& cod);
  /// t1 -> t2 -> ... -> cod, right associated.
  static SimpleType arrows(const std::vector<SimpleType>& doms, const SimpleType& cod);

  bool is_base() const { return node_ == nullptr; }
  bool is_arrow() const { return node_ != nullptr; }
  const SimpleType& dom() const;
  const SimpleType& cod() const;

  /// ord(i) = 0, ord(s -> t) = max(ord(s) + 1, ord(t)).
  int order() const;
  /// ar(i) = 0, ar(i -> t) = ar(t) + 1; empty unless order() <= 1.
  std::optional<int> arity() const;
  /// Argument types left to right; empty for the base type.
  std::vector<SimpleType> argument_types() const;

  bool operator==(const SimpleType& other) const;
  bool operator!=(const SimpleType& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  struct Node;
  std::shared_ptr<const Node> node_;
};

struct SimpleType::Node {
  SimpleType dom;
  SimpleType cod;
};

// Predicate types t1 -> ... -> tn -> o; the final o is implicit.
class PropType {
 public:
  PropType() = default;
  explicit PropType(std::vector<SimpleType> args) : args_(std::move(args)) {}

  const std::vector<SimpleType>& args() const { return args_; }
  int arity() const { return static_cast<int>(args_.size()); }

  /// All argument types of order 0, i.e. every argument is of the base type.
  bool first_order() const;

  bool operator==(const PropType& other) const { return args_ == other.args_; }
  bool operator!=(const PropType& other) const { return !(*this == other); }

  std::string to_string() const;

 private:
  std::vector<SimpleType> args_;
};

}  // namespace cup
