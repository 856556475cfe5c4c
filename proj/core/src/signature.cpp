#include "cup/signature.hpp"

#include "cup/error.hpp"

namespace cup {

void Signature::add_constant(const std::string& name, const SimpleType& ty) {
  if (has_constant(name)) fail(Errc::DuplicateName, "constant '" + name + "' already declared");
  consts_.emplace_back(name, ty);
}

void Signature::add_predicate(const std::string& name, const PropType& ty) {
  if (has_predicate(name)) fail(Errc::DuplicateName, "predicate '" + name + "' already declared");
  preds_.emplace_back(name, ty);
}

std::optional<SimpleType> Signature::find_constant(const std::string& name) const {
  for (const auto& [n, t] : consts_)
    if (n == name) return t;
  return std::nullopt;
}

std::optional<PropType> Signature::find_predicate(const std::string& name) const {
  for (const auto& [n, t] : preds_)
    if (n == name) return t;
  return std::nullopt;
}

Signature Signature::with_constant(const std::string& name, const SimpleType& ty) const {
  Signature s = *this;
  s.add_constant(name, ty);
  return s;
}

bool Signature::first_order() const {
  for (const auto& [n, t] : consts_)
    if (t.order() > 1) return false;
  return true;
}

void Context::push(const std::string& name, const SimpleType& ty) {
  if (contains(name)) fail(Errc::DuplicateName, "variable '" + name + "' already bound");
  vars_.emplace_back(name, ty);
}

std::optional<SimpleType> Context::find(const std::string& name) const {
  for (const auto& [n, t] : vars_)
    if (n == name) return t;
  return std::nullopt;
}

Context Context::with(const std::string& name, const SimpleType& ty) const {
  Context c = *this;
  c.push(name, ty);
  return c;
}

bool Context::all_order_zero() const {
  for (const auto& [n, t] : vars_)
    if (t.order() != 0) return false;
  return true;
}

}  // namespace cup
