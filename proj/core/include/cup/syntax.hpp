#pragma once

#include <string>
#include <vector>

#include "cup/logic.hpp"

namespace cup {

// A parsed source file: declarations plus optional goal/lemma directives.
//
//   % stream of zeros
//   const scons : i -> i -> i.
//   pred stream : i -> o.
//   clause k_str: forall x y. stream y => stream (scons x y).
//   goal stream (fix x. scons zero x).
struct SourceFile {
  Program program;
  std::vector<Formula> goals;
  std::vector<Formula> lemmas;
};

SourceFile parse_source(const std::string& text);
Program parse_program(const std::string& text);

/// Standalone entry points; names resolve against sig (constants) and ctx
/// (variables). Throw Parse / UnboundVariable / UnknownPredicate errors with
/// line:col positions.
Term parse_term(const Signature& sig, const Context& ctx, const std::string& text);
Formula parse_formula(const Signature& sig, const Context& ctx, const std::string& text);
SimpleType parse_type(const std::string& text);

std::string print_type(const SimpleType& t);
std::string print_prop_type(const PropType& t);
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);
std::string print_program(const Program& p);

}  // namespace cup
