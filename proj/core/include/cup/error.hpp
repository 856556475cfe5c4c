#pragma once

#include <stdexcept>
#include <string>

namespace cup {

enum class Errc {
  Parse,
  UnboundVariable,
  UnknownConstant,
  UnknownPredicate,
  DuplicateName,
  ArrowMismatch,
  ArityMismatch,
  NotAnAtom,
  NotGuarded,
  NotGround,
  NotHornGuarded,
  NotDefiniteHorn,
  IllFormedGoal,
  BadProgram,
  RuleError,
  NotDerived,
  UnsupportedShape,
  FuelExhausted,
  NoUnifier,
  OccursCheck,
  Input,
};

/// Stable single-token category name, used as machine-parsable error prefix.
const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cup
