#pragma once

#include <string>
#include <vector>

namespace cup {

enum class TokKind { Name, Sym, Str, End };

struct Token {
  TokKind kind;
  std::string text;
  int line = 1;
  int col = 1;
};

/// Splits text into identifiers and the fixed symbol set
///   -> => /\ \/ |> ( ) : . \ = ,
/// with %-to-end-of-line comments. Quoted "…" strings come back as Str
/// tokens with the quotes stripped (used by the proof format). Identifiers
/// may start with a digit (numerals are ordinary constant names). Throws
/// Parse errors with positions.
std::vector<Token> lex(const std::string& text);

[[noreturn]] void parse_fail(const Token& at, const std::string& expected);

}  // namespace cup
