#include "syntax_internal.hpp"

#include <cctype>

#include "cup/error.hpp"

namespace cup {

namespace {

bool name_start(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '?'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i + k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    i += n;
  };

  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t{TokKind::Sym, "", line, col};
    if (name_start(c)) {
      size_t j = i + 1;
      while (j < text.size() && name_char(text[j])) ++j;
      t.kind = TokKind::Name;
      t.text = text.substr(i, j - i);
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"')
        fail(Errc::Parse, std::to_string(line) + ":" + std::to_string(col) +
                              ": unterminated string");
      t.kind = TokKind::Str;
      t.text = text.substr(i + 1, j - i - 1);
      out.push_back(t);
      advance(j + 1 - i);
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < text.size() && text[i + 1] == b;
    };
    if (two('-', '>') || two('=', '>') || two('/', '\\') || two('\\', '/') || two('|', '>')) {
      t.text = text.substr(i, 2);
      out.push_back(t);
      advance(2);
      continue;
    }
    if (c == '(' || c == ')' || c == ':' || c == '.' || c == '\\' || c == '=' || c == ',') {
      t.text = std::string(1, c);
      out.push_back(t);
      advance(1);
      continue;
    }
    fail(Errc::Parse, std::to_string(line) + ":" + std::to_string(col) +
                          ": unexpected character '" + std::string(1, c) + "'");
  }
  out.push_back(Token{TokKind::End, "", line, col});
  return out;
}

void parse_fail(const Token& at, const std::string& expected) {
  std::string got = at.kind == TokKind::End ? "end of input" : "'" + at.text + "'";
  fail(Errc::Parse, std::to_string(at.line) + ":" + std::to_string(at.col) + ": expected " +
                        expected + ", found " + got);
}

}  // namespace cup
