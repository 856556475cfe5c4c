#include <algorithm>

#include "cup/error.hpp"
#include "cup/syntax.hpp"
#include "syntax_internal.hpp"

namespace cup {

namespace {

bool is_keyword(const std::string& s) {
  return s == "const" || s == "pred" || s == "clause" || s == "goal" || s == "lemma" ||
         s == "forall" || s == "exists" || s == "fix" || s == "top" || s == "i" || s == "o";
}

struct Parser {
  std::vector<Token> toks;
  size_t pos = 0;
  const Signature* sig = nullptr;
  const Context* ctx = nullptr;
  std::vector<std::string> bound;  // binder names, innermost last

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }

  bool at_sym(const std::string& s) const {
    return peek().kind == TokKind::Sym && peek().text == s;
  }
  bool at_name(const std::string& s) const {
    return peek().kind == TokKind::Name && peek().text == s;
  }
  bool eat_sym(const std::string& s) {
    if (!at_sym(s)) return false;
    ++pos;
    return true;
  }
  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) parse_fail(peek(), "'" + s + "'");
  }
  std::string expect_name(const std::string& what) {
    if (peek().kind != TokKind::Name || is_keyword(peek().text)) parse_fail(peek(), what);
    return next().text;
  }

  bool is_bound(const std::string& n) const {
    return std::find(bound.rbegin(), bound.rend(), n) != bound.rend();
  }

  // --- types ---

  SimpleType parse_atype() {
    if (eat_sym("(")) {
      SimpleType t = parse_stype();
      expect_sym(")");
      return t;
    }
    if (at_name("i")) {
      ++pos;
      return SimpleType::base();
    }
    parse_fail(peek(), "a type");
  }

  SimpleType parse_stype() {
    SimpleType dom = parse_atype();
    if (eat_sym("->")) return SimpleType::arrow(dom, parse_stype());
    return dom;
  }

  PropType parse_ptype() {
    std::vector<SimpleType> args;
    for (;;) {
      if (at_name("o")) {
        ++pos;
        return PropType(args);
      }
      args.push_back(parse_atype());
      expect_sym("->");
    }
  }

  // --- terms ---

  Term resolve(const Token& t) {
    const std::string& n = t.text;
    if (is_bound(n)) return Term::var(n);
    if (sig->has_constant(n)) return Term::constant(n);
    if (ctx && ctx->contains(n)) return Term::var(n);
    fail(Errc::UnboundVariable, std::to_string(t.line) + ":" + std::to_string(t.col) +
                                    ": variable '" + n + "' is not bound or declared");
  }

  bool at_aterm() const {
    return at_sym("(") || (peek().kind == TokKind::Name && !is_keyword(peek().text));
  }

  Term parse_aterm() {
    if (eat_sym("(")) {
      Term t = parse_term_full();
      expect_sym(")");
      return t;
    }
    if (peek().kind == TokKind::Name && !is_keyword(peek().text)) return resolve(next());
    parse_fail(peek(), "a term");
  }

  Term parse_term_full() {
    if (at_name("fix") || at_sym("\\")) {
      bool is_fix = peek().kind == TokKind::Name;
      ++pos;
      std::string x = expect_name("a binder name");
      SimpleType ty = SimpleType::base();
      if (eat_sym(":")) ty = parse_stype();
      expect_sym(".");
      bound.push_back(x);
      Term body = parse_term_full();
      bound.pop_back();
      return is_fix ? Term::fix(x, ty, body) : Term::lam(x, ty, body);
    }
    Term t = parse_aterm();
    while (at_aterm()) t = Term::app(t, parse_aterm());
    return t;
  }

  // --- formulae ---

  Formula parse_atom_formula() {
    if (at_name("top")) {
      ++pos;
      return Formula::top();
    }
    Token t = peek();
    std::string p = expect_name("a predicate");
    if (!sig->has_predicate(p))
      fail(Errc::UnknownPredicate, std::to_string(t.line) + ":" + std::to_string(t.col) +
                                       ": predicate '" + p + "' not in signature");
    std::vector<Term> args;
    while (at_aterm()) args.push_back(parse_aterm());
    return Formula::atom(p, args);
  }

  Formula parse_unary() {
    if (eat_sym("|>")) return Formula::later(parse_unary());
    if (at_sym("(")) {
      ++pos;
      Formula f = parse_formula_full();
      expect_sym(")");
      return f;
    }
    return parse_atom_formula();
  }

  Formula parse_and() {
    Formula l = parse_unary();
    if (eat_sym("/\\")) return Formula::conj(l, parse_and());
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    if (eat_sym("\\/")) return Formula::disj(l, parse_or());
    return l;
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (eat_sym("=>")) return Formula::implies(l, parse_formula_full());
    return l;
  }

  Formula parse_formula_full() {
    if (at_name("forall") || at_name("exists")) {
      bool is_all = peek().text == "forall";
      ++pos;
      std::vector<std::pair<std::string, SimpleType>> binders;
      while (!eat_sym(".")) {
        if (eat_sym("(")) {
          std::string x = expect_name("a binder name");
          expect_sym(":");
          SimpleType ty = parse_stype();
          expect_sym(")");
          binders.emplace_back(x, ty);
        } else {
          binders.emplace_back(expect_name("a binder name"), SimpleType::base());
        }
      }
      if (binders.empty()) parse_fail(peek(), "at least one binder");
      for (const auto& [x, ty] : binders) bound.push_back(x);
      Formula f = parse_formula_full();
      for (size_t i = binders.size(); i-- > 0;) {
        bound.pop_back();
        f = is_all ? Formula::forall(binders[i].first, binders[i].second, f)
                   : Formula::exists(binders[i].first, binders[i].second, f);
      }
      return f;
    }
    return parse_implies();
  }

  void expect_end() {
    if (peek().kind != TokKind::End) parse_fail(peek(), "end of input");
  }
};

}  // namespace

SimpleType parse_type(const std::string& text) {
  Parser p;
  p.toks = lex(text);
  SimpleType t = p.parse_stype();
  p.expect_end();
  return t;
}

Term parse_term(const Signature& sig, const Context& ctx, const std::string& text) {
  Parser p;
  p.toks = lex(text);
  p.sig = &sig;
  p.ctx = &ctx;
  Term t = p.parse_term_full();
  p.expect_end();
  return t;
}

Formula parse_formula(const Signature& sig, const Context& ctx, const std::string& text) {
  Parser p;
  p.toks = lex(text);
  p.sig = &sig;
  p.ctx = &ctx;
  Formula f = p.parse_formula_full();
  p.expect_end();
  return f;
}

SourceFile parse_source(const std::string& text) {
  Parser p;
  p.toks = lex(text);
  SourceFile file;
  p.sig = &file.program.sig;
  p.ctx = nullptr;
  Context empty;
  for (;;) {
    if (p.peek().kind == TokKind::End) break;
    if (p.at_name("const")) {
      ++p.pos;
      std::string n = p.expect_name("a constant name");
      p.expect_sym(":");
      SimpleType t = p.parse_stype();
      p.expect_sym(".");
      file.program.sig.add_constant(n, t);
    } else if (p.at_name("pred")) {
      ++p.pos;
      std::string n = p.expect_name("a predicate name");
      p.expect_sym(":");
      PropType t = p.parse_ptype();
      p.expect_sym(".");
      file.program.sig.add_predicate(n, t);
    } else if (p.at_name("clause")) {
      ++p.pos;
      std::string n = p.expect_name("a clause name");
      p.expect_sym(":");
      Formula f = p.parse_formula_full();
      p.expect_sym(".");
      well_formed(file.program.sig, empty, f);
      for (const HornClause& c : normalize_to_horn({{n, f}})) file.program.add(c);
    } else if (p.at_name("goal") || p.at_name("lemma")) {
      bool is_goal = p.peek().text == "goal";
      ++p.pos;
      Formula f = p.parse_formula_full();
      p.expect_sym(".");
      well_formed(file.program.sig, empty, f);
      (is_goal ? file.goals : file.lemmas).push_back(f);
    } else {
      parse_fail(p.peek(), "a declaration (const, pred, clause, goal, lemma)");
    }
  }
  return file;
}

Program parse_program(const std::string& text) { return parse_source(text).program; }

}  // namespace cup
