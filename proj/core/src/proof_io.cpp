#include "cup/proof_io.hpp"

#include <memory>
#include <sstream>

#include "cup/error.hpp"

namespace cup {
namespace {

// ---------------------------------------------------------------------------
// S-expressions. Atoms are bare symbols or quoted strings; the only escapes
// inside quotes are \" and \\.

struct Sexp {
  enum class Kind { Atom, String, List };
  Kind kind = Kind::List;
  std::string text;
  std::vector<Sexp> items;

  bool is_list(const std::string& head) const {
    return kind == Kind::List && !items.empty() && items[0].kind == Kind::Atom &&
           items[0].text == head;
  }
};

class SexpReader {
 public:
  explicit SexpReader(const std::string& text) : text_(text) {}

  std::vector<Sexp> read_all() {
    std::vector<Sexp> out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_ws();
    }
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_ws();
    if (pos_ >= text_.size()) throw Error(Errc::Parse, "unexpected end of proof text");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexp list;
      list.kind = Sexp::Kind::List;
      skip_ws();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        list.items.push_back(read());
        skip_ws();
      }
      if (pos_ >= text_.size()) throw Error(Errc::Parse, "unclosed '(' in proof text");
      ++pos_;
      return list;
    }
    if (c == ')') throw Error(Errc::Parse, "unmatched ')' in proof text");
    if (c == '"') {
      ++pos_;
      Sexp s;
      s.kind = Sexp::Kind::String;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        char d = text_[pos_++];
        if (d == '\\') {
          if (pos_ >= text_.size()) throw Error(Errc::Parse, "dangling escape in string");
          char e = text_[pos_++];
          if (e != '"' && e != '\\')
            throw Error(Errc::Parse, std::string("unknown escape '\\") + e + "'");
          s.text.push_back(e);
        } else {
          s.text.push_back(d);
        }
      }
      if (pos_ >= text_.size()) throw Error(Errc::Parse, "unterminated string in proof text");
      ++pos_;
      return s;
    }
    Sexp a;
    a.kind = Sexp::Kind::Atom;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '"' ||
          d == ';')
        break;
      a.text.push_back(d);
      ++pos_;
    }
    return a;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void indent(std::ostream& os, int depth) {
  os << '\n';
  for (int i = 0; i < depth; ++i) os << "  ";
}

// ---------------------------------------------------------------------------
// Printing

void print_binders(std::ostream& os, const char* head,
                   const std::vector<std::pair<std::string, SimpleType>>& xs) {
  if (xs.empty()) return;
  os << " (" << head;
  for (const auto& [name, ty] : xs) os << " (" << name << " " << print_type(ty) << ")";
  os << ")";
}

void print_formulas(std::ostream& os, const char* head, const std::vector<Formula>& fs) {
  if (fs.empty()) return;
  os << " (" << head;
  for (const Formula& f : fs) os << " " << quote(print_formula(f));
  os << ")";
}

const char* kind_name(SequentKind k) {
  switch (k) {
    case SequentKind::CoRoot: return "co-root";
    case SequentKind::Guarded: return "guarded";
    case SequentKind::Goal: return "goal";
    case SequentKind::Focused: return "focused";
  }
  return "?";
}

void print_cup_node(std::ostream& os, const CupProof& p, int depth) {
  indent(os, depth);
  os << "(" << cup_rule_name(p.rule);
  os << " (seq " << kind_name(p.sequent.kind);
  print_binders(os, "eigen", p.sequent.eigen);
  print_formulas(os, "extra", p.sequent.extra);
  print_formulas(os, "hyps", p.sequent.hyps);
  os << " (goal " << quote(print_formula(p.sequent.goal)) << ")";
  if (p.sequent.kind == SequentKind::Focused)
    os << " (focus " << quote(print_formula(p.sequent.focus)) << ")";
  os << ")";
  if (!p.clause.empty()) os << " (clause " << p.clause << ")";
  if (p.hyp >= 0) os << " (hyp " << p.hyp << ")";
  if (p.extra_idx >= 0) os << " (extra-idx " << p.extra_idx << ")";
  if (!p.witness.empty()) os << " (witness " << quote(print_term(p.witness)) << ")";
  if (!p.fresh.empty()) os << " (fresh " << p.fresh << ")";
  for (const CupProof& c : p.children) print_cup_node(os, c, depth + 1);
  os << ")";
}

void print_ifol_node(std::ostream& os, const IFolProof& p, int depth) {
  indent(os, depth);
  os << "(" << ifol_rule_name(p.rule);
  os << " (seq";
  print_binders(os, "ctx", p.sequent.ctx);
  print_formulas(os, "delta", p.sequent.delta);
  os << " (goal " << quote(print_formula(p.sequent.goal)) << "))";
  if (p.index >= 0) os << " (index " << p.index << ")";
  if (!p.witness.empty()) os << " (witness " << quote(print_term(p.witness)) << ")";
  if (!p.fresh.empty())
    os << " (fresh " << p.fresh << " " << print_type(p.fresh_type) << ")";
  for (const IFolProof& c : p.children) print_ifol_node(os, c, depth + 1);
  os << ")";
}

// ---------------------------------------------------------------------------
// Parsing

[[noreturn]] void bad(const std::string& msg) { throw Error(Errc::Parse, msg); }

const Sexp& expect_list(const Sexp& s, const std::string& head) {
  if (!s.is_list(head)) bad("expected (" + head + " ...) form");
  return s;
}

std::string expect_atom(const Sexp& s, const char* what) {
  if (s.kind != Sexp::Kind::Atom) bad(std::string("expected ") + what);
  return s.text;
}

std::string expect_string(const Sexp& s, const char* what) {
  if (s.kind != Sexp::Kind::String) bad(std::string("expected quoted ") + what);
  return s.text;
}

int expect_int(const Sexp& s, const char* what) {
  std::string t = expect_atom(s, what);
  try {
    return std::stoi(t);
  } catch (const std::exception&) {
    bad(std::string("expected integer ") + what);
  }
}

std::vector<std::pair<std::string, SimpleType>> parse_binders(const Sexp& s) {
  std::vector<std::pair<std::string, SimpleType>> out;
  for (size_t i = 1; i < s.items.size(); ++i) {
    const Sexp& b = s.items[i];
    if (b.kind != Sexp::Kind::List || b.items.size() != 2)
      bad("binder must be (name type)");
    out.emplace_back(expect_atom(b.items[0], "binder name"),
                     parse_type(expect_atom(b.items[1], "binder type")));
  }
  return out;
}

std::vector<Formula> parse_formula_list(const Signature& sig, const Sexp& s) {
  std::vector<Formula> out;
  for (size_t i = 1; i < s.items.size(); ++i)
    out.push_back(parse_formula(sig, Context{}, expect_string(s.items[i], "formula")));
  return out;
}

SequentKind parse_kind(const std::string& name) {
  if (name == "co-root") return SequentKind::CoRoot;
  if (name == "guarded") return SequentKind::Guarded;
  if (name == "goal") return SequentKind::Goal;
  if (name == "focused") return SequentKind::Focused;
  bad("unknown sequent kind '" + name + "'");
}

CupProof parse_cup_node(const Signature& sig, const Sexp& s) {
  if (s.kind != Sexp::Kind::List || s.items.size() < 2) bad("proof node must be (rule (seq ...) ...)");
  CupProof p;
  auto rule = parse_cup_rule(expect_atom(s.items[0], "rule name"));
  if (!rule) bad("unknown rule '" + s.items[0].text + "'");
  p.rule = *rule;

  const Sexp& seq = expect_list(s.items[1], "seq");
  if (seq.items.size() < 2) bad("(seq ...) needs a kind");
  p.sequent.kind = parse_kind(expect_atom(seq.items[1], "sequent kind"));
  // Binders come first so the formula fields can be parsed under them.
  for (size_t i = 2; i < seq.items.size(); ++i)
    if (seq.items[i].is_list("eigen")) p.sequent.eigen = parse_binders(seq.items[i]);
  Signature local = p.sequent.extended(sig);
  bool saw_goal = false;
  for (size_t i = 2; i < seq.items.size(); ++i) {
    const Sexp& f = seq.items[i];
    if (f.is_list("eigen")) continue;
    if (f.is_list("extra")) p.sequent.extra = parse_formula_list(local, f);
    else if (f.is_list("hyps")) p.sequent.hyps = parse_formula_list(local, f);
    else if (f.is_list("goal")) {
      if (f.items.size() != 2) bad("(goal ...) takes one formula");
      p.sequent.goal = parse_formula(local, Context{}, expect_string(f.items[1], "goal"));
      saw_goal = true;
    } else if (f.is_list("focus")) {
      if (f.items.size() != 2) bad("(focus ...) takes one formula");
      p.sequent.focus = parse_formula(local, Context{}, expect_string(f.items[1], "focus"));
    } else {
      bad("unknown field in (seq ...)");
    }
  }
  if (!saw_goal) bad("(seq ...) is missing its goal");

  for (size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& f = s.items[i];
    if (f.kind != Sexp::Kind::List || f.items.empty()) bad("bad proof node field");
    if (f.items[0].kind != Sexp::Kind::Atom) {
      p.children.push_back(parse_cup_node(sig, f));
      continue;
    }
    const std::string& head = f.items[0].text;
    if (head == "clause" && f.items.size() == 2) p.clause = expect_atom(f.items[1], "clause name");
    else if (head == "hyp" && f.items.size() == 2) p.hyp = expect_int(f.items[1], "hyp index");
    else if (head == "extra-idx" && f.items.size() == 2)
      p.extra_idx = expect_int(f.items[1], "extra index");
    else if (head == "witness" && f.items.size() == 2)
      p.witness = parse_term(local, Context{}, expect_string(f.items[1], "witness"));
    else if (head == "fresh" && f.items.size() == 2) p.fresh = expect_atom(f.items[1], "fresh name");
    else p.children.push_back(parse_cup_node(sig, f));
  }
  return p;
}

IFolProof parse_ifol_node(const Signature& sig, const Sexp& s) {
  if (s.kind != Sexp::Kind::List || s.items.size() < 2) bad("proof node must be (rule (seq ...) ...)");
  IFolProof p;
  auto rule = parse_ifol_rule(expect_atom(s.items[0], "rule name"));
  if (!rule) bad("unknown rule '" + s.items[0].text + "'");
  p.rule = *rule;

  const Sexp& seq = expect_list(s.items[1], "seq");
  for (size_t i = 1; i < seq.items.size(); ++i)
    if (seq.items[i].is_list("ctx")) p.sequent.ctx = parse_binders(seq.items[i]);
  Signature local = p.sequent.extended(sig);
  bool saw_goal = false;
  for (size_t i = 1; i < seq.items.size(); ++i) {
    const Sexp& f = seq.items[i];
    if (f.is_list("ctx")) continue;
    if (f.is_list("delta")) p.sequent.delta = parse_formula_list(local, f);
    else if (f.is_list("goal")) {
      if (f.items.size() != 2) bad("(goal ...) takes one formula");
      p.sequent.goal = parse_formula(local, Context{}, expect_string(f.items[1], "goal"));
      saw_goal = true;
    } else {
      bad("unknown field in (seq ...)");
    }
  }
  if (!saw_goal) bad("(seq ...) is missing its goal");

  for (size_t i = 2; i < s.items.size(); ++i) {
    const Sexp& f = s.items[i];
    if (f.kind != Sexp::Kind::List || f.items.empty()) bad("bad proof node field");
    if (f.items[0].kind != Sexp::Kind::Atom) {
      p.children.push_back(parse_ifol_node(sig, f));
      continue;
    }
    const std::string& head = f.items[0].text;
    if (head == "index" && f.items.size() == 2) p.index = expect_int(f.items[1], "index");
    else if (head == "witness" && f.items.size() == 2)
      p.witness = parse_term(local, Context{}, expect_string(f.items[1], "witness"));
    else if (head == "fresh" && f.items.size() == 3) {
      p.fresh = expect_atom(f.items[1], "fresh name");
      p.fresh_type = parse_type(expect_atom(f.items[2], "fresh type"));
    } else {
      p.children.push_back(parse_ifol_node(sig, f));
    }
  }
  return p;
}

}  // namespace

std::string print_cup_proof(const ProofFile& pf) {
  std::ostringstream os;
  os << "(cup-proof " << pf.logic.name();
  for (const auto& [name, f] : pf.lemmas)
    os << "\n  (lemma " << name << " " << quote(print_formula(f)) << ")";
  print_cup_node(os, pf.proof, 1);
  os << ")\n";
  return os.str();
}

std::string print_ifol_proof(const IFolProof& pi) {
  std::ostringstream os;
  os << "(ifol-proof";
  print_ifol_node(os, pi, 1);
  os << ")\n";
  return os.str();
}

std::vector<ProofFile> parse_cup_proofs(const Signature& sig, const std::string& text) {
  std::vector<ProofFile> out;
  for (const Sexp& form : SexpReader(text).read_all()) {
    if (!form.is_list("cup-proof")) {
      if (form.is_list("ifol-proof")) continue;
      bad("expected a (cup-proof ...) form");
    }
    if (form.items.size() < 3) bad("(cup-proof ...) needs a logic and a proof node");
    ProofFile pf;
    auto logic = LogicId::parse(expect_atom(form.items[1], "logic name"));
    if (!logic) bad("unknown logic '" + form.items[1].text + "'");
    pf.logic = *logic;
    size_t i = 2;
    for (; i < form.items.size() && form.items[i].is_list("lemma"); ++i) {
      const Sexp& lem = form.items[i];
      if (lem.items.size() != 3) bad("(lemma ...) takes a name and a formula");
      pf.lemmas.emplace_back(expect_atom(lem.items[1], "lemma name"),
                             parse_formula(sig, Context{}, expect_string(lem.items[2], "lemma")));
    }
    if (i + 1 != form.items.size()) bad("(cup-proof ...) takes exactly one proof node");
    pf.proof = parse_cup_node(sig, form.items[i]);
    out.push_back(std::move(pf));
  }
  return out;
}

std::vector<IFolProof> parse_ifol_proofs(const Signature& sig, const std::string& text) {
  std::vector<IFolProof> out;
  for (const Sexp& form : SexpReader(text).read_all()) {
    if (!form.is_list("ifol-proof")) {
      if (form.is_list("cup-proof")) continue;
      bad("expected an (ifol-proof ...) form");
    }
    if (form.items.size() != 2) bad("(ifol-proof ...) takes exactly one proof node");
    out.push_back(parse_ifol_node(sig, form.items[1]));
  }
  return out;
}

}  // namespace cup
