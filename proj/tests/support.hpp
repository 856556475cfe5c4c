#pragma once

// Shared fixtures for the test binaries: corpus loading, a cache of proved
// corpus entries, rule-multiset helpers, and the random generators behind the
// property suites. Seeds are fixed so every run sees the same cases.

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cup/coterm.hpp"
#include "cup/error.hpp"
#include "cup/ifol.hpp"
#include "cup/kernel.hpp"
#include "cup/logic.hpp"
#include "cup/prover.hpp"
#include "cup/syntax.hpp"

#ifndef CUP_CORPUS_DIR
#define CUP_CORPUS_DIR "corpus"
#endif

namespace cup::test {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_path(const std::string& name) {
  return std::string(CUP_CORPUS_DIR) + "/" + name;
}

inline SourceFile load_corpus(const std::string& name) {
  return parse_source(read_file(corpus_path(name)));
}

// One proof obligation from the corpus, already searched. Lemma-route files
// contribute two entries: "<tag>.lemma" under the base program and
// "<tag>.target" under the lemma-extended program.
struct Proved {
  std::string tag;
  Program program;  // the program the proof checks under
  LogicId logic;
  CupProof proof;
};

struct CorpusCase {
  const char* file;
  const char* tag;
  const char* logic;
};

inline const std::vector<CorpusCase>& corpus_cases() {
  static const std::vector<CorpusCase> cases = {
      {"eq.clp", "eq", "cofohc"},
      {"eq_sg.clp", "eq_sg", "cofohh"},
      {"from.clp", "from", "cohohh_fix"},
      {"stream.clp", "stream", "cofohc_fix"},
      {"typing.clp", "typing", "cofohc_fix"},
      {"gamma1.clp", "gamma1", "cofohc"},
      {"gamma2.clp", "gamma2", "cofohh"},
      {"gamma3.clp", "gamma3", "cofohc_fix"},
  };
  return cases;
}

inline const std::vector<Proved>& proved_corpus() {
  static const std::vector<Proved> all = [] {
    std::vector<Proved> out;
    for (const CorpusCase& c : corpus_cases()) {
      SourceFile src = load_corpus(c.file);
      LogicId l = *LogicId::parse(c.logic);
      SearchConfig cfg = SearchConfig::for_logic(l);
      if (src.lemmas.empty()) {
        SearchOutcome so = search(src.program, src.goals.at(0), cfg);
        if (!so.proof) throw Error(Errc::Input, std::string("search failed: ") + c.tag);
        out.push_back({c.tag, src.program, l, *so.proof});
      } else {
        LemmaOutcome lo =
            prove_with_lemma(src.program, "lem", src.lemmas[0], src.goals.at(0), cfg);
        if (!lo.ok()) throw Error(Errc::Input, std::string("lemma search failed: ") + c.tag);
        out.push_back({std::string(c.tag) + ".lemma", src.program, l, *lo.lemma_proof});
        out.push_back({std::string(c.tag) + ".target", lo.extended, l, *lo.target_proof});
      }
    }
    return out;
  }();
  return all;
}

inline const Proved& proved(const std::string& tag) {
  for (const Proved& p : proved_corpus())
    if (p.tag == tag) return p;
  throw Error(Errc::Input, "no proved corpus entry '" + tag + "'");
}

// --- rule multisets ---------------------------------------------------------

inline std::vector<std::string> main_branch(const CupProof& pi) {
  std::vector<std::string> rules{cup_rule_name(pi.rule)};
  const CupProof* n = &pi;
  while (!n->children.empty()) {
    n = &n->children.back();
    rules.push_back(cup_rule_name(n->rule));
  }
  return rules;
}

inline std::map<std::string, int> multiset(const std::vector<std::string>& rules) {
  std::map<std::string, int> out;
  for (const std::string& r : rules) out[r]++;
  return out;
}

inline std::map<std::string, int> ifol_rule_multiset(const IFolProof& t) {
  std::map<std::string, int> out;
  std::vector<const IFolProof*> stack{&t};
  while (!stack.empty()) {
    const IFolProof* n = stack.back();
    stack.pop_back();
    out[ifol_rule_name(n->rule)]++;
    for (const IFolProof& c : n->children) stack.push_back(&c);
  }
  return out;
}

template <typename Pred>
inline int count_nodes(const CupProof& pi, Pred pred) {
  int n = pred(pi) ? 1 : 0;
  for (const CupProof& c : pi.children) n += count_nodes(c, pred);
  return n;
}

template <typename Pred>
inline int count_ifol_nodes(const IFolProof& t, Pred pred) {
  int n = pred(t) ? 1 : 0;
  for (const IFolProof& c : t.children) n += count_ifol_nodes(c, pred);
  return n;
}

// --- random generation --------------------------------------------------

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(uint64_t seed) : rng(seed) {}
  int pick(int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); }
  bool coin() { return pick(2) == 0; }
};

/// Signature 0 : i, s : i -> i, scons : i -> i -> i — shared by the term
/// generators below.
inline const Signature& nat_sig() {
  static const Signature sig = [] {
    SimpleType i;
    Signature s;
    s.add_constant("0", i);
    s.add_constant("s", SimpleType::arrow(i, i));
    s.add_constant("scons", SimpleType::arrows({i, i}, i));
    return s;
  }();
  return sig;
}

/// Guarded term of base type over the given variables: constructors, the
/// variables, and guarded fixes only.
inline Term gen_guarded(Gen& g, const std::vector<std::string>& vars, int depth, int* fresh) {
  SimpleType i;
  if (depth <= 0 || g.pick(4) == 0) {
    if (!vars.empty() && g.coin()) return Term::var(vars[g.pick((int)vars.size())]);
    return Term::constant("0");
  }
  switch (g.pick(4)) {
    case 0:
      return Term::app(Term::constant("s"), gen_guarded(g, vars, depth - 1, fresh));
    case 1:
      return Term::app(Term::constant("scons"), {gen_guarded(g, vars, depth - 1, fresh),
                                                 gen_guarded(g, vars, depth - 1, fresh)});
    case 2: {
      // fix w : i. scons M w — guarded base, may mention outer variables
      std::string w = "w" + std::to_string(++*fresh);
      Term m = gen_guarded(g, vars, depth - 1, fresh);
      return Term::fix(w, i, Term::app(Term::constant("scons"), {m, Term::var(w)}));
    }
    default: {
      std::string w = "w" + std::to_string(++*fresh);
      return Term::fix(w, i, Term::app(Term::constant("s"), Term::var(w)));
    }
  }
}

/// Closed well-typed term of base type with β- and fix-redexes; not
/// necessarily guarded. Exercises subject reduction.
inline Term gen_typed(Gen& g, int depth, int* fresh) {
  SimpleType i;
  if (depth <= 0) return Term::constant("0");
  switch (g.pick(6)) {
    case 0:
      return Term::constant("0");
    case 1:
      return Term::app(Term::constant("s"), gen_typed(g, depth - 1, fresh));
    case 2:
      return Term::app(Term::constant("scons"),
                       {gen_typed(g, depth - 1, fresh), gen_typed(g, depth - 1, fresh)});
    case 3: {  // (\x : i. body) arg
      std::string x = "x" + std::to_string(++*fresh);
      Term body = g.coin() ? Term::app(Term::constant("s"), Term::var(x)) : Term::var(x);
      return Term::app(Term::lam(x, i, body), gen_typed(g, depth - 1, fresh));
    }
    case 4: {  // (fix f : i -> i. \y. scons y (f (s y))) arg — productive
      std::string f = "f" + std::to_string(++*fresh);
      std::string y = "y" + std::to_string(++*fresh);
      Term body = Term::lam(
          y, i,
          Term::app(Term::constant("scons"),
                    {Term::var(y), Term::app(Term::var(f),
                                             Term::app(Term::constant("s"), Term::var(y)))}));
      return Term::app(Term::fix(f, SimpleType::arrow(i, i), body),
                       gen_typed(g, depth - 1, fresh));
    }
    default: {  // (\x : i. closed) arg — discards its argument
      std::string x = "x" + std::to_string(++*fresh);
      return Term::app(Term::lam(x, i, gen_typed(g, depth - 1, fresh)),
                       gen_typed(g, depth - 1, fresh));
    }
  }
}

/// Random definite first-order program over a : i, f/g : i -> i and
/// predicates p, q. Always includes one fact so searches can close.
inline Program gen_program(Gen& g) {
  std::ostringstream src;
  src << "const a : i. const f : i -> i. const g : i -> i.\n"
      << "pred p : i -> o. pred q : i -> o.\n";
  const char* pats[] = {"x", "f x", "g x", "a", "f a"};
  const char* preds[] = {"p", "q"};
  src << "clause c0: " << preds[g.pick(2)] << " " << (g.coin() ? "a" : "(f a)") << ".\n";
  int n = 1 + g.pick(3);
  for (int c = 1; c <= n; ++c) {
    const char* head_pat = pats[g.pick(5)];
    bool has_x = std::string(head_pat).find('x') != std::string::npos;
    src << "clause c" << c << ": forall x. ";
    int body = g.pick(3);
    if (body == 0) {
      src << "q x => ";
    } else {
      for (int b = 0; b < body; ++b) {
        const char* arg = has_x && g.coin() ? (g.coin() ? "x" : "(f x)") : "a";
        src << preds[g.pick(2)] << " " << arg << (b + 1 < body ? " /\\ " : " => ");
      }
    }
    src << preds[g.pick(2)] << " (" << head_pat << ").\n";
  }
  return parse_program(src.str());
}

/// Ground atom (depth ≤ 2) or a ∀-atom — both in the translatable goal class.
inline Formula gen_goal(Gen& g, const Signature& sig, bool allow_quant) {
  const char* grounds[] = {"p a", "q a", "p (f a)", "q (f a)", "p (g (f a))", "q (f (f a))"};
  if (allow_quant && g.pick(4) == 0) {
    const char* quants[] = {"forall x. p x", "forall x. q x", "forall x. p (f x)"};
    return parse_formula(sig, Context{}, quants[g.pick(3)]);
  }
  return parse_formula(sig, Context{}, grounds[g.pick(6)]);
}

}  // namespace cup::test
