#include "doctest.h"
#include "support.hpp"

#include "cup/logic.hpp"
#include "cup/syntax.hpp"

using namespace cup;
using namespace cup::test;

TEST_CASE("logic names round-trip across the cube") {
  CHECK(LogicId::all().size() == 8);
  for (const LogicId& l : LogicId::all()) {
    auto back = LogicId::parse(l.name());
    REQUIRE(back.has_value());
    CHECK(*back == l);
  }
  CHECK_FALSE(LogicId::parse("fohc").has_value());
  CHECK_FALSE(LogicId::parse("cofoo").has_value());
}

TEST_CASE("cube order: features only grow") {
  LogicId cofohc = *LogicId::parse("cofohc");
  LogicId cofohh = *LogicId::parse("cofohh");
  LogicId cohohh_fix = *LogicId::parse("cohohh_fix");
  CHECK(cofohc.subsumed_by(cofohh));
  CHECK(cofohc.subsumed_by(cohohh_fix));
  CHECK_FALSE(cofohh.subsumed_by(cofohc));
  for (const LogicId& l : LogicId::all()) {
    CHECK(cofohc.subsumed_by(l));
    CHECK(l.subsumed_by(cohohh_fix));
  }
}

TEST_CASE("corpus clauses classify as definite formulas of their logic") {
  for (const CorpusCase& c : corpus_cases()) {
    SourceFile src = load_corpus(c.file);
    LogicId l = *LogicId::parse(c.logic);
    for (const HornClause& cl : src.program.clauses) {
      CAPTURE(c.file);
      CAPTURE(cl.name);
      CHECK(is_definite_formula(l, src.program.sig, Context{}, cl.to_formula()));
    }
    for (const Formula& goal : src.goals)
      CHECK(is_goal_formula(l, src.program.sig, Context{}, goal));
    for (const Formula& lemma : src.lemmas)
      CHECK(is_coinduction_goal(l, src.program.sig, Context{}, lemma));
  }
}

TEST_CASE("fix terms are admitted only by _fix logics") {
  SourceFile src = load_corpus("gamma3.clp");
  const Formula& goal = src.goals.at(0);  // p (fix x. f x)
  CHECK(is_goal_formula(*LogicId::parse("cofohc_fix"), src.program.sig, Context{}, goal));
  CHECK_FALSE(is_goal_formula(*LogicId::parse("cofohc"), src.program.sig, Context{}, goal));
}

TEST_CASE("normalize_to_horn splits conjunctions and flattens implications") {
  Program p = parse_program(
      "const a : i. const f : i -> i. pred p : i -> o. pred q : i -> o.\n");
  Formula two = parse_formula(p.sig, Context{}, "p a /\\ q a");
  auto cs = normalize_to_horn({{"both", two}});
  REQUIRE(cs.size() == 2);
  CHECK(print_formula(cs[0].head) == "p a");
  CHECK(print_formula(cs[1].head) == "q a");

  Formula nested = parse_formula(p.sig, Context{}, "forall x. p x => (q x => p (f x))");
  auto ns = normalize_to_horn({{"nest", nested}});
  REQUIRE(ns.size() == 1);
  CHECK(ns[0].vars.size() == 1);
  CHECK(ns[0].body.size() == 2);
  CHECK(print_formula(ns[0].head) == "p (f x)");
}

TEST_CASE("clause to_formula stays definite after normalization") {
  for (const CorpusCase& c : corpus_cases()) {
    SourceFile src = load_corpus(c.file);
    for (const HornClause& cl : src.program.clauses) {
      auto again = normalize_to_horn({{cl.name, cl.to_formula()}});
      REQUIRE(again.size() == 1);
      CHECK(print_formula(again[0].to_formula()) == print_formula(cl.to_formula()));
    }
  }
}

TEST_CASE("guard_program guards every program clause") {
  SourceFile src = load_corpus("eq.clp");
  auto gp = guard_program(src.program);
  CHECK(gp.size() == src.program.clauses.size());
  // each entry is the clause formula with later-guarded atoms
  for (const Formula& f : gp) CHECK(print_formula(f).find("|>") != std::string::npos);
}
