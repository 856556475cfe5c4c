#include "doctest.h"
#include "support.hpp"

#include "cup/prover.hpp"
#include "cup/syntax.hpp"

using namespace cup;
using namespace cup::test;

TEST_CASE("every corpus proof passes the checker") {
  for (const Proved& pc : proved_corpus()) {
    CAPTURE(pc.tag);
    CheckResult r = check_proof(pc.program, pc.logic, pc.proof);
    CHECK(r.ok);
    if (!r.ok) MESSAGE(pc.tag << " rejected at [" << r.path << "]: " << r.reason);
  }
}

TEST_CASE("eq main branch carries the published rule multiset") {
  const Proved& eq = proved("eq");
  auto got = multiset(main_branch(eq.proof));
  std::map<std::string, int> want = {{"cofix", 1}, {"dec-g", 1}, {"all-l", 2}, {"impl-l", 2},
                                     {"and-r", 2}, {"dec", 2},   {"init", 1}};
  CHECK(got == want);
  // the coinduction hypothesis is used: some Dec focuses hypothesis 0
  CHECK(count_nodes(eq.proof, [](const CupProof& n) {
          return n.rule == CupRule::Dec && n.hyp == 0;
        }) >= 1);
}

TEST_CASE("from lemma main branch carries the published rule multiset") {
  const Proved& lem = proved("from.lemma");
  auto got = multiset(main_branch(lem.proof));
  std::map<std::string, int> want = {{"cofix", 1}, {"all-rg", 1}, {"dec-g", 1}, {"all-l", 3},
                                     {"impl-l", 1}, {"dec", 1},   {"init", 1}};
  CHECK(got == want);
}

TEST_CASE("from lemma instantiates the clause at fromFun (s c)") {
  const Proved& lem = proved("from.lemma");
  REQUIRE(lem.proof.rule == CupRule::Cofix);
  REQUIRE(lem.proof.children.size() == 1);
  const CupProof& allrg = lem.proof.children[0];
  REQUIRE(allrg.rule == CupRule::AllRg);
  const std::string& c = allrg.fresh;
  REQUIRE_FALSE(c.empty());

  Signature ext = allrg.children.at(0).sequent.extended(lem.program.sig);
  Term want = parse_term(ext, Context{},
                         "(fix f : i -> i. \\y. scons y (f (s y))) (s " + c + ")");
  CHECK(count_nodes(lem.proof, [&](const CupProof& n) {
          return n.rule == CupRule::AllL && !n.witness.empty() && n.witness == want;
        }) >= 1);
}

TEST_CASE("from target proves the existential with witness fromFun 0") {
  const Proved& tgt = proved("from.target");
  Term want = parse_term(tgt.program.sig, Context{},
                         "(fix f : i -> i. \\y. scons y (f (s y))) 0");
  CHECK(count_nodes(tgt.proof, [&](const CupProof& n) {
          return n.rule == CupRule::ExistsR && n.witness == want;
        }) == 1);
}

TEST_CASE("gamma2: direct search exhausts by depth 12, the lemma route succeeds") {
  SourceFile src = load_corpus("gamma2.clp");
  LogicId cofohc = *LogicId::parse("cofohc");
  SearchConfig cfg = SearchConfig::for_logic(cofohc);
  cfg.max_depth = 12;
  SearchOutcome so = search(src.program, src.goals.at(0), cfg);
  CHECK_FALSE(so.proof.has_value());
  CHECK(so.exhausted_at <= 12);

  const Proved& lem = proved("gamma2.lemma");
  const Proved& tgt = proved("gamma2.target");
  CHECK(check_proof(lem.program, lem.logic, lem.proof).ok);
  CHECK(check_proof(tgt.program, tgt.logic, tgt.proof).ok);
}

TEST_CASE("colp reproduces the three-model comparison table") {
  auto run = [](const char* file, const char* query) {
    SourceFile src = load_corpus(file);
    const Signature& sig = src.program.sig;
    Context ctx;
    if (std::string(query).find('x') != std::string::npos) ctx.push("x", SimpleType());
    return colp_solve(src.program, parse_formula(sig, ctx, query));
  };

  SUBCASE("p a: id / FAIL / FAIL") {
    ColpAnswer a1 = run("gamma1.clp", "p a");
    CHECK(a1.success);
    CHECK(a1.subst.empty());
    CHECK_FALSE(run("gamma2.clp", "p a").success);
    CHECK_FALSE(run("gamma3.clp", "p a").success);
  }

  SUBCASE("p x: id / x = fix x. f x / x = fix x. f x") {
    ColpAnswer a1 = run("gamma1.clp", "p x");
    CHECK(a1.success);
    CHECK(a1.subst.empty());

    SourceFile g2 = load_corpus("gamma2.clp");
    Term want = parse_term(g2.program.sig, Context{}, "fix x. f x");
    for (const char* file : {"gamma2.clp", "gamma3.clp"}) {
      ColpAnswer a = run(file, "p x");
      CAPTURE(file);
      REQUIRE(a.success);
      REQUIRE(a.query_vars == std::vector<std::string>{"x"});
      const Term* bound = a.subst.find("x");
      REQUIRE(bound != nullptr);
      CHECK(*bound == want);  // structural equality is alpha-exact
    }
  }
}

TEST_CASE("colp answers re-prove coinductively after instantiation") {
  // the circular unifier x = fix x. f x turns the colp success into a
  // cofohc_fix proof obligation
  for (const char* file : {"gamma2.clp", "gamma3.clp"}) {
    SourceFile src = load_corpus(file);
    Context ctx;
    ctx.push("x", SimpleType());
    Formula query = parse_formula(src.program.sig, ctx, "p x");
    ColpAnswer a = colp_solve(src.program, query);
    REQUIRE(a.success);
    Formula inst = a.subst.apply(query);
    SearchOutcome so =
        search(src.program, inst, SearchConfig::for_logic(*LogicId::parse("cofohc_fix")));
    CAPTURE(file);
    CHECK(so.proof.has_value());
  }
}

TEST_CASE("stream query binds the rational stream") {
  SourceFile src = load_corpus("stream.clp");
  Context ctx;
  ctx.push("x", SimpleType());
  ColpAnswer a = colp_solve(src.program, parse_formula(src.program.sig, ctx, "stream x"));
  REQUIRE(a.success);
  const Term* bound = a.subst.find("x");
  REQUIRE(bound != nullptr);
  CHECK(*bound == parse_term(src.program.sig, Context{}, "fix x. scons 0 x"));
}

TEST_CASE("property: every found proof passes the checker (500 cases)") {
  Gen g(0x5eed0004);
  LogicId cofohc = *LogicId::parse("cofohc");
  int found = 0;
  for (int i = 0; i < 500; ++i) {
    Program p = gen_program(g);
    Formula goal = gen_goal(g, p.sig, true);
    SearchConfig cfg = SearchConfig::for_logic(cofohc);
    cfg.max_depth = 8;
    SearchOutcome so = search(p, goal, cfg);
    if (!so.proof) continue;
    ++found;
    CheckResult r = check_proof(p, cofohc, *so.proof);
    CAPTURE(i);
    CAPTURE(print_formula(goal));
    CHECK(r.ok);
    if (!r.ok) MESSAGE("case " << i << " at [" << r.path << "]: " << r.reason);
  }
  MESSAGE("proofs found: " << found);
  CHECK(found >= 100);  // the generator must keep the property non-vacuous
}
