#include <benchmark/benchmark.h>

#include "cup/herbrand.hpp"
#include "cup/ifol.hpp"
#include "cup/kernel.hpp"
#include "cup/prover.hpp"
#include "cup/syntax.hpp"
#include "cup/unify.hpp"

using namespace cup;

namespace {

const char* kEq =
    "const Int : i. const odd : i -> i. const even : i -> i. pred eq : i -> o.\n"
    "clause k_int: eq Int.\n"
    "clause k_odd: forall x. eq x /\\ eq (even x) => eq (odd x).\n"
    "clause k_even: forall x. eq x /\\ eq (odd x) => eq (even x).\n";

const char* kFrom =
    "const 0 : i. const s : i -> i. const scons : i -> i -> i.\n"
    "pred from : i -> i -> o.\n"
    "clause k_from: forall x y. from (s x) y => from x (scons x y).\n";

const char* kStream =
    "const 0 : i. const s : i -> i. const scons : i -> i -> i.\n"
    "pred nat : i -> o. pred stream : i -> o.\n"
    "clause k_z: nat 0.\n"
    "clause k_s: forall x. nat x => nat (s x).\n"
    "clause k_str: forall x y. nat x /\\ stream y => stream (scons x y).\n";

void bm_search_eq(benchmark::State& state) {
  Program p = parse_program(kEq);
  Formula goal = parse_formula(p.sig, Context{}, "eq (odd Int)");
  SearchConfig cfg = SearchConfig::for_logic(*LogicId::parse("cofohc"));
  for (auto _ : state) {
    SearchOutcome out = search(p, goal, cfg);
    benchmark::DoNotOptimize(out.proof);
  }
}
BENCHMARK(bm_search_eq);

void bm_search_from_lemma(benchmark::State& state) {
  Program p = parse_program(kFrom);
  Formula lemma = parse_formula(p.sig, Context{},
                                "forall x. from x ((fix f : i -> i. \\y. scons y (f (s y))) x)");
  Formula target = parse_formula(p.sig, Context{}, "exists y. from 0 y");
  SearchConfig cfg = SearchConfig::for_logic(*LogicId::parse("cohohh_fix"));
  for (auto _ : state) {
    LemmaOutcome out = prove_with_lemma(p, "lem", lemma, target, cfg);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(bm_search_from_lemma);

void bm_translate_eq(benchmark::State& state) {
  Program p = parse_program(kEq);
  Formula goal = parse_formula(p.sig, Context{}, "eq (odd Int)");
  SearchOutcome out = search(p, goal, SearchConfig::for_logic(*LogicId::parse("cofohc")));
  for (auto _ : state) {
    IFolProof t = translate(p, *out.proof);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(bm_translate_eq);

void bm_gfp_stream_k3(benchmark::State& state) {
  Program p = parse_program(kStream);
  for (auto _ : state) {
    Interpretation m = gfp_truncated(p, 3);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(bm_gfp_stream_k3);

void bm_unify_rational(benchmark::State& state) {
  Program p = parse_program(kStream);
  Term a = parse_term(p.sig, Context{}, "fix x. scons 0 x");
  Term b = parse_term(p.sig, Context{}, "scons 0 (fix x. scons 0 x)");
  for (auto _ : state) {
    UnifyOutcome u = unify(p.sig, a, b, UnifyMode::Rational);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(bm_unify_rational);

void bm_whnf_fix(benchmark::State& state) {
  Program p = parse_program(kFrom);
  Term t = parse_term(p.sig, Context{}, "(fix f : i -> i. \\y. scons y (f (s y))) 0");
  for (auto _ : state) {
    auto r = whnf(p.sig, t);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bm_whnf_fix);

}  // namespace

BENCHMARK_MAIN();
