#include "doctest.h"
#include "support.hpp"

#include "cup/kernel.hpp"
#include "cup/syntax.hpp"

using namespace cup;
using namespace cup::test;

namespace {
Term pt(const std::string& s) { return parse_term(nat_sig(), Context{}, s); }
}  // namespace

TEST_CASE("whnf unfolds fix-redexes one constructor at a time") {
  const Signature& sig = nat_sig();
  Term t = pt("(fix f : i -> i. \\y. scons y (f (s y))) 0");
  auto r = whnf(sig, t);
  REQUIRE(r.has_value());
  auto hf = head_normal_form(sig, t, Context{});
  REQUIRE(hf.has_value());
  CHECK(hf->head == "scons");
  CHECK(hf->args.size() == 2);
  CHECK(print_term(hf->args[0]) == "0");
}

TEST_CASE("convertible closes rational unfoldings") {
  const Signature& sig = nat_sig();
  Term a = pt("fix x. scons 0 x");
  Term b = pt("scons 0 (fix x. scons 0 x)");
  CHECK(convertible(sig, a, b) == Convertibility::Yes);
  Term c = pt("scons (s 0) (fix x. scons 0 x)");
  CHECK(convertible(sig, a, c) == Convertibility::No);
}

TEST_CASE("guardedness classification") {
  const Signature& sig = nat_sig();
  Context ctx;
  CHECK(is_guarded(sig, ctx, pt("fix x. scons 0 x")));
  CHECK(is_first_order_guarded(sig, ctx, pt("fix x. scons 0 x")));
  CHECK(is_guarded(sig, ctx, pt("fix f : i -> i. \\y. scons y (f (s y))")));
  // fix with a non-constructor head is not a guarded base term
  CHECK_FALSE(is_guarded(sig, ctx, pt("fix x. x")));
  CHECK_FALSE(is_guarded(sig, ctx, pt("fix f : i -> i. \\y. f (s y)")));
}

TEST_CASE("typing rejects ill-formed applications") {
  const Signature& sig = nat_sig();
  CHECK(infer_type(sig, Context{}, pt("scons 0")) == SimpleType::arrow(SimpleType(), SimpleType()));
  CHECK_THROWS_AS((void)infer_type(sig, Context{}, pt("0 0")), Error);
}

TEST_CASE("property: subject reduction under whnf (500 cases)") {
  const Signature& sig = nat_sig();
  Gen g(0x5eed0001);
  int fresh = 0, reduced = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = gen_typed(g, 4, &fresh);
    SimpleType ty = infer_type(sig, Context{}, t);
    auto r = whnf(sig, t);
    REQUIRE(r.has_value());  // every generated redex chain is productive
    ++reduced;
    CHECK(infer_type(sig, Context{}, *r) == ty);
  }
  CHECK(reduced == 500);
}

TEST_CASE("property: hnf totality on guarded terms (500 cases)") {
  const Signature& sig = nat_sig();
  Gen g(0x5eed0002);
  int fresh = 0;
  for (int i = 0; i < 500; ++i) {
    Term t = gen_guarded(g, {}, 4, &fresh);
    REQUIRE(is_guarded(sig, Context{}, t));
    auto hf = head_normal_form(sig, Context{}, t);
    REQUIRE(hf.has_value());
    CHECK_FALSE(hf->is_var);
    CHECK(sig.has_constant(hf->head));
  }
}

TEST_CASE("property: substitution keeps guarded terms guarded (500 cases)") {
  const Signature& sig = nat_sig();
  Gen g(0x5eed0003);
  int fresh = 0;
  Context ctx;
  ctx.push("x", SimpleType());
  for (int i = 0; i < 500; ++i) {
    Term t = gen_guarded(g, {"x"}, 3, &fresh);
    Term u = gen_guarded(g, {}, 3, &fresh);
    REQUIRE(is_guarded(sig, ctx, t));
    REQUIRE(is_guarded(sig, Context{}, u));
    CHECK(is_guarded(sig, Context{}, t.subst("x", u)));
  }
}
