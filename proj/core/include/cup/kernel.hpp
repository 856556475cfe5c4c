#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cup/signature.hpp"
#include "cup/term.hpp"

namespace cup {

inline constexpr int kDefaultFuel = 10000;

/// Syntax-directed typing. Throws UnboundVariable / UnknownConstant /
/// ArrowMismatch on failure.
SimpleType infer_type(const Signature& sig, const Context& ctx, const Term& m);

/// Weak head normal form: repeatedly contracts head β- and fix-redexes.
/// nullopt once the step budget is spent.
std::optional<Term> whnf(const Signature& sig, const Term& m, int fuel = kDefaultFuel);

enum class Convertibility { Yes, No, Unknown };

/// Semi-decided conversion: whnf both sides, compare heads, descend into
/// arguments. Visited pairs are assumed equal, so rational unfoldings close.
/// No is definitive (rigid head clash); Unknown means the fuel ran out.
Convertibility convertible(const Signature& sig, const Term& m, const Term& n,
                           int fuel = kDefaultFuel);

/// Guarded base terms: type-driven inference returning the witnessing type.
/// Rules: context variable of order ≤ 1; signature symbol; application;
/// fix x:τ. λȳ. f M̄ with f ∈ Σ, ord(τ) ≤ 1 and each Mᵢ guarded base at ι.
std::optional<SimpleType> guarded_base_type(const Signature& sig, const Context& ctx,
                                            const Term& m);
bool is_guarded_base(const Signature& sig, const Context& ctx, const Term& m,
                     const SimpleType& ty);

/// Guarded terms: every fix-subterm is a guarded base term in its ambient
/// context. Fix-free terms are guarded outright.
bool is_guarded(const Signature& sig, const Context& ctx, const Term& m);

/// Guarded, of base type, and every context variable has order 0.
bool is_first_order_guarded(const Signature& sig, const Context& ctx, const Term& m);

struct HeadForm {
  bool is_var = false;
  std::string head;
  std::vector<Term> args;
};

/// whnf followed by spine decomposition: a signature symbol with its
/// arguments, or a context variable. nullopt on fuel exhaustion.
std::optional<HeadForm> head_normal_form(const Signature& sig, const Context& ctx,
                                         const Term& m, int fuel = kDefaultFuel);

}  // namespace cup
