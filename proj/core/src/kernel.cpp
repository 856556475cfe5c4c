#include "cup/kernel.hpp"

#include <set>
#include <utility>

#include "cup/error.hpp"

namespace cup {

namespace {

SimpleType infer_rec(const Signature& sig, const Context& ctx,
                     std::vector<SimpleType>& bound, const Term& m) {
  switch (m.kind()) {
    case TermKind::BoundVar: {
      int i = m.index();
      if (i < 0 || i >= static_cast<int>(bound.size()))
        fail(Errc::UnboundVariable, "dangling binder index");
      return bound[bound.size() - 1 - i];
    }
    case TermKind::FreeVar: {
      if (auto t = ctx.find(m.name())) return *t;
      fail(Errc::UnboundVariable, "variable '" + m.name() + "' not in context");
    }
    case TermKind::Const: {
      if (auto t = sig.find_constant(m.name())) return *t;
      fail(Errc::UnknownConstant, "constant '" + m.name() + "' not in signature");
    }
    case TermKind::App: {
      SimpleType ft = infer_rec(sig, ctx, bound, m.fn());
      if (!ft.is_arrow()) fail(Errc::ArrowMismatch, "application head has base type");
      SimpleType at = infer_rec(sig, ctx, bound, m.arg());
      if (!(at == ft.dom()))
        fail(Errc::ArrowMismatch, "argument type " + at.to_string() +
                                      " does not match " + ft.dom().to_string());
      return ft.cod();
    }
    case TermKind::Lam: {
      bound.push_back(m.ann());
      SimpleType bt = infer_rec(sig, ctx, bound, m.body());
      bound.pop_back();
      return SimpleType::arrow(m.ann(), bt);
    }
    case TermKind::Fix: {
      bound.push_back(m.ann());
      SimpleType bt = infer_rec(sig, ctx, bound, m.body());
      bound.pop_back();
      if (!(bt == m.ann()))
        fail(Errc::ArrowMismatch, "fix body has type " + bt.to_string() +
                                      ", annotation says " + m.ann().to_string());
      return m.ann();
    }
  }
  fail(Errc::ArrowMismatch, "ill-formed term");
}

// Shared-budget weak head reduction; used by whnf and convertible.
std::optional<Term> whnf_budget(const Term& m, int& fuel) {
  Term cur = m;
  for (;;) {
    std::vector<Term> args;
    Term head = cur.spine(&args);
    if (head.kind() == TermKind::Lam && !args.empty()) {
      if (fuel <= 0) return std::nullopt;
      --fuel;
      Term reduced = head.open(args.front());
      cur = Term::app(reduced, std::vector<Term>(args.begin() + 1, args.end()));
    } else if (head.kind() == TermKind::Fix) {
      if (fuel <= 0) return std::nullopt;
      --fuel;
      cur = Term::app(head.open(head), args);
    } else {
      return cur;
    }
  }
}

struct ConvEnv {
  const Signature& sig;
  int fuel;
  std::set<std::pair<std::string, std::string>> in_progress;
  std::set<std::pair<std::string, std::string>> refuted;
  int fresh = 0;
};

Convertibility conv(ConvEnv& env, const Term& a, const Term& b) {
  if (a == b) return Convertibility::Yes;
  if (env.fuel <= 0) return Convertibility::Unknown;
  --env.fuel;

  std::pair<std::string, std::string> key(a.key(), b.key());
  if (env.refuted.count(key)) return Convertibility::No;
  if (env.in_progress.count(key)) return Convertibility::Yes;
  env.in_progress.insert(key);

  auto done = [&](Convertibility r) {
    env.in_progress.erase(key);
    if (r == Convertibility::No) env.refuted.insert(key);
    return r;
  };

  std::optional<Term> wa = whnf_budget(a, env.fuel);
  std::optional<Term> wb = whnf_budget(b, env.fuel);
  if (!wa || !wb) return done(Convertibility::Unknown);
  if (*wa == *wb) return done(Convertibility::Yes);

  bool la = wa->kind() == TermKind::Lam, lb = wb->kind() == TermKind::Lam;
  if (la != lb) return done(Convertibility::No);
  if (la) {
    Term v = Term::var("%cv" + std::to_string(env.fresh++));
    return done(conv(env, wa->open(v), wb->open(v)));
  }

  std::vector<Term> xs, ys;
  Term ha = wa->spine(&xs);
  Term hb = wb->spine(&ys);
  if (ha.kind() != hb.kind()) return done(Convertibility::No);
  switch (ha.kind()) {
    case TermKind::Const:
    case TermKind::FreeVar:
      if (ha.name() != hb.name()) return done(Convertibility::No);
      break;
    case TermKind::BoundVar:
      if (ha.index() != hb.index()) return done(Convertibility::No);
      break;
    default:
      return done(Convertibility::Unknown);
  }
  if (xs.size() != ys.size()) return done(Convertibility::No);

  bool unknown = false;
  for (size_t i = 0; i < xs.size(); ++i) {
    Convertibility r = conv(env, xs[i], ys[i]);
    if (r == Convertibility::No) return done(Convertibility::No);
    if (r == Convertibility::Unknown) unknown = true;
  }
  return done(unknown ? Convertibility::Unknown : Convertibility::Yes);
}

// Fresh printable-but-unparsable name; '%' starts a comment in the surface
// syntax so user identifiers can never collide.
std::string fresh_for(const Context& ctx, const char* tag) {
  return std::string("%") + tag + std::to_string(ctx.vars().size());
}

}  // namespace

SimpleType infer_type(const Signature& sig, const Context& ctx, const Term& m) {
  std::vector<SimpleType> bound;
  return infer_rec(sig, ctx, bound, m);
}

std::optional<Term> whnf(const Signature& sig, const Term& m, int fuel) {
  (void)sig;
  return whnf_budget(m, fuel);
}

Convertibility convertible(const Signature& sig, const Term& m, const Term& n, int fuel) {
  ConvEnv env{sig, fuel, {}, {}, 0};
  return conv(env, m, n);
}

std::optional<SimpleType> guarded_base_type(const Signature& sig, const Context& ctx,
                                            const Term& m) {
  switch (m.kind()) {
    case TermKind::FreeVar: {
      auto t = ctx.find(m.name());
      if (t && t->order() <= 1) return t;
      return std::nullopt;
    }
    case TermKind::Const:
      return sig.find_constant(m.name());
    case TermKind::App: {
      auto ft = guarded_base_type(sig, ctx, m.fn());
      if (!ft || !ft->is_arrow()) return std::nullopt;
      auto at = guarded_base_type(sig, ctx, m.arg());
      if (!at || !(*at == ft->dom())) return std::nullopt;
      return ft->cod();
    }
    case TermKind::Fix: {
      SimpleType tau = m.ann();
      if (tau.order() > 1) return std::nullopt;
      auto ar = tau.arity();
      if (!ar) return std::nullopt;
      Context ectx = ctx.with(fresh_for(ctx, "gbx"), tau);
      Term body = m.open(Term::var(ectx.vars().back().first));
      for (int i = 0; i < *ar; ++i) {
        if (body.kind() != TermKind::Lam || !body.ann().is_base()) return std::nullopt;
        std::string y = fresh_for(ectx, "gby");
        ectx.push(y, SimpleType::base());
        body = body.open(Term::var(y));
      }
      std::vector<Term> args;
      Term head = body.spine(&args);
      if (head.kind() != TermKind::Const) return std::nullopt;
      auto ft = sig.find_constant(head.name());
      if (!ft) return std::nullopt;
      auto far = ft->arity();
      if (!far || args.size() != static_cast<size_t>(*far)) return std::nullopt;
      for (const Term& a : args) {
        auto at = guarded_base_type(sig, ectx, a);
        if (!at || !at->is_base()) return std::nullopt;
      }
      return tau;
    }
    case TermKind::Lam:
    case TermKind::BoundVar:
      return std::nullopt;
  }
  return std::nullopt;
}

bool is_guarded_base(const Signature& sig, const Context& ctx, const Term& m,
                     const SimpleType& ty) {
  auto t = guarded_base_type(sig, ctx, m);
  return t && *t == ty;
}

bool is_guarded(const Signature& sig, const Context& ctx, const Term& m) {
  if (!m.contains_fix()) return true;
  switch (m.kind()) {
    case TermKind::Fix:
      return guarded_base_type(sig, ctx, m).has_value();
    case TermKind::App:
      return is_guarded(sig, ctx, m.fn()) && is_guarded(sig, ctx, m.arg());
    case TermKind::Lam: {
      Context ectx = ctx.with(fresh_for(ctx, "g"), m.ann());
      return is_guarded(sig, ectx, m.open(Term::var(ectx.vars().back().first)));
    }
    default:
      return true;
  }
}

bool is_first_order_guarded(const Signature& sig, const Context& ctx, const Term& m) {
  if (!ctx.all_order_zero()) return false;
  try {
    if (!infer_type(sig, ctx, m).is_base()) return false;
  } catch (const Error&) {
    return false;
  }
  return is_guarded(sig, ctx, m);
}

std::optional<HeadForm> head_normal_form(const Signature& sig, const Context& ctx,
                                         const Term& m, int fuel) {
  (void)ctx;
  std::optional<Term> w = whnf(sig, m, fuel);
  if (!w) return std::nullopt;
  HeadForm h;
  Term head = w->spine(&h.args);
  if (head.kind() == TermKind::Const) {
    h.head = head.name();
    return h;
  }
  if (head.kind() == TermKind::FreeVar) {
    h.is_var = true;
    h.head = head.name();
    return h;
  }
  return std::nullopt;
}

}  // namespace cup
