#include <map>

#include "cup/error.hpp"
#include "cup/ifol.hpp"
#include "cup/logic.hpp"

namespace cup {

const char* ifol_rule_name(IFolRule r) {
  switch (r) {
    case IFolRule::Proj: return "proj";
    case IFolRule::Conv: return "conv";
    case IFolRule::TopI: return "top-i";
    case IFolRule::AndI: return "and-i";
    case IFolRule::AndE1: return "and-e1";
    case IFolRule::AndE2: return "and-e2";
    case IFolRule::OrI1: return "or-i1";
    case IFolRule::OrI2: return "or-i2";
    case IFolRule::OrE: return "or-e";
    case IFolRule::ImplI: return "impl-i";
    case IFolRule::ImplE: return "impl-e";
    case IFolRule::AllI: return "all-i";
    case IFolRule::AllE: return "all-e";
    case IFolRule::ExI: return "ex-i";
    case IFolRule::ExE: return "ex-e";
    case IFolRule::Next: return "next";
    case IFolRule::Mon: return "mon";
    case IFolRule::FP: return "fp";
    case IFolRule::Weak: return "weak";
    case IFolRule::MonL: return "mon-l";
    case IFolRule::LaterAndR: return "later-and-r";
    case IFolRule::LaterAndL: return "later-and-l";
    case IFolRule::LaterAllR: return "later-all-r";
    case IFolRule::LaterAllL: return "later-all-l";
    case IFolRule::AndLaterIntro: return "and-later-intro";
    case IFolRule::AllLaterIntro: return "all-later-intro";
  }
  return "?";
}

std::optional<IFolRule> parse_ifol_rule(const std::string& name) {
  static const std::map<std::string, IFolRule> table = {
      {"proj", IFolRule::Proj},
      {"conv", IFolRule::Conv},
      {"top-i", IFolRule::TopI},
      {"and-i", IFolRule::AndI},
      {"and-e1", IFolRule::AndE1},
      {"and-e2", IFolRule::AndE2},
      {"or-i1", IFolRule::OrI1},
      {"or-i2", IFolRule::OrI2},
      {"or-e", IFolRule::OrE},
      {"impl-i", IFolRule::ImplI},
      {"impl-e", IFolRule::ImplE},
      {"all-i", IFolRule::AllI},
      {"all-e", IFolRule::AllE},
      {"ex-i", IFolRule::ExI},
      {"ex-e", IFolRule::ExE},
      {"next", IFolRule::Next},
      {"mon", IFolRule::Mon},
      {"fp", IFolRule::FP},
      {"weak", IFolRule::Weak},
      {"mon-l", IFolRule::MonL},
      {"later-and-r", IFolRule::LaterAndR},
      {"later-and-l", IFolRule::LaterAndL},
      {"later-all-r", IFolRule::LaterAllR},
      {"later-all-l", IFolRule::LaterAllL},
      {"and-later-intro", IFolRule::AndLaterIntro},
      {"all-later-intro", IFolRule::AllLaterIntro},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool ifol_rule_primitive(IFolRule r) { return r < IFolRule::Weak; }

Signature IFolSequent::extended(const Signature& base) const {
  Signature out = base;
  for (const auto& [c, ty] : ctx) out.add_constant(c, ty);
  return out;
}

bool IFolSequent::operator==(const IFolSequent& o) const {
  return ctx == o.ctx && delta == o.delta && goal == o.goal;
}

size_t IFolProof::size() const {
  size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

namespace {

Convertibility fconv(const Signature& sig, const Formula& f, const Formula& g, int fuel,
                     int depth) {
  if (f.kind() != g.kind()) return Convertibility::No;
  auto both = [](Convertibility a, Convertibility b) {
    if (a == Convertibility::No || b == Convertibility::No) return Convertibility::No;
    if (a == Convertibility::Unknown || b == Convertibility::Unknown)
      return Convertibility::Unknown;
    return Convertibility::Yes;
  };
  switch (f.kind()) {
    case FormulaKind::Top: return Convertibility::Yes;
    case FormulaKind::Atom: {
      if (f.pred() != g.pred() || f.args().size() != g.args().size())
        return Convertibility::No;
      Convertibility acc = Convertibility::Yes;
      for (size_t i = 0; i < f.args().size(); ++i)
        acc = both(acc, convertible(sig, f.args()[i], g.args()[i], fuel));
      return acc;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
      return both(fconv(sig, f.left(), g.left(), fuel, depth),
                  fconv(sig, f.right(), g.right(), fuel, depth));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (!(f.var_type() == g.var_type())) return Convertibility::No;
      Term c = Term::constant("%cv" + std::to_string(depth));
      return fconv(sig, f.open(c), g.open(c), fuel, depth + 1);
    }
    case FormulaKind::Later:
      return fconv(sig, f.body(), g.body(), fuel, depth);
  }
  return Convertibility::No;
}

}  // namespace

Convertibility formula_convertible(const Signature& sig, const Formula& f,
                                   const Formula& g, int fuel) {
  return fconv(sig, f, g, fuel, 0);
}

namespace {

struct IFolChecker {
  const Signature& sig;
  int fuel = kDefaultFuel;

  struct Violation {
    std::string path;
    std::string reason;
  };

  [[noreturn]] void bad(const std::string& path, const std::string& reason) {
    throw Violation{path, reason};
  }

  void check_witness(const std::string& path, const Signature& ext, const Term& m,
                     const SimpleType& ty) {
    if (!m.free_vars().empty()) bad(path, "witness is not closed");
    auto gb = guarded_base_type(ext, Context{}, m);
    if (!gb) bad(path, "witness is not guarded-base");
    if (!(*gb == ty)) bad(path, "witness type mismatch: expected " + ty.to_string());
  }

  void fresh_ok(const std::string& path, const Signature& ext, const std::string& c) {
    if (c.empty()) bad(path, "missing eigenvariable name");
    if (ext.has_constant(c) || ext.has_predicate(c))
      bad(path, "eigenvariable not fresh: " + c);
  }

  void expect_children(const std::string& path, const IFolProof& n, size_t count) {
    if (n.children.size() != count)
      bad(path, std::string(ifol_rule_name(n.rule)) + ": expected " + std::to_string(count) +
                    " premise(s), got " + std::to_string(n.children.size()));
  }

  void child(const std::string& path, const IFolProof& n, size_t i, IFolSequent s) {
    node(path.empty() ? std::to_string(i) : path + "." + std::to_string(i), n.children[i],
         std::move(s));
  }

  void node(const std::string& path, const IFolProof& n, const IFolSequent& expect) {
    if (!(n.sequent == expect)) bad(path, "stored sequent differs from derived sequent");
    const IFolSequent& s = n.sequent;
    if (!ifol_rule_primitive(n.rule)) {
      IFolProof ex;
      try {
        ex = expand_derived(sig, n);
      } catch (const Error& e) {
        bad(path, std::string(ifol_rule_name(n.rule)) + ": " + e.what());
      }
      node(path, ex, s);
      return;
    }
    Signature ext = s.extended(sig);
    switch (n.rule) {
      case IFolRule::Proj: {
        expect_children(path, n, 0);
        if (n.index < 0 || n.index >= static_cast<int>(s.delta.size()))
          bad(path, "proj: assumption index out of range");
        if (!(s.delta[n.index] == s.goal))
          bad(path, "proj: selected assumption differs from the goal");
        return;
      }
      case IFolRule::Conv: {
        expect_children(path, n, 1);
        Formula from = n.children[0].sequent.goal;
        Convertibility c = formula_convertible(ext, from, s.goal, fuel);
        if (c == Convertibility::No) bad(path, "conv: premise and goal are not convertible");
        if (c == Convertibility::Unknown)
          bad(path, "conv: convertibility could not be decided");
        IFolSequent e = s;
        e.goal = from;
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::TopI:
        if (s.goal.kind() != FormulaKind::Top) bad(path, "top-i: goal is not top");
        expect_children(path, n, 0);
        return;
      case IFolRule::AndI: {
        if (s.goal.kind() != FormulaKind::And) bad(path, "and-i: goal is not a conjunction");
        expect_children(path, n, 2);
        IFolSequent l = s, r = s;
        l.goal = s.goal.left();
        r.goal = s.goal.right();
        child(path, n, 0, std::move(l));
        child(path, n, 1, std::move(r));
        return;
      }
      case IFolRule::AndE1:
      case IFolRule::AndE2: {
        expect_children(path, n, 1);
        Formula from = n.children[0].sequent.goal;
        if (from.kind() != FormulaKind::And) bad(path, "and-e: premise is not a conjunction");
        Formula kept = n.rule == IFolRule::AndE1 ? from.left() : from.right();
        if (!(kept == s.goal)) bad(path, "and-e: goal is not the selected component");
        IFolSequent e = s;
        e.goal = from;
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::OrI1:
      case IFolRule::OrI2: {
        if (s.goal.kind() != FormulaKind::Or) bad(path, "or-i: goal is not a disjunction");
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.goal = n.rule == IFolRule::OrI1 ? s.goal.left() : s.goal.right();
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::OrE: {
        expect_children(path, n, 2);
        if (s.delta.empty() || s.delta.back().kind() != FormulaKind::Or)
          bad(path, "or-e: last assumption is not a disjunction");
        Formula d = s.delta.back();
        IFolSequent l = s, r = s;
        l.delta.back() = d.left();
        r.delta.back() = d.right();
        child(path, n, 0, std::move(l));
        child(path, n, 1, std::move(r));
        return;
      }
      case IFolRule::ImplI: {
        if (s.goal.kind() != FormulaKind::Implies) bad(path, "impl-i: goal is not an implication");
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.delta.push_back(s.goal.left());
        e.goal = s.goal.right();
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::ImplE: {
        expect_children(path, n, 2);
        Formula f = n.children[0].sequent.goal;
        if (f.kind() != FormulaKind::Implies) bad(path, "impl-e: major premise is not an implication");
        if (!(f.right() == s.goal)) bad(path, "impl-e: goal is not the consequent");
        IFolSequent maj = s, min = s;
        maj.goal = f;
        min.goal = f.left();
        child(path, n, 0, std::move(maj));
        child(path, n, 1, std::move(min));
        return;
      }
      case IFolRule::AllI: {
        if (s.goal.kind() != FormulaKind::Forall) bad(path, "all-i: goal is not a forall");
        fresh_ok(path, ext, n.fresh);
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.ctx.emplace_back(n.fresh, s.goal.var_type());
        e.goal = s.goal.open(Term::constant(n.fresh));
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::AllE: {
        expect_children(path, n, 1);
        Formula from = n.children[0].sequent.goal;
        if (from.kind() != FormulaKind::Forall) bad(path, "all-e: premise is not a forall");
        check_witness(path, ext, n.witness, from.var_type());
        if (!(from.open(n.witness) == s.goal))
          bad(path, "all-e: goal is not the instantiated premise");
        IFolSequent e = s;
        e.goal = from;
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::ExI: {
        if (s.goal.kind() != FormulaKind::Exists) bad(path, "ex-i: goal is not an exists");
        check_witness(path, ext, n.witness, s.goal.var_type());
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.goal = s.goal.open(n.witness);
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::ExE: {
        expect_children(path, n, 1);
        if (s.delta.empty() || s.delta.back().kind() != FormulaKind::Exists)
          bad(path, "ex-e: last assumption is not an exists");
        Formula d = s.delta.back();
        fresh_ok(path, ext, n.fresh);
        IFolSequent e = s;
        e.ctx.emplace_back(n.fresh, d.var_type());
        e.delta.back() = d.open(Term::constant(n.fresh));
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::Next: {
        if (s.goal.kind() != FormulaKind::Later) bad(path, "next: goal is not a later");
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.goal = s.goal.body();
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::Mon: {
        if (s.goal.kind() != FormulaKind::Implies ||
            s.goal.left().kind() != FormulaKind::Later ||
            s.goal.right().kind() != FormulaKind::Later)
          bad(path, "mon: goal is not an implication between laters");
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.goal = Formula::later(Formula::implies(s.goal.left().body(), s.goal.right().body()));
        child(path, n, 0, std::move(e));
        return;
      }
      case IFolRule::FP: {
        expect_children(path, n, 1);
        IFolSequent e = s;
        e.delta.push_back(Formula::later(s.goal));
        child(path, n, 0, std::move(e));
        return;
      }
      default:
        bad(path, std::string(ifol_rule_name(n.rule)) + ": unreachable");
    }
  }
};

}  // namespace

CheckResult check_ifol_proof(const Signature& sig, const IFolProof& t, int fuel) {
  IFolChecker ck{sig, fuel};
  try {
    Signature ext = t.sequent.extended(sig);
    Context none;
    for (const auto& d : t.sequent.delta) well_formed(ext, none, d, /*allow_later=*/true);
    well_formed(ext, none, t.sequent.goal, /*allow_later=*/true);
    ck.node("", t, t.sequent);
    return CheckResult{};
  } catch (const IFolChecker::Violation& v) {
    return CheckResult::failure(v.path, v.reason);
  } catch (const Error& e) {
    return CheckResult::failure("", std::string(errc_name(e.code())) + ": " + e.what());
  }
}

}  // namespace cup
