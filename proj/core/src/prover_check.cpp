#include <map>

#include "cup/error.hpp"
#include "cup/kernel.hpp"
#include "cup/prover.hpp"

namespace cup {

const char* cup_rule_name(CupRule r) {
  switch (r) {
    case CupRule::Cofix: return "cofix";
    case CupRule::DecG: return "dec-g";
    case CupRule::AllRg: return "all-rg";
    case CupRule::AndRg: return "and-rg";
    case CupRule::ImplRg: return "impl-rg";
    case CupRule::TopR: return "top-r";
    case CupRule::AndR: return "and-r";
    case CupRule::OrR1: return "or-r1";
    case CupRule::OrR2: return "or-r2";
    case CupRule::ExistsR: return "exists-r";
    case CupRule::AllR: return "all-r";
    case CupRule::ImplR: return "impl-r";
    case CupRule::Dec: return "dec";
    case CupRule::Init: return "init";
    case CupRule::ImplL: return "impl-l";
    case CupRule::AndL1: return "and-l1";
    case CupRule::AndL2: return "and-l2";
    case CupRule::AllL: return "all-l";
  }
  return "?";
}

std::optional<CupRule> parse_cup_rule(const std::string& name) {
  static const std::map<std::string, CupRule> table = {
      {"cofix", CupRule::Cofix},     {"dec-g", CupRule::DecG},
      {"all-rg", CupRule::AllRg},    {"and-rg", CupRule::AndRg},
      {"impl-rg", CupRule::ImplRg},  {"top-r", CupRule::TopR},
      {"and-r", CupRule::AndR},      {"or-r1", CupRule::OrR1},
      {"or-r2", CupRule::OrR2},      {"exists-r", CupRule::ExistsR},
      {"all-r", CupRule::AllR},      {"impl-r", CupRule::ImplR},
      {"dec", CupRule::Dec},         {"init", CupRule::Init},
      {"impl-l", CupRule::ImplL},    {"and-l1", CupRule::AndL1},
      {"and-l2", CupRule::AndL2},    {"all-l", CupRule::AllL},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const char* sequent_kind_name(SequentKind k) {
  switch (k) {
    case SequentKind::CoRoot: return "co-root";
    case SequentKind::Guarded: return "guarded";
    case SequentKind::Goal: return "goal";
    case SequentKind::Focused: return "focused";
  }
  return "?";
}

Signature CupSequent::extended(const Signature& base) const {
  Signature out = base;
  for (const auto& [c, ty] : eigen) out.add_constant(c, ty);
  return out;
}

bool CupSequent::operator==(const CupSequent& o) const {
  if (kind != o.kind || eigen != o.eigen) return false;
  if (!(extra == o.extra) || !(hyps == o.hyps)) return false;
  return goal == o.goal && focus == o.focus;
}

size_t CupProof::size() const {
  size_t n = 1;
  for (const auto& c : children) n += c.size();
  return n;
}

CheckResult CheckResult::failure(std::string path, std::string reason) {
  CheckResult r;
  r.ok = false;
  r.path = std::move(path);
  r.reason = std::move(reason);
  return r;
}

namespace {

struct Checker {
  const Program& p;
  const LogicId& logic;
  int fuel = kDefaultFuel;

  struct Violation {
    std::string path;
    std::string reason;
  };

  [[noreturn]] void bad(const std::string& path, const std::string& reason) {
    throw Violation{path, reason};
  }

  Convertibility atom_conv(const Signature& sig, const Formula& a, const Formula& b) {
    if (a.kind() == FormulaKind::Top && b.kind() == FormulaKind::Top)
      return Convertibility::Yes;
    if (a.kind() != FormulaKind::Atom || b.kind() != FormulaKind::Atom)
      return Convertibility::No;
    if (a.pred() != b.pred() || a.args().size() != b.args().size())
      return Convertibility::No;
    Convertibility acc = Convertibility::Yes;
    for (size_t i = 0; i < a.args().size(); ++i) {
      Convertibility c = convertible(sig, a.args()[i], b.args()[i], fuel);
      if (c == Convertibility::No) return Convertibility::No;
      if (c == Convertibility::Unknown) acc = Convertibility::Unknown;
    }
    return acc;
  }

  void check_witness(const std::string& path, const Signature& sig, const Term& n,
                     const SimpleType& ty) {
    if (!n.free_vars().empty()) bad(path, "witness is not closed");
    auto gb = guarded_base_type(sig, Context{}, n);
    if (!gb) bad(path, "witness is not guarded-base");
    if (!(*gb == ty)) bad(path, "witness type mismatch: expected " + ty.to_string());
  }

  std::string fresh_ok(const std::string& path, const Signature& ext, const std::string& c) {
    if (c.empty()) bad(path, "missing eigenvariable name");
    if (ext.has_constant(c) || ext.has_predicate(c))
      bad(path, "eigenvariable not fresh: " + c);
    return c;
  }

  Formula focus_of(const std::string& path, const CupProof& n, const CupSequent& s,
                   bool program_only) {
    int picks = (n.clause.empty() ? 0 : 1) + (n.hyp >= 0 ? 1 : 0) + (n.extra_idx >= 0 ? 1 : 0);
    if (picks != 1) bad(path, "focus selection must name exactly one of clause/hyp/extra");
    if (!n.clause.empty()) {
      const HornClause* c = p.find(n.clause);
      if (!c) bad(path, "unknown clause: " + n.clause);
      return c->to_formula();
    }
    if (program_only) bad(path, "guarded resolution must pick a program clause");
    if (n.hyp >= 0) {
      if (n.hyp >= static_cast<int>(s.hyps.size())) bad(path, "hypothesis index out of range");
      return s.hyps[n.hyp];
    }
    if (n.extra_idx >= static_cast<int>(s.extra.size())) bad(path, "extra index out of range");
    return s.extra[n.extra_idx];
  }

  void expect_children(const std::string& path, const CupProof& n, size_t count) {
    if (n.children.size() != count)
      bad(path, std::string(cup_rule_name(n.rule)) + ": expected " + std::to_string(count) +
                    " premise(s), got " + std::to_string(n.children.size()));
  }

  void node(const std::string& path, const CupProof& n, const CupSequent& expect) {
    if (!(n.sequent == expect)) bad(path, "stored sequent differs from derived sequent");
    const CupSequent& s = n.sequent;
    Signature ext = s.extended(p.sig);
    switch (s.kind) {
      case SequentKind::CoRoot: {
        if (n.rule != CupRule::Cofix) bad(path, "a co-root sequent only concludes cofix");
        Context none;
        if (!is_coinduction_goal(logic, ext, none, s.goal))
          bad(path, "cofix goal is not a coinduction goal of " + logic.name());
        expect_children(path, n, 1);
        CupSequent child = s;
        child.kind = SequentKind::Guarded;
        child.hyps.push_back(s.goal);
        node(path.empty() ? "0" : path + ".0", n.children[0], child);
        return;
      }
      case SequentKind::Guarded: return guarded(path, n, s, ext);
      case SequentKind::Goal: return goal_phase(path, n, s, ext);
      case SequentKind::Focused: return focused(path, n, s, ext);
    }
  }

  void child(const std::string& path, const CupProof& n, size_t i, CupSequent s) {
    node(path.empty() ? std::to_string(i) : path + "." + std::to_string(i), n.children[i],
         std::move(s));
  }

  void guarded(const std::string& path, const CupProof& n, const CupSequent& s,
               const Signature& ext) {
    switch (n.rule) {
      case CupRule::AllRg: {
        if (s.goal.kind() != FormulaKind::Forall) bad(path, "all-rg: goal is not a forall");
        fresh_ok(path, ext, n.fresh);
        expect_children(path, n, 1);
        CupSequent c = s;
        c.eigen.emplace_back(n.fresh, s.goal.var_type());
        c.goal = s.goal.open(Term::constant(n.fresh));
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::AndRg: {
        if (s.goal.kind() != FormulaKind::And) bad(path, "and-rg: goal is not a conjunction");
        expect_children(path, n, 2);
        CupSequent l = s, r = s;
        l.goal = s.goal.left();
        r.goal = s.goal.right();
        child(path, n, 0, std::move(l));
        child(path, n, 1, std::move(r));
        return;
      }
      case CupRule::ImplRg: {
        if (s.goal.kind() != FormulaKind::Implies) bad(path, "impl-rg: goal is not an implication");
        Context none;
        if (!is_coinduction_goal(logic, ext, none, s.goal.left()))
          bad(path, "impl-rg: hypothesis is not a coinduction goal");
        expect_children(path, n, 1);
        CupSequent c = s;
        c.hyps.push_back(s.goal.left());
        c.goal = s.goal.right();
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::DecG: {
        if (s.goal.kind() != FormulaKind::Atom) bad(path, "dec-g: goal is not an atom");
        Formula d = focus_of(path, n, s, /*program_only=*/true);
        expect_children(path, n, 1);
        CupSequent c = s;
        c.kind = SequentKind::Focused;
        c.focus = d;
        child(path, n, 0, std::move(c));
        return;
      }
      default:
        bad(path, std::string(cup_rule_name(n.rule)) + " does not apply to a guarded goal");
    }
  }

  void goal_phase(const std::string& path, const CupProof& n, const CupSequent& s,
                  const Signature& ext) {
    switch (n.rule) {
      case CupRule::TopR:
        if (s.goal.kind() != FormulaKind::Top) bad(path, "top-r: goal is not top");
        expect_children(path, n, 0);
        return;
      case CupRule::AndR: {
        if (s.goal.kind() != FormulaKind::And) bad(path, "and-r: goal is not a conjunction");
        expect_children(path, n, 2);
        CupSequent l = s, r = s;
        l.goal = s.goal.left();
        r.goal = s.goal.right();
        child(path, n, 0, std::move(l));
        child(path, n, 1, std::move(r));
        return;
      }
      case CupRule::OrR1:
      case CupRule::OrR2: {
        if (s.goal.kind() != FormulaKind::Or) bad(path, "or-r: goal is not a disjunction");
        expect_children(path, n, 1);
        CupSequent c = s;
        c.goal = n.rule == CupRule::OrR1 ? s.goal.left() : s.goal.right();
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::ExistsR: {
        if (s.goal.kind() != FormulaKind::Exists) bad(path, "exists-r: goal is not an exists");
        check_witness(path, ext, n.witness, s.goal.var_type());
        expect_children(path, n, 1);
        CupSequent c = s;
        c.goal = s.goal.open(n.witness);
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::AllR: {
        if (s.goal.kind() != FormulaKind::Forall) bad(path, "all-r: goal is not a forall");
        if (!logic.harrop) bad(path, "all-r: goal-side forall needs a Harrop logic");
        fresh_ok(path, ext, n.fresh);
        expect_children(path, n, 1);
        CupSequent c = s;
        c.eigen.emplace_back(n.fresh, s.goal.var_type());
        c.goal = s.goal.open(Term::constant(n.fresh));
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::ImplR: {
        if (s.goal.kind() != FormulaKind::Implies) bad(path, "impl-r: goal is not an implication");
        if (!logic.harrop) bad(path, "impl-r: goal-side implication needs a Harrop logic");
        Context none;
        if (!is_definite_formula(logic, ext, none, s.goal.left()))
          bad(path, "impl-r: antecedent is not a definite formula of " + logic.name());
        expect_children(path, n, 1);
        CupSequent c = s;
        c.extra.push_back(s.goal.left());
        c.goal = s.goal.right();
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::Dec: {
        if (s.goal.kind() != FormulaKind::Atom) bad(path, "dec: goal is not an atom");
        Formula d = focus_of(path, n, s, /*program_only=*/false);
        expect_children(path, n, 1);
        CupSequent c = s;
        c.kind = SequentKind::Focused;
        c.focus = d;
        child(path, n, 0, std::move(c));
        return;
      }
      default:
        bad(path, std::string(cup_rule_name(n.rule)) + " does not apply to a plain goal");
    }
  }

  void focused(const std::string& path, const CupProof& n, const CupSequent& s,
               const Signature& ext) {
    switch (n.rule) {
      case CupRule::Init: {
        if (!s.focus.is_atom()) bad(path, "init: focus is not an atom");
        if (atom_conv(ext, s.focus, s.goal) != Convertibility::Yes)
          bad(path, "init: focus and goal atoms are not convertible");
        expect_children(path, n, 0);
        return;
      }
      case CupRule::AllL: {
        if (s.focus.kind() != FormulaKind::Forall) bad(path, "all-l: focus is not a forall");
        check_witness(path, ext, n.witness, s.focus.var_type());
        expect_children(path, n, 1);
        CupSequent c = s;
        c.focus = s.focus.open(n.witness);
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::AndL1:
      case CupRule::AndL2: {
        if (s.focus.kind() != FormulaKind::And) bad(path, "and-l: focus is not a conjunction");
        expect_children(path, n, 1);
        CupSequent c = s;
        c.focus = n.rule == CupRule::AndL1 ? s.focus.left() : s.focus.right();
        child(path, n, 0, std::move(c));
        return;
      }
      case CupRule::ImplL: {
        if (s.focus.kind() != FormulaKind::Implies) bad(path, "impl-l: focus is not an implication");
        expect_children(path, n, 2);
        CupSequent head = s, side = s;
        head.focus = s.focus.right();
        side.kind = SequentKind::Goal;
        side.goal = s.focus.left();
        side.focus = Formula();
        child(path, n, 0, std::move(head));
        child(path, n, 1, std::move(side));
        return;
      }
      default:
        bad(path, std::string(cup_rule_name(n.rule)) + " does not apply to a focused sequent");
    }
  }
};

}  // namespace

CheckResult check_proof(const Program& p, const LogicId& logic, const CupProof& pi) {
  Checker ck{p, logic};
  try {
    const CupSequent& root = pi.sequent;
    if (!root.eigen.empty() || !root.extra.empty())
      return CheckResult::failure("", "root sequent must not carry extensions");
    Context none;
    switch (root.kind) {
      case SequentKind::CoRoot: {
        if (!root.hyps.empty())
          return CheckResult::failure("", "co-root sequent must have empty hypotheses");
        well_formed(p.sig, none, root.goal);
        break;
      }
      case SequentKind::Goal: {
        if (!root.hyps.empty())
          return CheckResult::failure("", "plain root sequent must have empty hypotheses");
        well_formed(p.sig, none, root.goal);
        if (!is_goal_formula(logic, p.sig, none, root.goal))
          return CheckResult::failure("", "root goal is not a goal formula of " + logic.name());
        break;
      }
      default:
        return CheckResult::failure("", "proof root must be a co-root or plain goal sequent");
    }
    ck.node("", pi, pi.sequent);
    return CheckResult{};
  } catch (const Checker::Violation& v) {
    return CheckResult::failure(v.path, v.reason);
  } catch (const Error& e) {
    return CheckResult::failure("", std::string(errc_name(e.code())) + ": " + e.what());
  }
}

}  // namespace cup
