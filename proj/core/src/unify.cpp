#include "cup/unify.hpp"

#include <set>
#include <utility>

#include "cup/error.hpp"

namespace cup {

const char* unify_mode_name(UnifyMode m) {
  switch (m) {
    case UnifyMode::Syntactic: return "syntactic";
    case UnifyMode::Rational: return "rational";
    case UnifyMode::ModuloWhnf: return "modulo-whnf";
  }
  return "?";
}

const Term* Substitution::find(const std::string& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& v, const Term& t) { map_[v] = t; }

Term Substitution::apply(const Term& t) const {
  return t.map_free([this](const std::string& v) -> std::optional<Term> {
    const Term* b = find(v);
    if (!b) return std::nullopt;
    return *b;
  });
}

Formula Substitution::apply(const Formula& f) const {
  return f.map_terms([this](const Term& t) { return apply(t); });
}

std::string MetaStore::fresh(const std::string& hint) {
  return "?" + hint + std::to_string(counter_++);
}

bool MetaStore::is_meta(const std::string& name) const {
  return !name.empty() && name[0] == '?';
}

const Term* MetaStore::lookup(const std::string& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

void MetaStore::bind(const std::string& v, const Term& t) {
  if (bindings_.count(v)) fail(Errc::RuleError, "metavariable bound twice: " + v);
  bindings_.emplace(v, t);
  trail_.push_back(v);
}

void MetaStore::undo(size_t mark) {
  while (trail_.size() > mark) {
    bindings_.erase(trail_.back());
    trail_.pop_back();
  }
}

Term MetaStore::resolve(Term t) const {
  while (t.kind() == TermKind::FreeVar) {
    const Term* b = lookup(t.name());
    if (!b) break;
    t = *b;
  }
  return t;
}

Term MetaStore::zonk(const Term& t) const {
  return t.map_free([this](const std::string& v) -> std::optional<Term> {
    const Term* b = lookup(v);
    if (!b) return std::nullopt;
    return zonk(*b);
  });
}

Formula MetaStore::zonk(const Formula& f) const {
  return f.map_terms([this](const Term& t) { return zonk(t); });
}

std::vector<std::string> MetaStore::unsolved(const Term& t) const {
  std::vector<std::string> out;
  for (const auto& v : zonk(t).free_vars())
    if (is_meta(v)) out.push_back(v);
  return out;
}

namespace {

struct Engine {
  const Signature& sig;
  MetaStore& store;
  UnifyMode mode;
  int fuel;
  const std::function<bool(const std::string&)>& flex;
  std::set<std::pair<std::string, std::string>> seen;
  UnifyStatus failure = UnifyStatus::NoUnifier;
  int rigid_fresh = 0;

  bool is_flex(const Term& t) const {
    if (t.kind() != TermKind::FreeVar) return false;
    return flex ? flex(t.name()) : store.is_meta(t.name());
  }

  bool occurs(const std::string& v, const Term& t) const {
    switch (t.kind()) {
      case TermKind::FreeVar: {
        if (t.name() == v) return true;
        const Term* b = store.lookup(t.name());
        return b && occurs(v, *b);
      }
      case TermKind::App: return occurs(v, t.fn()) || occurs(v, t.arg());
      case TermKind::Lam:
      case TermKind::Fix: return occurs(v, t.body());
      default: return false;
    }
  }

  bool bind(const std::string& v, const Term& t) {
    if (!occurs(v, t)) {
      store.bind(v, t);
      return true;
    }
    if (mode == UnifyMode::Rational) {
      Term closed = store.zonk(t);
      store.bind(v, Term::fix(v, SimpleType(), closed));
      return true;
    }
    failure = mode == UnifyMode::Syntactic ? UnifyStatus::OccursCheck : UnifyStatus::NoUnifier;
    return false;
  }

  bool run(Term a, Term b) {
    if (--fuel <= 0) return false;
    a = store.zonk(a);
    b = store.zonk(b);
    if (a == b) return true;
    if (is_flex(a)) return bind(a.name(), b);
    if (is_flex(b)) return bind(b.name(), a);
    if (mode != UnifyMode::Syntactic) {
      if (!seen.insert({a.key(), b.key()}).second) return true;
      auto wa = whnf(sig, a, fuel);
      auto wb = whnf(sig, b, fuel);
      if (!wa || !wb) return false;
      a = *wa;
      b = *wb;
      if (a == b) return true;
    }
    if (a.kind() == TermKind::Lam || b.kind() == TermKind::Lam) {
      if (a.kind() != b.kind() || !(a.ann() == b.ann())) return false;
      std::string c = "%u" + std::to_string(rigid_fresh++);
      return run(a.body().open_var(c), b.body().open_var(c));
    }
    if (a.kind() == TermKind::Fix || b.kind() == TermKind::Fix) {
      // syntactic mode only: whnf has already unfolded these otherwise
      if (a.kind() != b.kind() || !(a.ann() == b.ann())) return false;
      std::string c = "%u" + std::to_string(rigid_fresh++);
      return run(a.body().open_var(c), b.body().open_var(c));
    }
    std::vector<Term> as, bs;
    Term ha = a.spine(&as), hb = b.spine(&bs);
    if (ha.kind() != hb.kind()) return false;
    if (ha.kind() != TermKind::Const && ha.kind() != TermKind::FreeVar) return false;
    if (ha.name() != hb.name() || as.size() != bs.size()) return false;
    for (size_t i = 0; i < as.size(); ++i)
      if (!run(as[i], bs[i])) return false;
    return true;
  }
};

}  // namespace

bool store_unify(const Signature& sig, MetaStore& store, const Term& a, const Term& b,
                 UnifyMode mode, int fuel, const std::function<bool(const std::string&)>& flex) {
  Engine e{sig, store, mode, fuel, flex, {}, UnifyStatus::NoUnifier, 0};
  size_t m = store.mark();
  if (e.run(a, b)) return true;
  store.undo(m);
  return false;
}

UnifyOutcome unify(const Signature& sig, const Term& t1, const Term& t2, UnifyMode mode,
                   int fuel) {
  MetaStore store;
  std::function<bool(const std::string&)> all = [](const std::string&) { return true; };
  Engine e{sig, store, mode, fuel, all, {}, UnifyStatus::NoUnifier, 0};
  UnifyOutcome out;
  if (!e.run(t1, t2)) {
    out.status = e.failure;
    return out;
  }
  out.status = UnifyStatus::Ok;
  for (const auto& sets : {t1.free_vars(), t2.free_vars()})
    for (const auto& v : sets)
      if (store.lookup(v)) out.subst.bind(v, store.zonk(Term::var(v)));
  return out;
}

UnifyOutcome unify_atoms(const Signature& sig, const Formula& a, const Formula& b,
                         UnifyMode mode, int fuel) {
  UnifyOutcome out;
  if (a.kind() != FormulaKind::Atom || b.kind() != FormulaKind::Atom) return out;
  if (a.pred() != b.pred() || a.args().size() != b.args().size()) return out;
  MetaStore store;
  std::function<bool(const std::string&)> all = [](const std::string&) { return true; };
  Engine e{sig, store, mode, fuel, all, {}, UnifyStatus::NoUnifier, 0};
  for (size_t i = 0; i < a.args().size(); ++i) {
    if (!e.run(a.args()[i], b.args()[i])) {
      out.status = e.failure;
      return out;
    }
  }
  out.status = UnifyStatus::Ok;
  for (const auto& f : {a, b})
    for (const auto& v : f.free_vars())
      if (store.lookup(v)) out.subst.bind(v, store.zonk(Term::var(v)));
  return out;
}

}  // namespace cup
