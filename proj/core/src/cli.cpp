#include "cup/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "cup/coterm.hpp"
#include "cup/error.hpp"
#include "cup/herbrand.hpp"
#include "cup/ifol.hpp"
#include "cup/proof_io.hpp"
#include "cup/prover.hpp"
#include "cup/syntax.hpp"

namespace cup::cli {
namespace {

constexpr const char* kUsage =
    "usage: cup COMMAND FILE [PROOF] [flags]\n"
    "  prove FILE --goal G --logic L [--lemma F] [--depth N]   search; proof or EXHAUSTED\n"
    "  check FILE PROOF                                        check CUP proofs\n"
    "  translate FILE PROOF                                    CUP proofs -> later-modality proofs\n"
    "  check-ifol FILE PROOF                                   check later-modality proofs\n"
    "  colp FILE --query A [--depth N]                         coinductive SLD; bindings or FAIL\n"
    "  model FILE --atom A [--depth K]                         MEMBER / NOT-MEMBER at depth K\n"
    "  invariant FILE PROOF [--theta0 MAP] [--depth K] [--len N]  OK / COUNTEREXAMPLE\n"
    "flags: --json for structured output\n";

struct Args {
  std::vector<std::string> positional;
  std::map<std::string, std::string> flags;
  bool json = false;

  bool has(const std::string& f) const { return flags.count(f) != 0; }
  const std::string& get(const std::string& f) const {
    auto it = flags.find(f);
    if (it == flags.end()) throw Error(Errc::Input, "missing required flag --" + f);
    return it->second;
  }
  int get_int(const std::string& f, int dflt) const {
    auto it = flags.find(f);
    if (it == flags.end()) return dflt;
    try {
      return std::stoi(it->second);
    } catch (const std::exception&) {
      throw Error(Errc::Input, "--" + f + " expects an integer, got '" + it->second + "'");
    }
  }
};

Args parse_args(const std::vector<std::string>& raw) {
  Args a;
  for (size_t i = 0; i < raw.size(); ++i) {
    const std::string& s = raw[i];
    if (s.rfind("--", 0) == 0) {
      std::string name = s.substr(2);
      if (name == "json") {
        a.json = true;
      } else {
        if (i + 1 >= raw.size()) throw Error(Errc::Input, "flag " + s + " expects a value");
        a.flags[name] = raw[++i];
      }
    } else {
      a.positional.push_back(s);
    }
  }
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
  return out;
}

/// Free identifiers of a query become type-i context variables, so
/// `colp FILE --query "p x"` works without declaring x anywhere.
Context query_context(const Signature& sig, const std::string& text) {
  static const char* keywords[] = {"forall", "exists", "fix", "i", "o", "top"};
  Context ctx;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                 text[j] == '_' || text[j] == '\''))
        ++j;
      std::string id = text.substr(i, j - i);
      i = j;
      bool skip = sig.has_constant(id) || sig.has_predicate(id) || ctx.contains(id);
      for (const char* k : keywords) skip = skip || id == k;
      if (!skip) ctx.push(id, SimpleType());
    } else {
      ++i;
    }
  }
  return ctx;
}

Program extend_with_lemmas(const Program& base,
                           const std::vector<std::pair<std::string, Formula>>& lemmas) {
  Program ext = base;
  for (const HornClause& c : normalize_to_horn(lemmas)) ext.add(c);
  return ext;
}

// ---------------------------------------------------------------------------

int cmd_prove(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  const Signature& sig = src.program.sig;
  auto logic = LogicId::parse(a.get("logic"));
  if (!logic) throw Error(Errc::Input, "unknown logic '" + a.get("logic") + "'");

  Formula goal;
  std::optional<Formula> lemma;
  if (a.has("goal")) {
    goal = parse_formula(sig, Context{}, a.get("goal"));
    if (a.has("lemma")) lemma = parse_formula(sig, Context{}, a.get("lemma"));
  } else {
    if (src.goals.empty()) throw Error(Errc::Input, "no --goal flag and no goal directive");
    goal = src.goals[0];
    if (a.has("lemma"))
      lemma = parse_formula(sig, Context{}, a.get("lemma"));
    else if (!src.lemmas.empty())
      lemma = src.lemmas[0];
  }

  SearchConfig cfg = SearchConfig::for_logic(*logic);
  cfg.max_depth = a.get_int("depth", cfg.max_depth);

  std::vector<std::string> proofs;
  if (lemma) {
    LemmaOutcome lo = prove_with_lemma(src.program, "lem", *lemma, goal, cfg);
    if (!lo.ok()) {
      out << (a.json ? "{\"status\":\"exhausted\"}" : "EXHAUSTED") << "\n";
      return 1;
    }
    proofs.push_back(print_cup_proof({*logic, {}, *lo.lemma_proof}));
    proofs.push_back(print_cup_proof({*logic, {{"lem", *lemma}}, *lo.target_proof}));
  } else {
    SearchOutcome so = search(src.program, goal, cfg);
    if (!so.proof) {
      out << (a.json ? "{\"status\":\"exhausted\"}" : "EXHAUSTED") << "\n";
      return 1;
    }
    proofs.push_back(print_cup_proof({*logic, {}, *so.proof}));
  }

  if (a.json) {
    out << "{\"status\":\"proved\",\"proofs\":[";
    for (size_t i = 0; i < proofs.size(); ++i)
      out << (i ? "," : "") << json_quote(proofs[i]);
    out << "]}\n";
  } else {
    for (size_t i = 0; i < proofs.size(); ++i) out << (i ? "\n" : "") << proofs[i];
  }
  return 0;
}

int cmd_check(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  auto pfs = parse_cup_proofs(src.program.sig, read_file(a.positional[2]));
  if (pfs.empty()) throw Error(Errc::Input, "no (cup-proof ...) forms in proof file");
  int rc = 0;
  std::ostringstream json;
  for (size_t i = 0; i < pfs.size(); ++i) {
    Program ext = extend_with_lemmas(src.program, pfs[i].lemmas);
    CheckResult r = check_proof(ext, pfs[i].logic, pfs[i].proof);
    if (r.ok) {
      if (!a.json) out << "ok\n";
      json << (i ? "," : "") << "{\"status\":\"ok\"}";
    } else {
      rc = 1;
      if (!a.json) out << "REJECTED [" << r.path << "]: " << r.reason << "\n";
      json << (i ? "," : "") << "{\"status\":\"rejected\",\"path\":" << json_quote(r.path)
           << ",\"reason\":" << json_quote(r.reason) << "}";
    }
  }
  if (a.json) out << "{\"results\":[" << json.str() << "]}\n";
  return rc;
}

int cmd_translate(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  auto pfs = parse_cup_proofs(src.program.sig, read_file(a.positional[2]));
  if (pfs.empty()) throw Error(Errc::Input, "no (cup-proof ...) forms in proof file");
  std::vector<std::string> printed;
  for (const ProofFile& pf : pfs) {
    Program ext = extend_with_lemmas(src.program, pf.lemmas);
    printed.push_back(print_ifol_proof(translate(ext, pf.proof)));
  }
  if (a.json) {
    out << "{\"proofs\":[";
    for (size_t i = 0; i < printed.size(); ++i) out << (i ? "," : "") << json_quote(printed[i]);
    out << "]}\n";
  } else {
    for (size_t i = 0; i < printed.size(); ++i) out << (i ? "\n" : "") << printed[i];
  }
  return 0;
}

int cmd_check_ifol(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  auto pis = parse_ifol_proofs(src.program.sig, read_file(a.positional[2]));
  if (pis.empty()) throw Error(Errc::Input, "no (ifol-proof ...) forms in proof file");
  int rc = 0;
  std::ostringstream json;
  for (size_t i = 0; i < pis.size(); ++i) {
    CheckResult r = check_ifol_proof(src.program.sig, pis[i]);
    if (r.ok) {
      if (!a.json) out << "ok\n";
      json << (i ? "," : "") << "{\"status\":\"ok\"}";
    } else {
      rc = 1;
      if (!a.json) out << "REJECTED [" << r.path << "]: " << r.reason << "\n";
      json << (i ? "," : "") << "{\"status\":\"rejected\",\"path\":" << json_quote(r.path)
           << ",\"reason\":" << json_quote(r.reason) << "}";
    }
  }
  if (a.json) out << "{\"results\":[" << json.str() << "]}\n";
  return rc;
}

int cmd_colp(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  const Signature& sig = src.program.sig;
  const std::string& qtext = a.get("query");
  Formula q = parse_formula(sig, query_context(sig, qtext), qtext);
  ColpAnswer ans = colp_solve(src.program, q, a.get_int("depth", 64));
  if (!ans.success) {
    out << (a.json ? "{\"status\":\"fail\"}" : "FAIL") << "\n";
    return 1;
  }
  std::vector<std::pair<std::string, std::string>> bindings;
  for (const std::string& v : ans.query_vars)
    if (const Term* t = ans.subst.find(v)) bindings.emplace_back(v, print_term(*t));
  if (a.json) {
    out << "{\"status\":\"ok\",\"bindings\":{";
    for (size_t i = 0; i < bindings.size(); ++i)
      out << (i ? "," : "") << json_quote(bindings[i].first) << ":"
          << json_quote(bindings[i].second);
    out << "}}\n";
  } else if (bindings.empty()) {
    out << "id\n";
  } else {
    for (const auto& [v, t] : bindings) out << v << " = " << t << "\n";
  }
  return 0;
}

int cmd_model(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  Formula atom = parse_formula(src.program.sig, Context{}, a.get("atom"));
  int k = a.get_int("depth", 4);
  bool member = model_member(src.program, atom, k);
  if (a.json)
    out << "{\"status\":" << (member ? "\"member\"" : "\"not-member\"") << ",\"depth\":" << k
        << "}\n";
  else
    out << (member ? "MEMBER" : "NOT-MEMBER") << "\n";
  return member ? 0 : 1;
}

int cmd_invariant(const Args& a, std::ostream& out) {
  SourceFile src = parse_source(read_file(a.positional[1]));
  const Signature& sig = src.program.sig;
  auto pfs = parse_cup_proofs(sig, read_file(a.positional[2]));
  if (pfs.empty()) throw Error(Errc::Input, "no (cup-proof ...) forms in proof file");
  const ProofFile& pf = pfs.front();
  Program ext = extend_with_lemmas(src.program, pf.lemmas);

  KleisliSubst theta0;
  if (a.has("theta0")) {
    std::istringstream ss(a.get("theta0"));
    std::string entry;
    while (std::getline(ss, entry, ',')) {
      size_t eq = entry.find('=');
      if (eq == std::string::npos)
        throw Error(Errc::Input, "--theta0 entries look like name=term");
      std::string name = entry.substr(0, eq);
      Term t = parse_term(sig, Context{}, entry.substr(eq + 1));
      theta0.emplace(name, interpret_guarded(sig, t));
    }
  }

  Invariant inv = extract_invariant(ext, pf.proof, theta0);
  InvariantCheck chk = check_invariant(ext, inv, a.get_int("depth", 4), a.get_int("len", 4));
  if (chk.ok) {
    out << (a.json ? "{\"status\":\"ok\"}" : "OK") << "\n";
    return 0;
  }
  if (a.json)
    out << "{\"status\":\"counterexample\",\"atom\":" << json_quote(chk.counterexample->to_string())
        << "}\n";
  else
    out << "COUNTEREXAMPLE: " << chk.counterexample->to_string() << "\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    Args a = parse_args(args);
    if (a.positional.empty()) {
      err << kUsage;
      return 2;
    }
    const std::string& cmd = a.positional[0];
    auto need = [&](size_t n, const char* what) {
      if (a.positional.size() != n)
        throw Error(Errc::Input, std::string(cmd) + " expects " + what);
    };
    if (cmd == "prove") { need(2, "FILE"); return cmd_prove(a, out); }
    if (cmd == "check") { need(3, "FILE PROOF"); return cmd_check(a, out); }
    if (cmd == "translate") { need(3, "FILE PROOF"); return cmd_translate(a, out); }
    if (cmd == "check-ifol") { need(3, "FILE PROOF"); return cmd_check_ifol(a, out); }
    if (cmd == "colp") { need(2, "FILE"); return cmd_colp(a, out); }
    if (cmd == "model") { need(2, "FILE"); return cmd_model(a, out); }
    if (cmd == "invariant") { need(3, "FILE PROOF"); return cmd_invariant(a, out); }
    err << kUsage;
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "input-error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cup::cli
