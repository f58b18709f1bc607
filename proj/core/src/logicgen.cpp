#include "abslog/logicgen.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "abslog/error.hpp"
#include "abslog/proofengine.hpp"

namespace abslog {

bool Signature::has(Connective c) const {
  return std::find(connectives.begin(), connectives.end(), c) != connectives.end();
}

bool Signature::has_predicate(std::string_view name) const {
  return std::find(predicates.begin(), predicates.end(), name) != predicates.end();
}

std::string_view rule_kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::structural: return "structural";
    case RuleKind::introduction: return "introduction";
    case RuleKind::operation_axiom: return "operation_axiom";
    case RuleKind::order_axiom: return "order_axiom";
  }
  return "?";
}

namespace {

std::optional<RuleKind> rule_kind_from_name(std::string_view name) {
  for (RuleKind k : {RuleKind::structural, RuleKind::introduction, RuleKind::operation_axiom, RuleKind::order_axiom})
    if (rule_kind_name(k) == name) return k;
  return std::nullopt;
}

Formula M(const char* name) { return Formula::meta(name); }

Sequent seq(std::vector<Formula> l, std::vector<Formula> r) { return Sequent{std::move(l), std::move(r)}; }

void add_schema(ProofSystem& ps, RuleKind kind, std::string name, std::vector<Sequent> premises, Sequent conclusion) {
  ps.rules.push_back(Rule{kind, std::move(name), std::move(premises), std::move(conclusion), false});
}

void add_structural_rules(ProofSystem& ps) {
  const auto G = M("G"), D = M("D"), G2 = M("G2"), D2 = M("D2"), phi = M("phi"), psi = M("psi");
  const auto S = RuleKind::structural;
  add_schema(ps, S, "id", {}, seq({phi}, {phi}));
  add_schema(ps, S, "weak.l", {seq({G}, {D})}, seq({G, phi}, {D}));
  add_schema(ps, S, "weak.r", {seq({G}, {D})}, seq({G}, {D, phi}));
  add_schema(ps, S, "contr.l", {seq({G, phi, phi}, {D})}, seq({G, phi}, {D}));
  add_schema(ps, S, "contr.r", {seq({G}, {D, phi, phi})}, seq({G}, {D, phi}));
  add_schema(ps, S, "exch.l", {seq({G, phi, psi, G2}, {D})}, seq({G, psi, phi, G2}, {D}));
  add_schema(ps, S, "exch.r", {seq({G}, {D, phi, psi, D2})}, seq({G}, {D, psi, phi, D2}));
  add_schema(ps, S, "cut", {seq({G}, {D, phi}), seq({G2, phi}, {D2})}, seq({G, G2}, {D, D2}));
}

void add_introduction_rules(ProofSystem& ps) {
  const auto& sig = ps.signature;
  const auto G = M("G"), D = M("D"), phi = M("phi"), psi = M("psi");
  const auto I = RuleKind::introduction;
  auto bin = [](Connective c, Formula a, Formula b) { return Formula::binary(c, std::move(a), std::move(b)); };
  if (sig.has(Connective::tt)) add_schema(ps, I, "tt.r", {}, seq({G}, {Formula::constant(Connective::tt), D}));
  if (sig.has(Connective::ff)) add_schema(ps, I, "ff.l", {}, seq({G, Formula::constant(Connective::ff)}, {D}));
  if (sig.has(Connective::and_)) {
    auto f = bin(Connective::and_, phi, psi);
    add_schema(ps, I, "and.l", {seq({G, phi, psi}, {D})}, seq({G, f}, {D}));
    add_schema(ps, I, "and.r", {seq({G}, {phi, D}), seq({G}, {psi, D})}, seq({G}, {f, D}));
  }
  if (sig.has(Connective::or_)) {
    auto f = bin(Connective::or_, phi, psi);
    add_schema(ps, I, "or.l", {seq({G, phi}, {D}), seq({G, psi}, {D})}, seq({G, f}, {D}));
    add_schema(ps, I, "or.r", {seq({G}, {phi, psi, D})}, seq({G}, {f, D}));
  }
  if (sig.has(Connective::impl)) {
    auto f = bin(Connective::impl, phi, psi);
    add_schema(ps, I, "impl.l", {seq({G}, {phi, D}), seq({G, psi}, {D})}, seq({G, f}, {D}));
    add_schema(ps, I, "impl.r", {seq({G, phi}, {psi, D})}, seq({G}, {f, D}));
  }
  if (sig.has(Connective::coimpl)) {
    auto f = bin(Connective::coimpl, phi, psi);
    add_schema(ps, I, "coimpl.l", {seq({G, phi}, {psi, D})}, seq({G, f}, {D}));
    add_schema(ps, I, "coimpl.r", {seq({G}, {phi, D}), seq({G, psi}, {D})}, seq({G}, {f, D}));
  }
  if (sig.has(Connective::not_)) {
    auto n = [](Formula a) { return Formula::unary(Connective::not_, std::move(a)); };
    if (sig.has(Connective::impl) && sig.has(Connective::ff)) {
      add_schema(ps, I, "not.l", {seq({G}, {phi, D})}, seq({G, n(phi)}, {D}));
      add_schema(ps, I, "not.r", {seq({G, phi}, {D})}, seq({G}, {n(phi), D}));
    } else {
      // Without implication the only negation laws are involution and order reversal.
      add_schema(ps, I, "not.invol.l", {}, seq({n(n(phi))}, {phi}));
      add_schema(ps, I, "not.invol.r", {}, seq({phi}, {n(n(phi))}));
      add_schema(ps, I, "not.contra", {seq({phi}, {psi})}, seq({n(psi)}, {n(phi)}));
    }
  }
}

void add_axiom_pair(ProofSystem& ps, const std::string& base, const Formula& compound, const Formula& result) {
  ps.rules.push_back(Rule{RuleKind::operation_axiom, base + ".l", {}, seq({compound}, {result}), false});
  ps.rules.push_back(Rule{RuleKind::operation_axiom, base + ".r", {}, seq({result}, {compound}), false});
}

}  // namespace

const Rule* ProofSystem::find(std::string_view name) const {
  for (const auto& r : rules)
    if (r.name == name) return &r;
  return nullptr;
}

std::size_t ProofSystem::count(RuleKind k) const {
  return static_cast<std::size_t>(std::count_if(rules.begin(), rules.end(), [k](const Rule& r) { return r.kind == k; }));
}

void ProofSystem::sort_rules() {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.name < b.name;
  });
}

Signature generate_signature(const Abstraction& abs, const PreservationReport& report) {
  Signature sig;
  sig.predicates = abs.lattice().names();
  for (Connective c : kAllConnectives)
    if (report.preserved(c)) sig.connectives.push_back(c);
  sig.variables = abs.variables();
  return sig;
}

ProofSystem generate_proof_system(const Abstraction& abs, const PreservationReport& report) {
  ProofSystem ps;
  ps.signature = generate_signature(abs, report);
  ps.source = abs.name();
  add_structural_rules(ps);
  add_introduction_rules(ps);

  const auto& L = abs.lattice();
  const std::size_t n = L.size();
  auto pred = [&](Element a) { return Formula::predicate(L.name(a)); };
  for (Connective c : ps.signature.connectives) {
    const std::string cname(connective_name(c));
    switch (arity(c)) {
      case 0: add_axiom_pair(ps, "op." + cname, Formula::constant(c), pred(abs.apply(c))); break;
      case 1:
        for (Element a = 0; a < n; ++a)
          add_axiom_pair(ps, "op." + cname + "." + L.name(a), Formula::unary(c, pred(a)), pred(abs.apply(c, a)));
        break;
      default:
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b)
            add_axiom_pair(ps, "op." + cname + "." + L.name(a) + "." + L.name(b),
                           Formula::binary(c, pred(a), pred(b)), pred(abs.apply(c, a, b)));
    }
  }
  for (std::size_t k = 0; k < abs.extra_axioms().size(); ++k) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04zu", k);
    ps.rules.push_back(Rule{RuleKind::operation_axiom, std::string("op.ax.") + buf, {}, abs.extra_axioms()[k], false});
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (L.leq(a, b))
        ps.rules.push_back(
            Rule{RuleKind::order_axiom, "ord." + L.name(a) + "." + L.name(b), {}, seq({pred(a)}, {pred(b)}), a == b});
  ps.sort_rules();
  return ps;
}

ProofSystem minimize_proof_system(const ProofSystem& ps, MinimizeStats* stats) {
  MinimizeStats local;
  MinimizeStats& st = stats ? *stats : local;
  st = {};
  ProofSystem out = ps;

  // Order axioms: keep the covering pairs of the relation they declare.
  std::set<std::pair<std::string, std::string>> order;
  for (const auto& r : ps.rules)
    if (r.kind == RuleKind::order_axiom && !r.identity_instance)
      order.emplace(r.conclusion.antecedents.at(0).name(), r.conclusion.succedents.at(0).name());
  auto covering = [&](const std::string& a, const std::string& b) {
    for (const auto& [x, y] : order)
      if (x == a && y != b && order.count({y, b})) return false;
    return true;
  };
  std::erase_if(out.rules, [&](const Rule& r) {
    if (r.kind != RuleKind::order_axiom) return false;
    bool drop = r.identity_instance ||
                !covering(r.conclusion.antecedents.at(0).name(), r.conclusion.succedents.at(0).name());
    if (drop) st.removed.push_back(r.name);
    return drop;
  });

  EngineOptions opts;
  opts.representatives = false;
  std::vector<std::string> candidates;
  for (const auto& r : out.rules)
    if (r.kind == RuleKind::operation_axiom) candidates.push_back(r.name);
  std::sort(candidates.begin(), candidates.end());
  for (const auto& name : candidates) {
    ProofSystem trial = out;
    std::erase_if(trial.rules, [&](const Rule& r) { return r.name == name; });
    ProofEngine engine(trial, opts);
    if (engine.derivable_unnormalized(out.find(name)->conclusion)) {
      out = std::move(trial);
      st.removed.push_back(name);
    }
  }

  // Closure equality: the reduced system still derives every original rule.
  ProofEngine final_engine(out, opts);
  st.closure_verified = true;
  for (const auto& r : ps.rules)
    if (r.premises.empty() && r.kind != RuleKind::structural && r.kind != RuleKind::introduction &&
        !final_engine.derivable_unnormalized(r.conclusion))
      st.closure_verified = false;
  return out;
}

RenderFormat parse_render_format(std::string_view name) {
  if (name == "text") return RenderFormat::text;
  if (name == "latex") return RenderFormat::latex;
  if (name == "machine") return RenderFormat::machine;
  throw UnknownFormat("unknown format '" + std::string(name) + "' (expected text, latex or machine)");
}

namespace {

std::string latex_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '_': out += "\\_"; break;
      case '#': out += "\\#"; break;
      case '&': out += "\\&"; break;
      case '$': out += "\\$"; break;
      case '%': out += "\\%"; break;
      case '{': out += "\\{"; break;
      case '}': out += "\\}"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string latex_meta(const std::string& name) {
  if (name == "G") return "\\Gamma";
  if (name == "G2") return "\\Gamma'";
  if (name == "D") return "\\Delta";
  if (name == "D2") return "\\Delta'";
  if (name == "phi") return "\\varphi";
  if (name == "psi") return "\\psi";
  return "\\mathit{" + latex_escape(name) + "}";
}

std::string latex(const Formula& f, std::string_view vars) {
  switch (f.kind()) {
    case Formula::Kind::predicate:
      return "\\mathrm{" + latex_escape(f.name()) + "}(" + std::string(vars) + ")";
    case Formula::Kind::constant: return f.connective() == Connective::tt ? "\\top" : "\\bot";
    case Formula::Kind::meta: return latex_meta(f.name());
    case Formula::Kind::unary: return "\\lnot " + latex(f.arg(0), vars);
    case Formula::Kind::binary: {
      const char* op = "";
      switch (f.connective()) {
        case Connective::and_: op = " \\land "; break;
        case Connective::or_: op = " \\lor "; break;
        case Connective::impl: op = " \\to "; break;
        default: op = " \\leftarrow "; break;
      }
      return "(" + latex(f.arg(0), vars) + op + latex(f.arg(1), vars) + ")";
    }
  }
  return {};
}

std::string latex(const Sequent& s, std::string_view vars) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedents.size(); ++i) out += (i ? ", " : "") + latex(s.antecedents[i], vars);
  out += " \\vdash ";
  for (std::size_t i = 0; i < s.succedents.size(); ++i) out += (i ? ", " : "") + latex(s.succedents[i], vars);
  return out;
}

std::string connective_list(const Signature& sig) {
  std::string out;
  for (Connective c : sig.connectives) {
    if (!out.empty()) out += ' ';
    out += connective_name(c);
  }
  return out;
}

}  // namespace

std::string render(const ProofSystem& ps, RenderFormat format) {
  std::ostringstream os;
  const auto& vars = ps.signature.variables;
  switch (format) {
    case RenderFormat::machine:
      os << "abslog-rules v1\n";
      os << "source " << ps.source << "\n";
      os << "variables " << vars << "\n";
      for (const auto& p : ps.signature.predicates) os << "predicate " << p << "\n";
      for (Connective c : ps.signature.connectives) os << "connective " << connective_name(c) << "\n";
      for (const auto& r : ps.rules) {
        os << "rule " << rule_kind_name(r.kind) << ' ' << r.name << (r.identity_instance ? " identity" : "") << "\n";
        for (const auto& p : r.premises) os << "premise " << to_text(p, vars) << "\n";
        os << "conclusion " << to_text(r.conclusion, vars) << "\n";
        os << "end\n";
      }
      break;
    case RenderFormat::text: {
      os << "proof system for " << ps.source << "\n";
      os << "predicates:";
      for (const auto& p : ps.signature.predicates) os << ' ' << to_text(Formula::predicate(p), vars);
      os << "\nconnectives: " << connective_list(ps.signature) << "\n";
      std::optional<RuleKind> section;
      for (const auto& r : ps.rules) {
        if (section != r.kind) {
          section = r.kind;
          os << "\n[" << rule_kind_name(r.kind) << "]\n";
        }
        os << "  " << r.name << (r.identity_instance ? " (identity)" : "") << ": ";
        for (std::size_t i = 0; i < r.premises.size(); ++i) os << (i ? " ; " : "") << to_text(r.premises[i], vars);
        if (!r.premises.empty()) os << "  ==>  ";
        os << to_text(r.conclusion, vars) << "\n";
      }
      break;
    }
    case RenderFormat::latex:
      os << "% proof system for " << ps.source << " (requires proof.sty)\n";
      os << "% connectives: " << connective_list(ps.signature) << "\n";
      for (const auto& r : ps.rules) {
        os << "\\[\\infer[\\mathsf{" << latex_escape(r.name) << "}]{" << latex(r.conclusion, vars) << "}{";
        for (std::size_t i = 0; i < r.premises.size(); ++i) os << (i ? " & " : "") << latex(r.premises[i], vars);
        os << "}\\]\n";
      }
      break;
  }
  return os.str();
}

ProofSystem parse_machine(std::string_view text) {
  ProofSystem ps;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  Rule* current = nullptr;
  bool header = false;
  auto rest_after = [](const std::string& l, std::size_t n) { return l.size() > n ? l.substr(n + 1) : std::string(); };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!header) {
      if (line != "abslog-rules v1") throw ParseError("expected header 'abslog-rules v1'", lineno, 1);
      header = true;
      continue;
    }
    std::string key = line.substr(0, line.find(' '));
    std::string rest = rest_after(line, key.size());
    if (key == "source") {
      ps.source = rest;
    } else if (key == "variables") {
      ps.signature.variables = rest;
    } else if (key == "predicate") {
      ps.signature.predicates.push_back(rest);
    } else if (key == "connective") {
      auto c = connective_from_name(rest);
      if (!c) throw ParseError("unknown connective '" + rest + "'", lineno, key.size() + 2);
      ps.signature.connectives.push_back(*c);
    } else if (key == "rule") {
      std::istringstream fields(rest);
      std::string kind, name, flag;
      fields >> kind >> name >> flag;
      auto k = rule_kind_from_name(kind);
      if (!k || name.empty()) throw ParseError("malformed rule header", lineno, 1);
      ps.rules.push_back(Rule{*k, name, {}, {}, flag == "identity"});
      current = &ps.rules.back();
    } else if (key == "premise" || key == "conclusion") {
      if (!current) throw ParseError(key + " outside a rule", lineno, 1);
      Sequent s;
      try {
        s = parse_sequent(rest, lineno);
      } catch (const ParseError& e) {
        throw ParseError(e.message(), lineno, key.size() + 1 + e.column());
      }
      if (key == "premise") {
        current->premises.push_back(std::move(s));
      } else {
        current->conclusion = std::move(s);
      }
    } else if (key == "end") {
      current = nullptr;
    } else {
      throw ParseError("unknown record '" + key + "'", lineno, 1);
    }
  }
  if (!header) throw ParseError("empty document", 1, 1);
  return ps;
}

}  // namespace abslog
