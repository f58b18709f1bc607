#include "abslog/proofengine.hpp"

#include <algorithm>
#include <functional>

#include "abslog/error.hpp"
#include "sat.hpp"

namespace abslog {

using detail::ClauseSet;
using detail::Lit;
using detail::neg;
using detail::pos;

namespace {

bool is_axiom(const Rule& r) {
  return r.premises.empty() && (r.kind == RuleKind::operation_axiom || r.kind == RuleKind::order_axiom);
}

bool contains_meta(const Formula& f) {
  if (f.kind() == Formula::Kind::meta) return true;
  if (f.kind() == Formula::Kind::unary) return contains_meta(f.arg(0));
  if (f.kind() == Formula::Kind::binary) return contains_meta(f.arg(0)) || contains_meta(f.arg(1));
  return false;
}

}  // namespace

ProofEngine::~ProofEngine() = default;

ProofEngine::ProofEngine(const ProofSystem& ps, EngineOptions options)
    : ps_(ps), options_(options), clauses_(std::make_unique<ClauseSet>()) {
  primitive_negation_ = ps_.has_rule("not.contra") || ps_.has_rule("not.invol.l");
  const auto& sig = ps_.signature;
  const std::size_t n = sig.predicates.size();
  for (std::size_t k = 0; k < n; ++k) {
    Formula p = Formula::predicate(sig.predicates[k]);
    int id = clauses_->add_atom();
    atoms_.emplace(p, id);
    atom_formula_.push_back(p);
  }

  // One-level compounds over predicates, so every operation-table entry has an atom.
  std::vector<Formula> compounds;
  for (Connective c : sig.connectives) {
    switch (arity(c)) {
      case 0: compounds.push_back(Formula::constant(c)); break;
      case 1:
        for (std::size_t a = 0; a < n; ++a) compounds.push_back(Formula::unary(c, atom_formula_[a]));
        break;
      default:
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            compounds.push_back(Formula::binary(c, atom_formula_[a], atom_formula_[b]));
    }
  }
  for (const auto& f : compounds) atom_of(f, *clauses_, atoms_);

  for (const auto& r : ps_.rules) {
    if (!is_axiom(r)) continue;
    std::vector<Lit> clause;
    for (const auto& f : r.conclusion.antecedents) clause.push_back(neg(atom_of(f, *clauses_, atoms_)));
    for (const auto& f : r.conclusion.succedents) clause.push_back(pos(atom_of(f, *clauses_, atoms_)));
    clauses_->add_clause(std::move(clause));
  }

  if (ps_.has_rule("not.contra") && sig.has(Connective::not_)) {
    // Close under a |- b  ==>  ~b |- ~a for predicates a, b.
    auto neg_atom = [&](std::size_t a) {
      return atoms_.at(Formula::unary(Connective::not_, atom_formula_[a]));
    };
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a) {
        detail::Solver s(*clauses_);
        std::vector<std::size_t> candidates;
        if (s.ok() && s.assign(pos(static_cast<int>(a))) && s.solve()) {
          for (std::size_t b = 0; b < n; ++b)
            if (b != a && s.value(static_cast<int>(b)) == 1) candidates.push_back(b);
        } else {
          for (std::size_t b = 0; b < n; ++b)
            if (b != a) candidates.push_back(b);
        }
        for (std::size_t b : candidates) {
          if (!entails({pos(static_cast<int>(a)), neg(static_cast<int>(b))})) continue;
          if (clauses_->add_clause({neg(neg_atom(b)), pos(neg_atom(a))})) changed = true;
        }
      }
    }
  }

  if (options_.representatives) {
    for (const auto& f : compounds)
      if (auto rep = find_representative(atoms_.at(f))) representative_.emplace(f, *rep);
  }
}

bool ProofEngine::entails(const std::vector<int>& assumptions) const { return !clauses_->satisfiable(assumptions); }

std::size_t ProofEngine::predicate_index(std::string_view name) const {
  const auto& preds = ps_.signature.predicates;
  auto it = std::find(preds.begin(), preds.end(), name);
  if (it == preds.end()) throw UnknownSymbol("unknown predicate '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - preds.begin());
}

void ProofEngine::check_symbols(const Formula& f) const {
  switch (f.kind()) {
    case Formula::Kind::meta: throw UnknownSymbol("schematic variable $" + f.name() + " in a query");
    case Formula::Kind::predicate: predicate_index(f.name()); return;
    default: break;
  }
  if (!ps_.signature.has(f.connective()))
    throw UnknownSymbol("connective '" + std::string(connective_name(f.connective())) + "' is not in the signature");
  if (f.kind() == Formula::Kind::unary) check_symbols(f.arg(0));
  if (f.kind() == Formula::Kind::binary) {
    check_symbols(f.arg(0));
    check_symbols(f.arg(1));
  }
}

int ProofEngine::atom_of(const Formula& f, ClauseSet& cs, std::map<Formula, int>& atoms) const {
  if (auto it = atoms.find(f); it != atoms.end()) return it->second;
  if (f.kind() == Formula::Kind::meta) throw UnknownSymbol("schematic variable $" + f.name() + " in an axiom");
  if (f.kind() == Formula::Kind::predicate) throw UnknownSymbol("unknown predicate '" + f.name() + "'");
  if (f.kind() == Formula::Kind::unary) atom_of(f.arg(0), cs, atoms);
  if (f.kind() == Formula::Kind::binary) {
    atom_of(f.arg(0), cs, atoms);
    atom_of(f.arg(1), cs, atoms);
  }
  int id = cs.add_atom();
  atoms.emplace(f, id);
  add_definition(f, id, cs, atoms);
  return id;
}

void ProofEngine::add_definition(const Formula& f, int id, ClauseSet& cs, std::map<Formula, int>& atoms) const {
  auto has = [&](const char* rule) { return ps_.has_rule(rule); };
  if (f.kind() == Formula::Kind::constant) {
    if (f.connective() == Connective::tt && has("tt.r")) cs.add_clause({pos(id)});
    if (f.connective() == Connective::ff && has("ff.l")) cs.add_clause({neg(id)});
    return;
  }
  if (f.kind() == Formula::Kind::unary) {
    int l = atoms.at(f.arg(0));
    if (has("not.l")) cs.add_clause({neg(l), neg(id)});
    if (has("not.r")) cs.add_clause({pos(l), pos(id)});
    if (has("not.invol.l") && f.arg(0).kind() == Formula::Kind::unary) {
      int inner = atoms.at(f.arg(0).arg(0));
      cs.add_clause({neg(id), pos(inner)});
      if (has("not.invol.r")) cs.add_clause({neg(inner), pos(id)});
    } else if (has("not.contra") && !f.arg(0).is_predicate()) {
      // Contraposition of arg -||- r(x) makes ~arg interderivable with ~r(x).
      const std::size_t n = ps_.signature.predicates.size();
      for (std::size_t r = 0; r < n; ++r) {
        int ra = static_cast<int>(r);
        if (cs.satisfiable({pos(l), neg(ra)}) || cs.satisfiable({pos(ra), neg(l)})) continue;
        auto nr = atoms.find(Formula::unary(Connective::not_, atom_formula_[r]));
        if (nr == atoms.end()) break;
        cs.add_clause({neg(id), pos(nr->second)});
        cs.add_clause({neg(nr->second), pos(id)});
        break;
      }
    }
    return;
  }
  int l = atoms.at(f.arg(0));
  int r = atoms.at(f.arg(1));
  switch (f.connective()) {
    case Connective::and_:
      if (has("and.l")) {
        cs.add_clause({neg(id), pos(l)});
        cs.add_clause({neg(id), pos(r)});
      }
      if (has("and.r")) cs.add_clause({neg(l), neg(r), pos(id)});
      break;
    case Connective::or_:
      if (has("or.l")) cs.add_clause({neg(id), pos(l), pos(r)});
      if (has("or.r")) {
        cs.add_clause({neg(l), pos(id)});
        cs.add_clause({neg(r), pos(id)});
      }
      break;
    case Connective::impl:
      if (has("impl.l")) cs.add_clause({neg(id), neg(l), pos(r)});
      if (has("impl.r")) {
        cs.add_clause({pos(l), pos(id)});
        cs.add_clause({neg(r), pos(id)});
      }
      break;
    case Connective::coimpl:
      if (has("coimpl.l")) {
        cs.add_clause({neg(id), pos(l)});
        cs.add_clause({neg(id), neg(r)});
      }
      if (has("coimpl.r")) cs.add_clause({neg(l), pos(r), pos(id)});
      break;
    default: break;
  }
}

std::optional<std::size_t> ProofEngine::find_representative(int atom) const {
  const std::size_t n = predicate_count();
  std::vector<std::size_t> order;
  // Candidates are the predicates true in one model of the atom; the rest cannot be equivalent.
  detail::Solver s(*clauses_);
  if (s.ok() && s.assign(pos(atom)) && s.solve()) {
    for (std::size_t p = 0; p < n; ++p)
      if (s.value(static_cast<int>(p)) == 1) order.push_back(p);
  } else {
    for (std::size_t p = 0; p < n; ++p) order.push_back(p);
  }
  for (std::size_t p : order) {
    int pa = static_cast<int>(p);
    if (entails({pos(atom), neg(pa)}) && entails({pos(pa), neg(atom)})) return p;
  }
  return std::nullopt;
}

std::size_t ProofEngine::normalize(const Formula& phi) const {
  check_symbols(phi);
  std::function<std::size_t(const Formula&)> go = [&](const Formula& f) -> std::size_t {
    Formula g = f;
    switch (f.kind()) {
      case Formula::Kind::predicate: return predicate_index(f.name());
      case Formula::Kind::constant: break;
      case Formula::Kind::unary:
        g = Formula::unary(f.connective(), Formula::predicate(ps_.signature.predicates[go(f.arg(0))]));
        break;
      case Formula::Kind::binary: {
        auto a = go(f.arg(0));
        auto b = go(f.arg(1));
        g = Formula::binary(f.connective(), Formula::predicate(ps_.signature.predicates[a]),
                            Formula::predicate(ps_.signature.predicates[b]));
        break;
      }
      case Formula::Kind::meta: throw UnknownSymbol("schematic variable in a query");
    }
    if (auto it = representative_.find(g); it != representative_.end()) return it->second;
    if (auto rep = find_representative(atoms_.at(g))) return *rep;
    throw Error("formula " + to_text(g, ps_.signature.variables) + " has no equivalent predicate");
  };
  return go(phi);
}

bool ProofEngine::derivable(const Sequent& s) const {
  std::vector<std::size_t> ante, succ;
  for (const auto& f : s.antecedents) ante.push_back(normalize(f));
  for (const auto& f : s.succedents) succ.push_back(normalize(f));
  return derivable_predicates(ante, succ);
}

bool ProofEngine::derivable_predicates(const std::vector<std::size_t>& antecedents,
                                       const std::vector<std::size_t>& succedents) const {
  const std::size_t n = predicate_count();
  for (auto p : antecedents)
    if (p >= n) throw UnknownSymbol("predicate index out of range");
  for (auto p : succedents)
    if (p >= n) throw UnknownSymbol("predicate index out of range");
  if (n <= options_.saturation_bound) {
    std::uint64_t g = 0, d = 0;
    for (auto p : antecedents) g |= std::uint64_t{1} << p;
    for (auto p : succedents) d |= std::uint64_t{1} << p;
    for (std::uint64_t m : saturated_models())
      if ((g & ~m) == 0 && (d & m) == 0) return false;
    return true;
  }
  std::vector<Lit> assumptions;
  for (auto p : antecedents) assumptions.push_back(pos(static_cast<int>(p)));
  for (auto p : succedents) assumptions.push_back(neg(static_cast<int>(p)));
  return entails(assumptions);
}

bool ProofEngine::derivable_unnormalized(const Sequent& s) const {
  for (const auto& f : s.antecedents) check_symbols(f);
  for (const auto& f : s.succedents) check_symbols(f);
  bool known = true;
  for (const auto* side : {&s.antecedents, &s.succedents})
    for (const auto& f : *side) known = known && atoms_.count(f) > 0;
  std::vector<Lit> assumptions;
  if (known) {
    for (const auto& f : s.antecedents) assumptions.push_back(pos(atoms_.at(f)));
    for (const auto& f : s.succedents) assumptions.push_back(neg(atoms_.at(f)));
    return entails(assumptions);
  }
  ClauseSet cs = *clauses_;
  auto atoms = atoms_;
  for (const auto& f : s.antecedents) assumptions.push_back(pos(atom_of(f, cs, atoms)));
  for (const auto& f : s.succedents) assumptions.push_back(neg(atom_of(f, cs, atoms)));
  return !cs.satisfiable(assumptions);
}

const std::vector<std::uint64_t>& ProofEngine::saturated_models() const {
  const std::size_t n = predicate_count();
  if (n > options_.saturation_bound) throw CarrierTooLarge("saturation over predicate sets", n, options_.saturation_bound);
  std::call_once(models_once_, [&] { models_ = clauses_->project_models(static_cast<int>(n)); });
  return models_;
}

std::vector<char> ProofEngine::atomic_derivability() const {
  const std::size_t n = predicate_count();
  std::vector<char> out(n * n, 0);
  if (n <= options_.saturation_bound) {
    const auto& models = saturated_models();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        bool ok = true;
        for (std::uint64_t m : models)
          if ((m >> a & 1) && !(m >> b & 1)) {
            ok = false;
            break;
          }
        out[a * n + b] = ok;
      }
    return out;
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      out[a * n + b] = a == b || entails({pos(static_cast<int>(a)), neg(static_cast<int>(b))});
  return out;
}

std::vector<Sequent> ProofEngine::clause_sequents() const {
  std::vector<Formula> formula_of(static_cast<std::size_t>(clauses_->atom_count()), atom_formula_[0]);
  for (const auto& [f, id] : atoms_) formula_of[static_cast<std::size_t>(id)] = f;
  std::vector<Sequent> out;
  for (const auto& c : clauses_->clauses()) {
    Sequent s;
    for (Lit l : c) {
      const Formula& f = formula_of[static_cast<std::size_t>(detail::atom_of_lit(l))];
      (detail::is_negative(l) ? s.antecedents : s.succedents).push_back(f);
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace abslog
