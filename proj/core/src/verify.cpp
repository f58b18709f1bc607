#include <algorithm>
#include <random>
#include <set>

#include "abslog/error.hpp"
#include "abslog/proofengine.hpp"

namespace abslog {

Element eval_abstract(const Abstraction& abs, const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::predicate: {
      auto e = abs.lattice().find(phi.name());
      if (!e) throw UnknownSymbol("unknown predicate '" + phi.name() + "'");
      return *e;
    }
    case Formula::Kind::meta: throw UnknownSymbol("schematic variable $" + phi.name() + " cannot be evaluated");
    default: break;
  }
  Connective c = phi.connective();
  if (!abs.has_table(c))
    throw UnknownSymbol("no abstract table for '" + std::string(connective_name(c)) + "'");
  if (phi.kind() == Formula::Kind::constant) return abs.apply(c);
  if (phi.kind() == Formula::Kind::unary) return abs.apply(c, eval_abstract(abs, phi.arg(0)));
  return abs.apply(c, eval_abstract(abs, phi.arg(0)), eval_abstract(abs, phi.arg(1)));
}

ConcreteSet eval_concrete(const Abstraction& abs, const Formula& phi) {
  switch (phi.kind()) {
    case Formula::Kind::predicate: {
      auto e = abs.lattice().find(phi.name());
      if (!e) throw UnknownSymbol("unknown predicate '" + phi.name() + "'");
      return abs.gamma(*e);
    }
    case Formula::Kind::meta: throw UnknownSymbol("schematic variable $" + phi.name() + " cannot be evaluated");
    case Formula::Kind::constant: return abs.concrete(phi.connective());
    case Formula::Kind::unary: {
      auto a = eval_concrete(abs, phi.arg(0));
      return abs.concrete(phi.connective(), &a);
    }
    case Formula::Kind::binary: {
      auto a = eval_concrete(abs, phi.arg(0));
      auto b = eval_concrete(abs, phi.arg(1));
      return abs.concrete(phi.connective(), &a, &b);
    }
  }
  return abs.universe().empty_set();
}

bool holds_concrete(const Abstraction& abs, const Sequent& s) {
  ConcreteSet lhs = abs.universe().full_set();
  for (const auto& f : s.antecedents) lhs &= eval_concrete(abs, f);
  ConcreteSet rhs = abs.universe().empty_set();
  for (const auto& f : s.succedents) rhs |= eval_concrete(abs, f);
  return lhs.is_subset_of(rhs);
}

namespace {

void check_alignment(const ProofEngine& engine, const Abstraction& abs) {
  const auto& preds = engine.system().signature.predicates;
  if (preds != abs.lattice().names())
    throw Error("proof system predicates do not match the lattice elements of '" + abs.name() + "'");
}

std::vector<char> derivability_matrix(const ProofEngine& engine) {
  // Materializing the saturated relation is what the bound protects.
  engine.saturated_models();
  return engine.atomic_derivability();
}

}  // namespace

LindenbaumAlgebra build_lindenbaum(const ProofEngine& engine, const Abstraction& abs) {
  check_alignment(engine, abs);
  const std::size_t n = engine.predicate_count();
  const auto d = derivability_matrix(engine);
  LindenbaumAlgebra lind;
  lind.class_of.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (lind.class_of[a] != n) continue;
    std::size_t cls = lind.classes.size();
    lind.classes.emplace_back();
    for (std::size_t b = a; b < n; ++b)
      if (lind.class_of[b] == n && d[a * n + b] && d[b * n + a]) {
        lind.class_of[b] = cls;
        lind.classes.back().push_back(b);
      }
  }
  const std::size_t k = lind.classes.size();
  lind.order.assign(k * k, 0);
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t e = 0; e < k; ++e) lind.order[c * k + e] = d[lind.classes[c][0] * n + lind.classes[e][0]];
  lind.embedding = lind.class_of;

  const auto& preds = engine.system().signature.predicates;
  auto pred = [&](std::size_t p) { return Formula::predicate(preds[p]); };
  auto cls_of = [&](const Formula& f) -> std::optional<std::size_t> {
    try {
      return lind.class_of[engine.normalize(f)];
    } catch (const Error&) {
      lind.every_formula_normalizes = false;
      return std::nullopt;
    }
  };
  for (Connective c : engine.system().signature.connectives) {
    std::vector<std::size_t> table;
    switch (arity(c)) {
      case 0: table.push_back(cls_of(Formula::constant(c)).value_or(k)); break;
      case 1:
        for (std::size_t x = 0; x < k; ++x) {
          std::optional<std::size_t> first;
          for (std::size_t m : lind.classes[x]) {
            auto r = cls_of(Formula::unary(c, pred(m)));
            if (!first) first = r;
            else if (r != first) lind.operations_well_defined = false;
          }
          table.push_back(first.value_or(k));
        }
        break;
      default:
        for (std::size_t x = 0; x < k; ++x)
          for (std::size_t y = 0; y < k; ++y) {
            std::optional<std::size_t> first;
            bool seeded = false;
            for (std::size_t m1 : lind.classes[x])
              for (std::size_t m2 : lind.classes[y]) {
                auto r = cls_of(Formula::binary(c, pred(m1), pred(m2)));
                if (!seeded) {
                  first = r;
                  seeded = true;
                } else if (r != first) {
                  lind.operations_well_defined = false;
                }
              }
            table.push_back(first.value_or(k));
          }
    }
    lind.operations.emplace(c, std::move(table));
  }
  return lind;
}

bool IsomorphismReport::holds() const {
  if (!(surjective && injective && order_preserving && order_reflecting)) return false;
  return std::all_of(homomorphism.begin(), homomorphism.end(), [](const auto& kv) { return kv.second; });
}

IsomorphismReport verify_isomorphism(const Abstraction& abs, const LindenbaumAlgebra& lind) {
  IsomorphismReport rep;
  const auto& lat = abs.lattice();
  const std::size_t n = lat.size();
  const std::size_t k = lind.classes.size();
  auto e = [&](Element a) { return lind.embedding.at(a); };

  std::vector<char> hit(k, 0);
  for (Element a = 0; a < n; ++a) hit[e(a)] = 1;
  rep.surjective = lind.every_formula_normalizes && std::all_of(hit.begin(), hit.end(), [](char h) { return h; });
  if (!rep.surjective) rep.failures.push_back("some formula class contains no predicate");

  for (const auto& cls : lind.classes)
    if (cls.size() > 1) {
      rep.injective = false;
      rep.failures.push_back("e(" + lat.name(cls[0]) + ") = e(" + lat.name(cls[1]) + ")");
    }

  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      bool abstract = lat.leq(a, b);
      bool logical = lind.leq(e(a), e(b));
      if (abstract && !logical) {
        if (rep.order_preserving)
          rep.failures.push_back(lat.name(a) + " <= " + lat.name(b) + " but " + lat.name(a) + "(x) |- " + lat.name(b) +
                                 "(x) is not derivable");
        rep.order_preserving = false;
      }
      if (!abstract && logical) {
        if (rep.order_reflecting)
          rep.failures.push_back(lat.name(a) + "(x) |- " + lat.name(b) + "(x) is derivable but " + lat.name(a) +
                                 " is not below " + lat.name(b));
        rep.order_reflecting = false;
      }
    }

  for (const auto& [c, table] : lind.operations) {
    bool ok = lind.operations_well_defined && abs.has_table(c);
    std::string witness;
    if (ok) {
      switch (arity(c)) {
        case 0:
          ok = table[0] == e(abs.apply(c));
          if (!ok) witness = std::string(connective_name(c));
          break;
        case 1:
          for (Element a = 0; a < n && ok; ++a)
            if (table[e(a)] != e(abs.apply(c, a))) {
              ok = false;
              witness = std::string(connective_name(c)) + "(" + lat.name(a) + ")";
            }
          break;
        default:
          for (Element a = 0; a < n && ok; ++a)
            for (Element b = 0; b < n && ok; ++b)
              if (table[e(a) * k + e(b)] != e(abs.apply(c, a, b))) {
                ok = false;
                witness = std::string(connective_name(c)) + "(" + lat.name(a) + ", " + lat.name(b) + ")";
              }
      }
    } else {
      witness = std::string(connective_name(c)) + " is not well defined on classes";
    }
    rep.homomorphism[c] = ok;
    if (!ok) rep.failures.push_back("homomorphism fails at " + witness);
  }
  return rep;
}

namespace {

/// Builds random derivations bottom-up by applying the schemas of the system.
class Replayer {
 public:
  Replayer(const Abstraction& abs, const ProofSystem& ps, std::size_t depth_bound, std::uint64_t seed)
      : abs_(abs), ps_(ps), depth_bound_(depth_bound), rng_(seed) {
    for (const auto& r : ps_.rules)
      if (r.premises.empty() && (r.kind == RuleKind::operation_axiom || r.kind == RuleKind::order_axiom))
        axioms_.push_back(&r.conclusion);
  }

  /// Produces one new derivation conclusion, or nullopt when the step failed.
  std::optional<Sequent> step() {
    if (pool_.size() < 8 || pick(4) == 0) return leaf();
    static const char* const kRules[] = {"weak.l", "weak.r", "exch.l", "cut",     "and.l",  "and.r",
                                         "or.l",   "or.r",   "impl.l", "impl.r",  "coimpl.l", "coimpl.r",
                                         "not.l",  "not.r",  "not.contra"};
    const char* rule = kRules[pick(std::size(kRules))];
    if (!ps_.has_rule(rule)) return std::nullopt;
    return apply(rule);
  }

 private:
  struct Item {
    Sequent s;
    std::size_t depth;
  };

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Formula random_predicate() {
    const auto& p = ps_.signature.predicates;
    return Formula::predicate(p[pick(p.size())]);
  }

  std::optional<Sequent> record(Sequent s, std::size_t depth) {
    if (s.antecedents.size() > 5 || s.succedents.size() > 5 || depth > depth_bound_) return std::nullopt;
    for (const auto* side : {&s.antecedents, &s.succedents})
      for (const auto& f : *side)
        if (f.depth() > 4) return std::nullopt;
    pool_.push_back({s, depth});
    return s;
  }

  std::optional<Sequent> leaf() {
    std::size_t choice = pick(4);
    if (choice == 0 && !axioms_.empty()) return record(*axioms_[pick(axioms_.size())], 1);
    Formula p = random_predicate();
    if (choice == 1 && ps_.has_rule("tt.r")) return record({{}, {Formula::constant(Connective::tt)}}, 1);
    if (choice == 2 && ps_.has_rule("ff.l")) return record({{Formula::constant(Connective::ff)}, {}}, 1);
    if (choice == 3 && ps_.has_rule("not.invol.l")) {
      Formula nn = Formula::unary(Connective::not_, Formula::unary(Connective::not_, p));
      return pick(2) ? record({{nn}, {p}}, 1) : record({{p}, {nn}}, 1);
    }
    return record({{p}, {p}}, 1);
  }

  const Item& any() { return pool_[pick(pool_.size())]; }

  static std::vector<Formula> without(std::vector<Formula> v, std::size_t i) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return v;
  }
  static std::vector<Formula> merged(std::vector<Formula> a, const std::vector<Formula>& b) {
    for (const auto& f : b)
      if (std::find(a.begin(), a.end(), f) == a.end()) a.push_back(f);
    return a;
  }

  std::optional<Sequent> apply(std::string_view rule) {
    const Item first = any();
    const Sequent& s = first.s;
    const std::size_t depth = first.depth + 1;
    auto pair_depth = [&](const Item& other) { return std::max(first.depth, other.depth) + 1; };

    if (rule == "weak.l") return record({merged(s.antecedents, {random_formula()}), s.succedents}, depth);
    if (rule == "weak.r") return record({s.antecedents, merged(s.succedents, {random_formula()})}, depth);
    if (rule == "exch.l") {
      auto a = s.antecedents;
      std::reverse(a.begin(), a.end());
      return record({a, s.succedents}, depth);
    }
    if (rule == "cut") {
      if (s.succedents.empty()) return std::nullopt;
      std::size_t i = pick(s.succedents.size());
      const Formula& phi = s.succedents[i];
      for (std::size_t tries = 0; tries < 16; ++tries) {
        const Item second = any();
        auto it = std::find(second.s.antecedents.begin(), second.s.antecedents.end(), phi);
        if (it == second.s.antecedents.end()) continue;
        auto rest = without(second.s.antecedents, static_cast<std::size_t>(it - second.s.antecedents.begin()));
        return record({merged(s.antecedents, rest), merged(without(s.succedents, i), second.s.succedents)},
                      pair_depth(second));
      }
      return std::nullopt;
    }
    if (rule == "and.l" || rule == "coimpl.l") {
      if (rule == "and.l") {
        if (s.antecedents.size() < 2) return std::nullopt;
        auto rest = without(without(s.antecedents, 1), 0);
        rest.push_back(Formula::binary(Connective::and_, s.antecedents[0], s.antecedents[1]));
        return record({rest, s.succedents}, depth);
      }
      if (s.antecedents.empty() || s.succedents.empty()) return std::nullopt;
      std::size_t i = pick(s.antecedents.size()), j = pick(s.succedents.size());
      auto ante = without(s.antecedents, i);
      ante.push_back(Formula::binary(Connective::coimpl, s.antecedents[i], s.succedents[j]));
      return record({ante, without(s.succedents, j)}, depth);
    }
    if (rule == "or.r") {
      if (s.succedents.size() < 2) return std::nullopt;
      auto rest = without(without(s.succedents, 1), 0);
      rest.push_back(Formula::binary(Connective::or_, s.succedents[0], s.succedents[1]));
      return record({s.antecedents, rest}, depth);
    }
    if (rule == "impl.r") {
      if (s.antecedents.empty() || s.succedents.empty()) return std::nullopt;
      std::size_t i = pick(s.antecedents.size()), j = pick(s.succedents.size());
      auto succ = without(s.succedents, j);
      succ.push_back(Formula::binary(Connective::impl, s.antecedents[i], s.succedents[j]));
      return record({without(s.antecedents, i), succ}, depth);
    }
    if (rule == "not.l") {
      if (s.succedents.empty()) return std::nullopt;
      std::size_t j = pick(s.succedents.size());
      auto ante = s.antecedents;
      ante.push_back(Formula::unary(Connective::not_, s.succedents[j]));
      return record({ante, without(s.succedents, j)}, depth);
    }
    if (rule == "not.r") {
      if (s.antecedents.empty()) return std::nullopt;
      std::size_t i = pick(s.antecedents.size());
      auto succ = s.succedents;
      succ.push_back(Formula::unary(Connective::not_, s.antecedents[i]));
      return record({without(s.antecedents, i), succ}, depth);
    }
    if (rule == "not.contra") {
      if (s.antecedents.size() != 1 || s.succedents.size() != 1) return std::nullopt;
      return record({{Formula::unary(Connective::not_, s.succedents[0])},
                     {Formula::unary(Connective::not_, s.antecedents[0])}},
                    depth);
    }
    // Two-premise rules.
    const Item second = any();
    const Sequent& t = second.s;
    if (rule == "and.r") {
      if (s.succedents.empty() || t.succedents.empty()) return std::nullopt;
      std::size_t i = pick(s.succedents.size()), j = pick(t.succedents.size());
      auto succ = merged(without(s.succedents, i), without(t.succedents, j));
      succ.push_back(Formula::binary(Connective::and_, s.succedents[i], t.succedents[j]));
      return record({merged(s.antecedents, t.antecedents), succ}, pair_depth(second));
    }
    if (rule == "or.l") {
      if (s.antecedents.empty() || t.antecedents.empty()) return std::nullopt;
      std::size_t i = pick(s.antecedents.size()), j = pick(t.antecedents.size());
      auto ante = merged(without(s.antecedents, i), without(t.antecedents, j));
      ante.push_back(Formula::binary(Connective::or_, s.antecedents[i], t.antecedents[j]));
      return record({ante, merged(s.succedents, t.succedents)}, pair_depth(second));
    }
    if (rule == "impl.l" || rule == "coimpl.r") {
      // s: G1 |- phi, D1   t: G2, psi |- D2
      if (s.succedents.empty() || t.antecedents.empty()) return std::nullopt;
      std::size_t i = pick(s.succedents.size()), j = pick(t.antecedents.size());
      auto ante = merged(s.antecedents, without(t.antecedents, j));
      auto succ = merged(without(s.succedents, i), t.succedents);
      if (rule == "impl.l") {
        ante.push_back(Formula::binary(Connective::impl, s.succedents[i], t.antecedents[j]));
      } else {
        succ.push_back(Formula::binary(Connective::coimpl, s.succedents[i], t.antecedents[j]));
      }
      return record({ante, succ}, pair_depth(second));
    }
    return std::nullopt;
  }

  Formula random_formula() {
    const auto& sig = ps_.signature;
    if (sig.connectives.empty() || pick(2) == 0) return random_predicate();
    Connective c = sig.connectives[pick(sig.connectives.size())];
    switch (arity(c)) {
      case 0: return Formula::constant(c);
      case 1: return Formula::unary(c, random_predicate());
      default: return Formula::binary(c, random_predicate(), random_predicate());
    }
  }

  const Abstraction& abs_;
  const ProofSystem& ps_;
  std::size_t depth_bound_;
  std::mt19937_64 rng_;
  std::vector<const Sequent*> axioms_;
  std::vector<Item> pool_;
};

Sequent predicate_sequent(const std::vector<std::string>& preds, std::uint64_t g, std::uint64_t d) {
  Sequent s;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    if (g >> k & 1) s.antecedents.push_back(Formula::predicate(preds[k]));
    if (d >> k & 1) s.succedents.push_back(Formula::predicate(preds[k]));
  }
  return s;
}

}  // namespace

SoundnessResult verify_soundness(const Abstraction& abs, const ProofEngine& engine, std::size_t depth_bound,
                                 std::size_t samples, std::uint64_t seed, std::size_t exhaustive_bound) {
  check_alignment(engine, abs);
  SoundnessResult res;
  const auto& preds = engine.system().signature.predicates;
  const std::size_t n = preds.size();
  const auto& models = engine.saturated_models();

  // Concrete point valuations: bit k set iff the point lies in gamma(k).
  std::set<std::uint64_t> points;
  for (std::size_t p = 0; p < abs.universe().size(); ++p) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (abs.gamma(k).test(p)) m |= std::uint64_t{1} << k;
    points.insert(m);
  }

  auto fail = [&](Sequent s) {
    res.sound = false;
    res.counterexample = std::move(s);
    return res;
  };

  if (n <= exhaustive_bound) {
    const std::uint64_t full = std::uint64_t{1} << n;
    for (std::uint64_t g = 0; g < full; ++g)
      for (std::uint64_t d = 0; d < full; ++d) {
        bool derivable = std::none_of(models.begin(), models.end(),
                                      [&](std::uint64_t m) { return (g & ~m) == 0 && (d & m) == 0; });
        if (!derivable) continue;
        ++res.saturated_checked;
        bool holds = std::none_of(points.begin(), points.end(),
                                  [&](std::uint64_t m) { return (g & ~m) == 0 && (d & m) == 0; });
        if (!holds) return fail(predicate_sequent(preds, g, d));
      }
  } else {
    // A derivable sequent fails concretely iff some point valuation is not a model.
    std::set<std::uint64_t> model_set(models.begin(), models.end());
    for (std::uint64_t m : points) {
      ++res.saturated_checked;
      if (!model_set.count(m)) {
        std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
        return fail(predicate_sequent(preds, m, all & ~m));
      }
    }
  }

  for (const auto& s : engine.clause_sequents())
    if (!holds_concrete(abs, s)) return fail(s);

  Replayer replay(abs, engine.system(), depth_bound, seed);
  std::size_t attempts = 0;
  while (res.derivations_replayed < samples && attempts < samples * 50) {
    ++attempts;
    auto s = replay.step();
    if (!s) continue;
    ++res.derivations_replayed;
    if (!holds_concrete(abs, *s)) return fail(*s);
  }
  return res;
}

CompletenessResult verify_completeness(const Abstraction& abs, const ProofEngine& engine) {
  check_alignment(engine, abs);
  CompletenessResult res;
  if (!check_order_embedding(abs).holds) {
    res.status = CompletenessResult::Status::precondition_unmet;
    return res;
  }
  const std::size_t n = engine.predicate_count();
  const auto d = engine.atomic_derivability();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (abs.gamma(a).is_subset_of(abs.gamma(b)) && !d[a * n + b]) {
        res.status = CompletenessResult::Status::incomplete;
        res.witness = {a, b};
        return res;
      }
  return res;
}

}  // namespace abslog
