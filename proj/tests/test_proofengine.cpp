#include <doctest.h>

#include <random>

#include "abslog/builtins.hpp"
#include "abslog/error.hpp"
#include "abslog/generators.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/proofengine.hpp"

using namespace abslog;

namespace {

ProofSystem system_of(const Abstraction& abs) { return generate_proof_system(abs, preservation_report(abs)); }

Formula P(const std::string& n) { return Formula::predicate(n); }

// For Boolean-image embeddings with and/or preserved, a predicate sequent is
// derivable iff meet(antecedents) <= join(succedents) in the lattice.
bool lattice_oracle(const FiniteLattice& L, unsigned g, unsigned d) {
  Element m = L.top(), j = L.bottom();
  for (Element a = 0; a < L.size(); ++a) {
    if (g >> a & 1) m = L.meet(m, a);
    if (d >> a & 1) j = L.join(j, a);
  }
  return L.leq(m, j);
}

Abstraction same_image() {
  auto L = FiniteLattice::build({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}},
                                ClosureMode::hasse);
  auto u = ConcreteUniverse::atoms({"p", "q"});
  ConcreteSet s = u.empty_set();
  s.set(0);
  return Abstraction("same", L, u, {u.empty_set(), s, s, u.full_set()});
}

}  // namespace

TEST_CASE("normalize and eval examples") {
  auto parity = builtin("parity");
  ProofEngine e(system_of(*parity));
  const auto& L = parity->lattice();
  auto norm = [&](const char* t) { return L.name(e.normalize(parse_formula(t))); };
  CHECK(norm("Even(x) & Odd(x)") == "bot");
  CHECK(norm("~~Even(x)") == "Even");
  CHECK(norm("(Even(x) -> bot(x)) | Even(x)") == "top");
  CHECK(L.name(eval_abstract(*parity, parse_formula("Even(x) | Odd(x)"))) == "top");
  CHECK(L.name(eval_abstract(*parity, parse_formula("Even(x) -> bot(x)"))) == "Odd");
  for (Element a = 0; a < L.size(); ++a) {
    CHECK(eval_abstract(*parity, P(L.name(a))) == a);
    CHECK(eval_concrete(*parity, P(L.name(a))) == parity->gamma(a));
  }
  CHECK(eval_concrete(*parity, parse_formula("~Even(x)")) == parity->gamma(L.index("Odd")));
  CHECK(eval_concrete(*parity, parse_formula("tt")) == parity->universe().full_set());
  CHECK(holds_concrete(*parity, parse_sequent("tt |- Even(x), Odd(x)")));
  CHECK(holds_concrete(*parity, parse_sequent("Even(x) -> Odd(x) |- Even(x) -> Odd(x)")));
  CHECK_FALSE(holds_concrete(*parity, parse_sequent("tt |- Even(x)")));
}

TEST_CASE("derivability examples and lattice oracle") {
  auto parity = builtin("parity");
  ProofEngine e(system_of(*parity));
  CHECK(e.derivable(parse_sequent("~Odd(x) |- Even(x)")));
  CHECK(e.derivable(parse_sequent("bot(x) |- Odd(x)")));
  CHECK_FALSE(e.derivable(parse_sequent("Odd(x) |- Even(x)")));
  CHECK(e.derivable(parse_sequent("|- Even(x), Odd(x)")));
  CHECK_THROWS_AS(e.derivable(parse_sequent("Foo(x) |- Even(x)")), UnknownSymbol);

  for (const char* name : {"parity", "diamond"}) {
    auto abs = builtin(name);
    ProofEngine en(system_of(*abs));
    const auto& L = abs->lattice();
    const unsigned n = static_cast<unsigned>(L.size());
    for (unsigned g = 0; g < (1u << n); ++g)
      for (unsigned d = 0; d < (1u << n); ++d) {
        std::vector<std::size_t> gv, dv;
        for (unsigned k = 0; k < n; ++k) {
          if (g >> k & 1) gv.push_back(k);
          if (d >> k & 1) dv.push_back(k);
        }
        CHECK(en.derivable_predicates(gv, dv) == lattice_oracle(L, g, d));
      }
  }

  auto oct = builtin("octagon");
  ProofEngine oe(system_of(*oct));
  auto s = parse_sequent("p:+x+y>=1(x,y), p:-x-y>=0(x,y) |- ff");
  CHECK(oe.derivable(s));
  CHECK(holds_concrete(*oct, s));
}

TEST_CASE("weakening and normalization invariance") {
  std::mt19937_64 rng(5);
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    ProofEngine e(system_of(*abs));
    const auto n = e.predicate_count();
    const auto& names = abs->lattice().names();
    for (int k = 0; k < 200; ++k) {
      std::vector<std::size_t> g, d, g2, d2;
      for (std::size_t p = 0; p < n; ++p) {
        if (rng() % 3 == 0) g.push_back(p);
        if (rng() % 3 == 0) d.push_back(p);
      }
      g2 = g;
      d2 = d;
      g2.push_back(rng() % n);
      d2.push_back(rng() % n);
      if (e.derivable_predicates(g, d)) CHECK(e.derivable_predicates(g2, d2));

      // A compound antecedent behaves like its normal form.
      if (!e.system().signature.has(Connective::not_)) continue;
      Element a = rng() % n;
      auto phi = Formula::unary(Connective::not_, P(names[a]));
      Sequent s{{phi}, {}};
      for (auto q : d) s.succedents.push_back(P(names[q]));
      std::vector<std::size_t> gn{e.normalize(phi)};
      CHECK(e.derivable(s) == e.derivable_predicates(gn, d));
      CHECK(e.derivable(s) == e.derivable_unnormalized(s));
    }
  }
}

TEST_CASE("lindenbaum, soundness, completeness") {
  auto parity = builtin("parity");
  ProofEngine e(system_of(*parity));
  auto lind = build_lindenbaum(e, *parity);
  CHECK(lind.classes.size() == 4);
  CHECK(verify_isomorphism(*parity, lind).holds());
  auto snd = verify_soundness(*parity, e);
  CHECK(snd.sound);
  CHECK(snd.saturated_checked > 0);
  CHECK(snd.derivations_replayed == 500);
  CHECK(verify_completeness(*parity, e).status == CompletenessResult::Status::complete);

  auto sign = builtin("sign");
  ProofEngine se(system_of(*sign));
  CHECK(verify_soundness(*sign, se).sound);

  auto one_l = FiniteLattice::build({"u"}, {}, ClosureMode::full);
  auto u = ConcreteUniverse::atoms({"p"});
  Abstraction one("one", one_l, u, {u.full_set()});
  ProofEngine oe(system_of(one));
  auto ol = build_lindenbaum(oe, one);
  CHECK(ol.classes.size() == 1);
  CHECK(verify_isomorphism(one, ol).holds());

  // Incomparable elements with equal images stay separate classes.
  auto same = same_image();
  ProofEngine sme(system_of(same));
  auto sl = build_lindenbaum(sme, same);
  CHECK(sl.classes.size() == 4);
  auto iso = verify_isomorphism(same, sl);
  CHECK(iso.surjective);
  CHECK(iso.injective);
  CHECK(verify_completeness(same, sme).status == CompletenessResult::Status::precondition_unmet);
}

TEST_CASE("corrupted system yields a counterexample") {
  auto parity = builtin("parity");
  auto ps = system_of(*parity);
  ps.rules.push_back(Rule{RuleKind::order_axiom, "ord.top.bot", {}, parse_sequent("top(x) |- bot(x)"), false});
  ps.sort_rules();
  ProofEngine e(ps);
  auto r = verify_soundness(*parity, e);
  CHECK_FALSE(r.sound);
  REQUIRE(r.counterexample);
  CHECK_FALSE(holds_concrete(*parity, *r.counterexample));
  CHECK(e.derivable(*r.counterexample));
}

TEST_CASE("saturation bound") {
  auto interval = builtin("interval");
  EngineOptions opt;
  opt.saturation_bound = 4;
  ProofEngine e(system_of(*interval), opt);
  CHECK_THROWS_AS(e.saturated_models(), CarrierTooLarge);
  CHECK_THROWS_AS(build_lindenbaum(e, *interval), CarrierTooLarge);
  // Queries still work through the solver.
  CHECK(e.derivable(parse_sequent("i0_0(x) |- i0_3(x)")));
}

TEST_CASE("random abstractions: soundness and completeness") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 20; ++k) {
    auto abs = random_abstraction(rng);
    ProofEngine e(system_of(abs));
    CHECK(verify_soundness(abs, e, 4, 50).sound);
    CHECK(check_order_embedding(abs).holds);
    CHECK(verify_completeness(abs, e).status == CompletenessResult::Status::complete);
  }
}
