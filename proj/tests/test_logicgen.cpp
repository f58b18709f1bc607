#include <doctest.h>

#include <regex>
#include <set>

#include "abslog/builtins.hpp"
#include "abslog/error.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/proofengine.hpp"

using namespace abslog;

namespace {

ProofSystem system_of(const Abstraction& abs) { return generate_proof_system(abs, preservation_report(abs)); }

bool has_axiom(const ProofSystem& ps, const std::string& text) {
  auto s = parse_sequent(text);
  for (const auto& r : ps.rules)
    if (r.premises.empty() && r.conclusion == s) return true;
  return false;
}

}  // namespace

TEST_CASE("signature follows the preservation report") {
  auto parity = builtin("parity");
  auto sig = generate_signature(*parity, preservation_report(*parity));
  CHECK(sig.predicates == std::vector<std::string>{"bot", "Even", "Odd", "top"});
  CHECK(sig.connectives.size() == 7);

  auto oct = builtin("octagon");
  auto osig = generate_signature(*oct, preservation_report(*oct));
  CHECK(osig.has(Connective::not_));
  CHECK_FALSE(osig.has(Connective::and_));
  CHECK_FALSE(osig.has(Connective::or_));

  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto rep = preservation_report(*abs);
    auto s = generate_signature(*abs, rep);
    for (auto c : kAllConnectives) CHECK(s.has(c) == rep.preserved(c));
  }
}

TEST_CASE("proof system contents") {
  auto parity = builtin("parity");
  auto ps = system_of(*parity);
  CHECK(has_axiom(ps, "Even(x) & Odd(x) |- bot(x)"));
  CHECK(has_axiom(ps, "bot(x) |- Even(x) & Odd(x)"));
  CHECK(has_axiom(ps, "bot(x) |- Even(x)"));
  CHECK(has_axiom(ps, "Even(x) | Odd(x) |- top(x)"));
  CHECK(has_axiom(ps, "top(x) |- Even(x) | Odd(x)"));
  for (const auto& a : parity->lattice().names()) CHECK(has_axiom(ps, a + "(x) |- " + a + "(x)"));
  for (const char* r : {"id", "cut", "weak.l", "weak.r", "contr.l", "contr.r", "exch.l", "exch.r"})
    CHECK(ps.has_rule(r));

  auto oct = builtin("octagon");
  auto ops = system_of(*oct);
  CHECK(has_axiom(ops, "~p:+x+y>=1(x,y) |- p:-x-y>=0(x,y)"));
  CHECK(has_axiom(ops, "p:-x-y>=0(x,y) |- ~p:+x+y>=1(x,y)"));

  // Counts: order axioms = |{a <= b}|; one axiom pair per table entry.
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto sys = system_of(*abs);
    const auto& L = abs->lattice();
    std::size_t pairs = 0;
    for (Element a = 0; a < L.size(); ++a)
      for (Element b = 0; b < L.size(); ++b) pairs += L.leq(a, b);
    CHECK(sys.count(RuleKind::order_axiom) == pairs);
    std::size_t entries = 0;
    for (auto c : sys.signature.connectives) {
      std::size_t n = L.size();
      entries += arity(c) == 0 ? 1 : arity(c) == 1 ? n : n * n;
    }
    CHECK(sys.count(RuleKind::operation_axiom) == 2 * entries + abs->extra_axioms().size());
    // Every op axiom matches the abstract table.
    for (const auto& r : sys.rules) {
      if (r.kind != RuleKind::operation_axiom || r.name.rfind("op.ax.", 0) == 0) continue;
      const auto& s = r.conclusion;
      bool left = r.name.back() == 'l';
      const Formula& compound = left ? s.antecedents[0] : s.succedents[0];
      const Formula& result = left ? s.succedents[0] : s.antecedents[0];
      CHECK(eval_abstract(*abs, compound) == L.index(result.name()));
    }
  }
}

TEST_CASE("minimizer") {
  auto chain3 = builtin("chain3");
  auto ps = system_of(*chain3);
  MinimizeStats stats;
  auto m = minimize_proof_system(ps, &stats);
  CHECK(stats.closure_verified);
  std::set<std::string> ords;
  for (const auto& r : m.rules)
    if (r.kind == RuleKind::order_axiom) ords.insert(r.name);
  CHECK(ords == std::set<std::string>{"ord.bot.m", "ord.m.top"});

  auto parity = builtin("parity");
  auto pm = minimize_proof_system(system_of(*parity), &stats);
  CHECK_FALSE(pm.has_rule("op.and.Even.top.l"));
  CHECK_FALSE(pm.has_rule("op.and.Even.top.r"));
  // Each removed rule is derivable from what is left.
  ProofEngine engine(pm);
  auto full = system_of(*parity);
  for (const auto& name : stats.removed) {
    const Rule* r = full.find(name);
    REQUIRE(r);
    CHECK(engine.derivable(r->conclusion));
  }
  // Idempotent.
  CHECK(minimize_proof_system(pm) == pm);
}

TEST_CASE("rendering") {
  auto parity = builtin("parity");
  auto ps = system_of(*parity);
  CHECK(render(ps, RenderFormat::text) == render(system_of(*builtin("parity")), RenderFormat::text));
  for (const auto& name : builtin_names()) {
    auto sys = system_of(*builtin(name));
    CHECK(parse_machine(render(sys, RenderFormat::machine)) == sys);
  }
  auto latex = render(ps, RenderFormat::latex);
  std::regex block(R"(\\infer\[)");
  auto n = std::distance(std::sregex_iterator(latex.begin(), latex.end(), block), std::sregex_iterator());
  CHECK(static_cast<std::size_t>(n) == ps.rules.size());
  CHECK_THROWS_AS(parse_render_format("pdf"), UnknownFormat);
  CHECK_THROWS_AS(parse_machine("abslog-rules v1\nbogus line\n"), ParseError);
}

TEST_CASE("formula syntax") {
  auto f = parse_formula("(Even(x) -> bot(x)) | ~Odd(x)");
  CHECK(f.kind() == Formula::Kind::binary);
  CHECK(f.connective() == Connective::or_);
  CHECK(parse_formula(to_text(f)) == f);
  auto s = parse_sequent("p:+x+y>=1(x,y), p:-x-y>=0(x,y) |- ff");
  CHECK(s.antecedents.size() == 2);
  CHECK(s.antecedents[0].name() == "+x+y>=1");
  CHECK(parse_sequent(to_text(s, "x,y")) == s);
  try {
    parse_formula("Even(x) &", 7);
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 7);
    CHECK(e.column() >= 9);
  }
}
