// Acceptance run: one verdict line per criterion, details indented below it.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abslog/builtins.hpp"
#include "abslog/cartesian.hpp"
#include "abslog/generators.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/octagon.hpp"
#include "abslog/proofengine.hpp"

#ifndef ABSLOG_CLI_PATH
#error "ABSLOG_CLI_PATH must name the abslog executable"
#endif

using namespace abslog;
using Clock = std::chrono::steady_clock;

namespace {

// Tolerances.
constexpr std::size_t kRandomInstances = 100;
constexpr std::uint64_t kRandomSeed = 20240601;
constexpr double kSoundnessBudgetSeconds = 60.0;
constexpr double kOctagonBudgetSeconds = 120.0;
constexpr double kNormalizationSpaceLimit = 1e5;
constexpr std::size_t kNormalizationSamples = 10000;
constexpr std::size_t kCartesian3dSamples = 2000;
constexpr std::size_t kNonEmbeddingInstances = 40;

struct Instance {
  std::string label;
  std::shared_ptr<const Abstraction> abs;
  std::unique_ptr<ProofEngine> engine;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ProofSystem system_of(const Abstraction& abs) { return generate_proof_system(abs, preservation_report(abs)); }

std::vector<Instance> make_instances(bool embedding, std::size_t randoms, std::uint64_t seed, bool with_builtins) {
  std::vector<Instance> out;
  if (with_builtins)
    for (const auto& n : builtin_names()) out.push_back({"builtin:" + n, builtin(n), nullptr});
  std::mt19937_64 rng(seed);
  RandomAbstractionOptions opt;
  opt.embedding = embedding;
  if (!embedding) opt.max_points = 4;
  for (std::size_t k = 0; k < randoms; ++k)
    out.push_back({"random#" + std::to_string(k), std::make_shared<const Abstraction>(random_abstraction(rng, opt)),
                   nullptr});
  for (auto& i : out) i.engine = std::make_unique<ProofEngine>(system_of(*i.abs));
  return out;
}

class Report {
 public:
  void line(int id, const std::string& title, bool pass, const std::string& detail) {
    all_ &= pass;
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " -- " << detail << "\n";
  }
  void note(const std::string& s) { std::cout << "        " << s << "\n"; }
  bool all() const { return all_; }

 private:
  bool all_ = true;
};

// ---- criterion 1 -----------------------------------------------------------

// A derivable predicate sequent fails concretely at point p only if, by
// weakening, the sequent {a : p in gamma(a)} |- {a : p not in gamma(a)} is
// derivable.  So soundness of the whole saturated set reduces to one
// refutation per point.
std::optional<std::size_t> unsound_point(const Abstraction& abs, const ProofEngine& e) {
  const auto n = abs.lattice().size();
  for (std::size_t p = 0; p < abs.universe().size(); ++p) {
    std::vector<std::size_t> in, out;
    for (Element a = 0; a < n; ++a) (abs.gamma(a).test(p) ? in : out).push_back(e.predicate_index(abs.lattice().name(a)));
    if (e.derivable_predicates(in, out)) return p;
  }
  return std::nullopt;
}

void criterion1(Report& rep, const std::vector<Instance>& inst, Clock::time_point t0) {
  std::size_t failures = 0, replays = 0, points = 0;
  std::string first;
  for (const auto& i : inst) {
    points += i.abs->universe().size();
    if (auto p = unsound_point(*i.abs, *i.engine)) {
      if (!failures++) first = i.label + " at point " + i.abs->universe().point_text(*p);
      continue;
    }
    auto r = verify_soundness(*i.abs, *i.engine);
    replays += r.derivations_replayed;
    if (!r.sound && !failures++) first = i.label + ": " + to_text(*r.counterexample, i.abs->variables());
  }
  double secs = seconds_since(t0);
  std::ostringstream d;
  d << inst.size() << " instances, " << points << " point refutations, " << replays << " derivations replayed, "
    << failures << " counterexamples, " << secs << " s (budget " << kSoundnessBudgetSeconds << " s)";
  if (failures) d << "; first: " << first;
  rep.line(1, "soundness", failures == 0 && secs < kSoundnessBudgetSeconds, d.str());
}

// ---- criterion 2 -----------------------------------------------------------

void criterion2(Report& rep, const std::vector<Instance>& inst) {
  std::size_t checked = 0, pairs = 0, failures = 0;
  std::string first;
  for (const auto& i : inst) {
    if (!check_order_embedding(*i.abs).holds) continue;
    ++checked;
    const auto& L = i.abs->lattice();
    for (Element a = 0; a < L.size(); ++a)
      for (Element b = 0; b < L.size(); ++b) {
        ++pairs;
        bool sem = i.abs->gamma(a).is_subset_of(i.abs->gamma(b));
        bool der = i.engine->derivable_predicates({a}, {b});
        if (sem != der && !failures++) first = i.label + " " + L.name(a) + " |- " + L.name(b);
      }
  }
  std::ostringstream d;
  d << checked << " embedding instances, " << pairs << " atomic pairs, " << failures << " failures";
  if (failures) d << "; first: " << first;
  rep.line(2, "atomic completeness", failures == 0 && checked > 0, d.str());
}

// ---- criterion 3 -----------------------------------------------------------

void criterion3(Report& rep, const std::vector<Instance>& inst, const std::vector<Instance>& non_emb) {
  std::size_t emb = 0, emb_fail = 0, nonemb = 0, nonemb_fail = 0, nonemb_injective = 0;
  std::string first;
  auto homomorphic = [](const IsomorphismReport& r) {
    return std::all_of(r.homomorphism.begin(), r.homomorphism.end(), [](auto& kv) { return kv.second; });
  };
  for (const auto* set : {&inst, &non_emb}) {
    for (const auto& i : *set) {
      auto lind = build_lindenbaum(*i.engine, *i.abs);
      auto r = verify_isomorphism(*i.abs, lind);
      if (check_order_embedding(*i.abs).holds) {
        ++emb;
        // Independent count: classes are the predicates up to mutual derivability.
        const auto n = i.abs->lattice().size();
        std::set<std::vector<char>> rows;
        for (Element a = 0; a < n; ++a) {
          std::vector<char> row;
          for (Element b = 0; b < n; ++b) row.push_back(i.engine->derivable_predicates({a}, {b}));
          rows.insert(row);
        }
        bool ok = r.holds() && lind.classes.size() == n && rows.size() == n;
        if (!ok && !emb_fail++) first = i.label + (r.failures.empty() ? "" : ": " + r.failures.front());
      } else {
        ++nonemb;
        bool ok = r.surjective && homomorphic(r);
        nonemb_injective += r.injective;
        if (!ok && !nonemb_fail++) first = i.label + " (non-embedding)";
      }
    }
  }
  std::ostringstream d;
  d << emb << " embedding instances isomorphic (" << emb_fail << " failures); " << nonemb
    << " non-embedding instances surjective+homomorphic (" << nonemb_fail << " failures), injective in "
    << nonemb_injective << "/" << nonemb;
  if (emb_fail + nonemb_fail) d << "; first: " << first;
  rep.line(3, "Lindenbaum isomorphism", emb_fail == 0 && nonemb_fail == 0 && nonemb > 0, d.str());
}

// ---- criterion 4 -----------------------------------------------------------

struct FormulaSpace {
  std::vector<Formula> leaves;
  std::vector<Connective> unary, binary;

  explicit FormulaSpace(const Signature& sig) {
    for (const auto& p : sig.predicates) leaves.push_back(Formula::predicate(p));
    for (auto c : sig.connectives) {
      if (arity(c) == 0) leaves.push_back(Formula::constant(c));
      if (arity(c) == 1) unary.push_back(c);
      if (arity(c) == 2) binary.push_back(c);
    }
  }

  // Number of formulas of depth <= d.
  double count(int d) const {
    double n = static_cast<double>(leaves.size());
    for (int k = 0; k < d; ++k) n = static_cast<double>(leaves.size()) + unary.size() * n + binary.size() * n * n;
    return n;
  }

  std::vector<Formula> enumerate(int d) const {
    std::vector<Formula> all = leaves;
    for (int k = 0; k < d; ++k) {
      std::vector<Formula> next = leaves;
      for (auto c : unary)
        for (const auto& f : all) next.push_back(Formula::unary(c, f));
      for (auto c : binary)
        for (const auto& f : all)
          for (const auto& g : all) next.push_back(Formula::binary(c, f, g));
      all = std::move(next);
    }
    return all;
  }

  Formula sample(std::mt19937_64& rng, int d) const {
    const std::size_t ops = unary.size() + binary.size();
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() + ops - 1);
    std::size_t k = d == 0 || ops == 0 ? pick(rng) % leaves.size() : pick(rng);
    if (k < leaves.size()) return leaves[k];
    k -= leaves.size();
    if (k < unary.size()) return Formula::unary(unary[k], sample(rng, d - 1));
    auto lhs = sample(rng, d - 1);
    return Formula::binary(binary[k - unary.size()], lhs, sample(rng, d - 1));
  }
};

void criterion4(Report& rep) {
  std::size_t total = 0, failures = 0;
  std::string first;
  std::ostringstream notes;
  std::mt19937_64 rng(kRandomSeed);
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    ProofEngine e(system_of(*abs));
    FormulaSpace space(e.system().signature);
    double size = space.count(3);
    std::vector<Formula> formulas;
    if (size <= kNormalizationSpaceLimit) {
      formulas = space.enumerate(3);
    } else {
      for (std::size_t k = 0; k < kNormalizationSamples; ++k) formulas.push_back(space.sample(rng, 3));
    }
    notes << name << ": " << formulas.size() << (size <= kNormalizationSpaceLimit ? " (all of " : " sampled of ")
          << size << (size <= kNormalizationSpaceLimit ? ")" : "") << "; ";
    for (const auto& phi : formulas) {
      ++total;
      Element v = eval_abstract(*abs, phi);
      std::size_t p = e.normalize(phi);
      auto pf = Formula::predicate(abs->lattice().name(v));
      bool ok = p == e.predicate_index(abs->lattice().name(v)) && e.derivable_unnormalized({{phi}, {pf}}) &&
                e.derivable_unnormalized({{pf}, {phi}});
      if (!ok && !failures++) first = name + ": " + to_text(phi, abs->variables());
    }
  }
  std::ostringstream d;
  d << total << " formulas of depth <= 3, " << failures << " failures";
  if (failures) d << "; first: " << first;
  rep.line(4, "normalization coherence", failures == 0, d.str());
  rep.note(notes.str());
}

// ---- criterion 5 -----------------------------------------------------------

void criterion5(Report& rep) {
  using namespace abslog::cartesian;
  auto t2 = ConcreteUniverse::tuples({{0, 4}, {0, 4}});
  auto t3 = ConcreteUniverse::tuples({{0, 4}, {0, 4}, {0, 4}});
  auto g2 = check_galois(t2), m2 = check_iota_preserves_meets(t2), e2 = check_empty_axis_collapse(t2);
  auto g3 = check_galois(t3, kCartesian3dSamples), m3 = check_iota_preserves_meets(t3, kCartesian3dSamples),
       e3 = check_empty_axis_collapse(t3, kCartesian3dSamples);

  // Independent sampled oracle on the 2-D window: closure and iota rebuilt from coordinates.
  std::mt19937_64 rng(kRandomSeed);
  std::size_t oracle_fail = 0;
  const std::size_t oracle_samples = 20000;
  for (std::size_t k = 0; k < oracle_samples; ++k) {
    std::array<unsigned, 2> x{static_cast<unsigned>(rng() % 32), static_cast<unsigned>(rng() % 32)};
    ConcreteSet r = t2.empty_set();
    std::array<unsigned, 2> proj{0, 0};
    std::uint64_t density = rng() % 4;
    for (std::size_t p = 0; p < t2.size(); ++p) {
      if (rng() % 8 > density) continue;
      r.set(p);
      auto c = t2.coords(p);
      proj[0] |= 1u << c[0];
      proj[1] |= 1u << c[1];
    }
    bool closure_below = (proj[0] & ~x[0]) == 0 && (proj[1] & ~x[1]) == 0;
    bool within = true;
    for (std::size_t p = 0; p < t2.size(); ++p) {
      auto c = t2.coords(p);
      if (r.test(p) && !((x[0] >> c[0] & 1) && (x[1] >> c[1] & 1))) within = false;
    }
    oracle_fail += closure_below != within;
  }

  bool pass = g2.holds && m2.holds && e2.holds && g2.exhaustive && m2.exhaustive && e2.exhaustive && g3.holds &&
              m3.holds && e3.holds && g3.checked >= kCartesian3dSamples && m3.checked >= kCartesian3dSamples &&
              e3.checked >= kCartesian3dSamples && oracle_fail == 0;
  std::ostringstream d;
  d << "[0,4]^2 exhaustive: galois " << g2.checked << ", meets " << m2.checked << ", collapse " << e2.checked
    << "; [0,4]^3 sampled: galois " << g3.checked << ", meets " << m3.checked << ", collapse " << e3.checked
    << "; oracle " << oracle_samples << " samples, " << oracle_fail << " mismatches";
  rep.line(5, "rectangle adjunction", pass, d.str());
  for (const auto* c : {&g2, &m2, &e2, &g3, &m3, &e3})
    if (!c->holds) rep.note("witness: " + c->witness);
}

// ---- criterion 6 -----------------------------------------------------------

void criterion6(Report& rep) {
  using namespace abslog::cartesian;
  auto t = ConcreteUniverse::tuples({{0, 3}, {0, 3}});
  auto lib = check_iota_injective_on_nonempty(t);
  // Oracle: images as 16-bit masks straight from the product definition.
  std::map<unsigned, std::vector<std::pair<unsigned, unsigned>>> images;
  for (unsigned a = 0; a < 16; ++a)
    for (unsigned b = 0; b < 16; ++b) {
      unsigned img = 0;
      for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y)
          if ((a >> x & 1) && (b >> y & 1)) img |= 1u << (x * 4 + y);
      images[img].push_back({a, b});
    }
  std::size_t collisions = 0;
  bool nonempty_injective = true, all_involve_empty = true;
  for (const auto& [img, pre] : images) {
    for (std::size_t i = 0; i < pre.size(); ++i)
      for (std::size_t j = i + 1; j < pre.size(); ++j) {
        ++collisions;
        bool empty = pre[i].first == 0 || pre[i].second == 0 || pre[j].first == 0 || pre[j].second == 0;
        all_involve_empty &= empty;
        if (!empty) nonempty_injective = false;
      }
  }
  bool pass = lib.injective_on_nonempty && lib.collisions_involve_empty_axis && nonempty_injective &&
              all_involve_empty && lib.collisions == collisions;
  std::ostringstream d;
  d << "256 rectangles on [0,3]^2, injective on nonempty: " << (lib.injective_on_nonempty ? "yes" : "no") << ", "
    << lib.collisions << " collisions (oracle " << collisions << "), all involve an empty axis: "
    << (lib.collisions_involve_empty_axis ? "yes" : "no");
  rep.line(6, "iota injectivity", pass, d.str());
}

// ---- criterion 7 -----------------------------------------------------------

void criterion7(Report& rep) {
  bool pass = true;
  double c8 = 0;
  std::vector<std::string> notes;
  for (int C : {1, 2, 4, 8}) {
    auto t0 = Clock::now();
    auto items = octagon::verify_suite(C, 4 * C);
    double secs = seconds_since(t0);
    if (C == 8) c8 = secs;
    std::size_t ok = 0, required = 0;
    for (const auto& it : items) {
      if (it.informational) {
        notes.push_back("C=" + std::to_string(C) + " " + it.name + " (informational): " + (it.pass ? "holds" : "fails") +
                        (it.detail.empty() ? "" : " " + it.detail));
        continue;
      }
      ++required;
      ok += it.pass;
      if (!it.pass) notes.push_back("C=" + std::to_string(C) + " FAILED " + it.name + " " + it.detail);
    }
    pass &= ok == required;
    std::ostringstream s;
    s << "C=" << C << " N=" << 4 * C << ": " << ok << "/" << required << " checks, " << secs << " s";
    notes.push_back(s.str());
  }
  pass &= c8 < kOctagonBudgetSeconds;
  std::ostringstream d;
  d << "C in {1,2,4,8}, C=8 took " << c8 << " s (budget " << kOctagonBudgetSeconds
    << " s); infeasibility axioms = pairs + parity quadruples";
  rep.line(7, "octagon suite", pass, d.str());
  for (const auto& n : notes) rep.note(n);
}

// ---- criterion 8 -----------------------------------------------------------

void criterion8(Report& rep) {
  auto m = octagon::degenerate_model();
  const auto& L = m.lattice;
  // Oracle: involution and order reversal from the tables.
  bool inv = true, rev = true;
  for (Element a = 0; a < L.size(); ++a) {
    inv &= m.negation(m.negation(a)) == a;
    for (Element b = 0; b < L.size(); ++b)
      if (L.leq(a, b)) rev &= L.leq(m.negation(b), m.negation(a));
  }
  bool self_fixed = m.negation(L.index("A")) == L.index("A") && m.negation(L.index("B")) == L.index("B");
  bool iso = octagon::isomorphic_to_octagon(L);
  bool sizes_differ = true;
  for (int C = 1; C <= 8; ++C) sizes_differ &= octagon::OctLattice(C).size() != L.size();
  bool pass = inv && rev && m.involution && m.order_reversing && self_fixed && !iso && sizes_differ &&
              m.all_negations.size() == 2;
  std::ostringstream d;
  d << "~A=A, ~B=B: involution " << (inv ? "yes" : "no") << ", order-reversing " << (rev ? "yes" : "no")
    << ", involutions of the diamond: " << m.all_negations.size()
    << ", isomorphic to an octagon lattice (C<=8): " << (iso ? "yes" : "no");
  rep.line(8, "degenerate negation model", pass, d.str());
}

// ---- criterion 9 -----------------------------------------------------------

void criterion9(Report& rep) {
  bool pass = true;
  std::ostringstream d;
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto full = system_of(*abs);
    auto mini = minimize_proof_system(full);
    ProofEngine ef(full), em(mini);
    auto a = ef.saturated_models(), b = em.saturated_models();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set<std::pair<std::string, std::string>> ords, hasse;
    for (const auto& r : mini.rules)
      if (r.kind == RuleKind::order_axiom)
        ords.insert({r.conclusion.antecedents.at(0).name(), r.conclusion.succedents.at(0).name()});
    for (auto [x, y] : abs->lattice().hasse_edges()) hasse.insert({abs->lattice().name(x), abs->lattice().name(y)});
    bool ok = a == b && ords == hasse;
    pass &= ok;
    d << name << " " << full.rules.size() << "->" << mini.rules.size() << (ok ? "" : " MISMATCH") << "; ";
  }
  rep.line(9, "minimizer closure and Hasse order axioms", pass, d.str());
}

// ---- criterion 10 ----------------------------------------------------------

std::pair<std::string, int> run(const std::string& args) {
  std::string cmd = std::string("\"") + ABSLOG_CLI_PATH + "\" " + args + " 2>&1";
  std::string out;
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return {"", -1};
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) out.append(buf.data(), n);
  int status = pclose(f);
  return {out, status};
}

void criterion10(Report& rep) {
  std::size_t runs = 0, diffs = 0;
  std::string first;
  for (const auto& name : builtin_names()) {
    for (const std::string args : {"generate builtin:" + name, "generate --minimize builtin:" + name,
                                   "generate --format machine builtin:" + name,
                                   "generate --format latex builtin:" + name, "verify builtin:" + name}) {
      auto a = run(args), b = run(args);
      runs += 2;
      if ((a != b || a.first.empty()) && !diffs++) first = args;
    }
  }
  std::ostringstream d;
  d << runs << " CLI runs (generate in 4 variants and verify, every builtin), " << diffs << " differing pairs";
  if (diffs) d << "; first: " << first;
  rep.line(10, "determinism", diffs == 0, d.str());
}

}  // namespace

// With no argument every criterion runs; "acceptance N" runs criterion N only.
int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  auto want = [&](int id) { return only == 0 || only == id; };
  Report rep;
  auto t0 = Clock::now();
  std::vector<Instance> instances, non_embedding;
  if (want(1) || want(2) || want(3)) instances = make_instances(true, kRandomInstances, kRandomSeed, true);
  if (want(1)) criterion1(rep, instances, t0);
  if (want(3)) non_embedding = make_instances(false, kNonEmbeddingInstances, kRandomSeed + 1, false);
  if (want(2)) criterion2(rep, instances);
  if (want(3)) criterion3(rep, instances, non_embedding);
  if (want(4)) criterion4(rep);
  if (want(5)) criterion5(rep);
  if (want(6)) criterion6(rep);
  if (want(7)) criterion7(rep);
  if (want(8)) criterion8(rep);
  if (want(9)) criterion9(rep);
  if (want(10)) criterion10(rep);
  std::cout << (rep.all() ? "ALL SELECTED CRITERIA PASS" : "SOME CRITERIA FAIL") << " (" << seconds_since(t0)
            << " s)\n";
  return rep.all() ? 0 : 1;
}
