#include "abslog/octagon.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "abslog/error.hpp"
#include "abslog/logicgen.hpp"
#include "abslog/proofengine.hpp"

namespace abslog::octagon {

std::string Predicate::name() const {
  return std::string(sx > 0 ? "+x" : "-x") + (sy > 0 ? "+y" : "-y") + ">=" + std::to_string(c);
}

Predicate complement(const Predicate& p, int C) {
  Predicate q{-p.sx, -p.sy, -p.c + 1};
  if (q.c < window_lo(C) || q.c > window_hi(C) || p.c < window_lo(C) || p.c > window_hi(C))
    throw WindowOverflow("complement of " + p.name() + " leaves the window [" + std::to_string(window_lo(C)) + "," +
                         std::to_string(window_hi(C)) + "]");
  return q;
}

namespace {

FiniteLattice build_carrier(int C, std::vector<std::optional<Predicate>>& preds) {
  if (C < 1) throw Error("octagon window must be at least 1");
  std::vector<std::string> names{"bot"};
  preds.assign(1, std::nullopt);
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [sx, sy] : kSlopes) {
    std::string below = "bot";
    for (int c = window_hi(C); c >= window_lo(C); --c) {
      Predicate p{sx, sy, c};
      names.push_back(p.name());
      preds.emplace_back(p);
      edges.emplace_back(below, p.name());
      below = p.name();
    }
    edges.emplace_back(below, "top");
  }
  names.push_back("top");
  preds.emplace_back(std::nullopt);
  return FiniteLattice::build(names, edges, ClosureMode::hasse);
}

}  // namespace

OctLattice::OctLattice(int C) : C_(C), lattice_(build_carrier(C, preds_)) {}

Element OctLattice::index(const Predicate& p) const {
  if (p.c < window_lo(C_) || p.c > window_hi(C_))
    throw WindowOverflow(p.name() + " is outside the window [" + std::to_string(window_lo(C_)) + "," +
                         std::to_string(window_hi(C_)) + "]");
  std::size_t cls = 0;
  while (kSlopes[cls] != std::pair{p.sx, p.sy}) ++cls;
  return 1 + cls * static_cast<std::size_t>(2 * C_) + static_cast<std::size_t>(window_hi(C_) - p.c);
}

void Region::add(const Predicate& p) {
  auto raise = [](std::optional<int>& lo, int v) { lo = lo ? std::max(*lo, v) : v; };
  auto lower = [](std::optional<int>& hi, int v) { hi = hi ? std::min(*hi, v) : v; };
  if (p.sx == p.sy) {
    if (p.sx > 0) raise(u_lo, p.c);
    else lower(u_hi, -p.c);
  } else {
    if (p.sx > 0) raise(w_lo, p.c);
    else lower(w_hi, -p.c);
  }
}

Region Region::of(const std::vector<Predicate>& constraints) {
  Region r;
  for (const auto& p : constraints) r.add(p);
  return r;
}

bool Region::feasible() const {
  if (u_lo && u_hi && *u_lo > *u_hi) return false;
  if (w_lo && w_hi && *w_lo > *w_hi) return false;
  bool u_point = u_lo && u_hi && *u_lo == *u_hi;
  bool w_point = w_lo && w_hi && *w_lo == *w_hi;
  if (u_point && w_point) return ((*u_lo - *w_lo) % 2 + 2) % 2 == 0;
  return true;
}

ConcreteUniverse grid(int N) { return ConcreteUniverse::tuples({Axis{-N, N}, Axis{-N, N}}); }

ConcreteSet grid_gamma(const ConcreteUniverse& g, const Predicate& p) {
  return g.filter([&](std::size_t i) {
    auto c = g.coords(i);
    return p.holds(c[0], c[1]);
  });
}

ConcreteSet grid_gamma(const ConcreteUniverse& g, const OctLattice& L, Element e) {
  if (e == L.top()) return g.full_set();
  if (e == L.bottom()) return g.empty_set();
  return grid_gamma(g, *L.predicate(e));
}

UnaryOpTable hemisphere_negation(const OctLattice& L) {
  UnaryOpTable op{"not", std::vector<Element>(L.size())};
  for (Element e = 0; e < L.size(); ++e) {
    if (e == L.top()) op.table[e] = L.bottom();
    else if (e == L.bottom()) op.table[e] = L.top();
    else op.table[e] = L.index(complement(*L.predicate(e), L.window()));
  }
  return op;
}

bool verify_irreducibility(const OctLattice& L) {
  for (Element e = 0; e < L.size(); ++e) {
    if (e == L.top() || e == L.bottom()) continue;
    if (!L.lattice().is_meet_irreducible(e) || !L.lattice().is_join_irreducible(e)) return false;
  }
  return true;
}

std::vector<std::vector<Predicate>> infeasibility_axioms(int C, bool include_quadruples) {
  std::vector<std::vector<Predicate>> out;
  const int lo = window_lo(C), hi = window_hi(C);
  // Opposite slopes bound the same coordinate from both sides.
  for (auto [sx, sy] : {std::pair{1, 1}, std::pair{1, -1}})
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b) {
        std::vector<Predicate> pair{{sx, sy, a}, {-sx, -sy, b}};
        if (!Region::of(pair).feasible()) out.push_back(pair);
      }
  if (include_quadruples) {
    // u = a and w = b pinned with a, b of different parity.
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b) {
        if (-a < lo || -a > hi || -b < lo || -b > hi || ((a - b) % 2 + 2) % 2 == 0) continue;
        out.push_back({{1, 1, a}, {-1, -1, -a}, {1, -1, b}, {-1, 1, -b}});
      }
  }
  return out;
}

Abstraction export_abstraction(const OctLattice& L, int N) {
  const int C = L.window();
  if (N < 4 * C)
    throw GridGuardViolated("grid " + std::to_string(N) + " is below the guard 4*C = " + std::to_string(4 * C));
  FiniteLattice lat = L.lattice();
  lat.add_unary_op(hemisphere_negation(L));
  ConcreteUniverse g = grid(N);
  std::vector<ConcreteSet> gamma;
  for (Element e = 0; e < L.size(); ++e) gamma.push_back(grid_gamma(g, L, e));
  std::vector<Sequent> axioms;
  for (const auto& ante : infeasibility_axioms(C)) {
    Sequent s;
    for (const auto& p : ante) s.antecedents.push_back(Formula::predicate(p.name()));
    s.succedents.push_back(Formula::constant(Connective::ff));
    axioms.push_back(std::move(s));
  }
  return Abstraction("octagon-C" + std::to_string(C) + "-N" + std::to_string(N), std::move(lat), std::move(g),
                     std::move(gamma), std::move(axioms));
}

ConjunctionWitness conjunction_nonpreservation_witness(const OctLattice& L, Predicate p, Predicate q) {
  const int N = 4 * L.window();
  ConcreteUniverse g = grid(N);
  ConjunctionWitness w{p, q, {}, true};
  ConcreteSet target = grid_gamma(g, p) & grid_gamma(g, q);
  for (Element r = 0; r < L.size(); ++r) {
    ConcreteSet diff = grid_gamma(g, L, r) ^ target;
    auto first = diff.find_first();
    if (first == ConcreteSet::npos) {
      w.distinguishing.emplace_back(std::nullopt);
      w.all_distinguished = false;
    } else {
      auto c = g.coords(first);
      w.distinguishing.emplace_back(std::pair{c[0], c[1]});
    }
  }
  return w;
}

SufficiencyResult check_infeasibility_sufficiency(int C, int N, bool include_quadruples) {
  OctLattice L(C);
  ConcreteUniverse g = grid(N);
  const auto axioms = infeasibility_axioms(C, include_quadruples);
  std::vector<std::vector<Element>> axiom_elems;
  for (const auto& a : axioms) {
    std::vector<Element> es;
    for (const auto& p : a) es.push_back(L.index(p));
    axiom_elems.push_back(std::move(es));
  }
  std::vector<ConcreteSet> gammas;
  for (Element e = 0; e < L.size(); ++e) gammas.push_back(grid_gamma(g, L, e));

  // Per slope class: nothing, or one threshold.
  const int per = 2 * C + 1;
  SufficiencyResult res;
  std::array<int, 4> pick{};
  for (int code = 0; code < per * per * per * per; ++code) {
    int rest = code;
    std::vector<Element> sel;
    for (std::size_t k = 0; k < 4; ++k) {
      pick[k] = rest % per;
      rest /= per;
      if (pick[k] > 0) sel.push_back(1 + k * static_cast<std::size_t>(2 * C) + static_cast<std::size_t>(pick[k] - 1));
    }
    ++res.selections_checked;
    ConcreteSet meet = g.full_set();
    for (Element e : sel) meet &= gammas[e];
    bool grid_infeasible = meet.none();
    bool covered = std::any_of(axiom_elems.begin(), axiom_elems.end(), [&](const std::vector<Element>& ax) {
      return std::all_of(ax.begin(), ax.end(), [&](Element a) {
        return std::any_of(sel.begin(), sel.end(), [&](Element t) { return L.leq(t, a); });
      });
    });
    if (grid_infeasible != covered) {
      res.holds = false;
      std::vector<Predicate> w;
      for (Element e : sel) w.push_back(*L.predicate(e));
      res.witness = std::move(w);
      return res;
    }
  }
  return res;
}

DegenerateModel degenerate_model() {
  DegenerateModel m{FiniteLattice::build({"bot", "A", "B", "top"},
                                         {{"bot", "A"}, {"bot", "B"}, {"A", "top"}, {"B", "top"}}, ClosureMode::hasse),
                    {}, false, false, {}};
  m.negation = UnaryOpTable{"not", {m.lattice.index("top"), m.lattice.index("A"), m.lattice.index("B"),
                                    m.lattice.index("bot")}};
  m.involution = m.lattice.is_involution(m.negation);
  m.order_reversing = m.lattice.is_order_reversing(m.negation);
  m.all_negations = m.lattice.find_order_reversing_involutions();
  return m;
}

bool order_isomorphic(const FiniteLattice& a, const FiniteLattice& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  // (elements below, elements above) must be preserved by any isomorphism.
  auto profile = [](const FiniteLattice& l, Element x) {
    std::size_t down = 0, up = 0;
    for (Element y = 0; y < l.size(); ++y) {
      down += l.leq(y, x);
      up += l.leq(x, y);
    }
    return std::pair{down, up};
  };
  std::vector<std::pair<std::size_t, std::size_t>> pa(n), pb(n);
  for (Element x = 0; x < n; ++x) {
    pa[x] = profile(a, x);
    pb[x] = profile(b, x);
  }
  auto sa = pa, sb = pb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  std::vector<Element> image(n);
  std::vector<char> used(n, 0);
  std::function<bool(Element)> extend = [&](Element x) {
    if (x == n) return true;
    for (Element y = 0; y < n; ++y) {
      if (used[y] || pb[y] != pa[x]) continue;
      bool ok = true;
      for (Element z = 0; z < x && ok; ++z)
        ok = a.leq(z, x) == b.leq(image[z], y) && a.leq(x, z) == b.leq(y, image[z]);
      if (!ok) continue;
      image[x] = y;
      used[y] = 1;
      if (extend(x + 1)) return true;
      used[y] = 0;
    }
    return false;
  };
  return extend(0);
}

bool isomorphic_to_octagon(const FiniteLattice& L, int max_C) {
  for (int C = 1; C <= max_C; ++C) {
    OctLattice oct(C);
    if (oct.size() != L.size()) continue;
    if (order_isomorphic(L, oct.lattice())) return true;
  }
  return false;
}

}  // namespace abslog::octagon

namespace abslog::octagon {

std::vector<SuiteItem> verify_suite(int C, int N) {
  OctLattice L(C);
  Abstraction abs = export_abstraction(L, N);
  const ConcreteUniverse& g = abs.universe();
  const ConcreteSet full = g.full_set();
  std::vector<SuiteItem> out;
  auto add = [&](std::string name, bool pass, std::string detail = {}) {
    out.push_back({std::move(name), pass, std::move(detail)});
  };

  {
    std::string bad;
    std::size_t count = 0;
    for (Element e = 0; e < L.size() && bad.empty(); ++e) {
      if (!L.predicate(e)) continue;
      const Predicate& p = *L.predicate(e);
      ++count;
      if (grid_gamma(g, complement(p, C)) != (full - grid_gamma(g, p))) bad = p.name();
      if (complement(complement(p, C), C) != p) bad = p.name() + " (not an involution)";
    }
    add("complement equation symbolic = grid", bad.empty(),
        bad.empty() ? std::to_string(count) + " predicates" : "fails at " + bad);
  }
  {
    std::string bad;
    for (Element a = 0; a < L.size() && bad.empty(); ++a)
      for (Element b = 0; b < L.size() && bad.empty(); ++b)
        if (L.leq(a, b) != abs.gamma(a).is_subset_of(abs.gamma(b)))
          bad = L.lattice().name(a) + ", " + L.lattice().name(b);
    add("order = grid inclusion", bad.empty(), bad.empty() ? "" : "fails at " + bad);
  }
  {
    const int per = 2 * C + 1;
    std::string bad;
    std::size_t checked = 0;
    for (int code = 0; code < per * per * per * per && bad.empty(); ++code) {
      int rest = code;
      std::vector<Predicate> sel;
      for (std::size_t k = 0; k < 4; ++k) {
        int pick = rest % per;
        rest /= per;
        if (pick > 0) sel.push_back({kSlopes[k].first, kSlopes[k].second, window_hi(C) - (pick - 1)});
      }
      ConcreteSet m = full;
      for (const auto& p : sel) m &= abs.gamma(L.index(p));
      ++checked;
      if (Region::of(sel).feasible() != m.any()) {
        for (const auto& p : sel) bad += p.name() + " ";
      }
    }
    add("region feasibility = grid nonemptiness", bad.empty(),
        bad.empty() ? std::to_string(checked) + " constraint selections" : "fails at " + bad);
  }
  {
    auto rep = preservation_report(abs);
    bool neg = rep.preserved(Connective::not_);
    bool conj = rep[Connective::and_].status == PreservationEntry::Status::not_preserved;
    std::string w;
    for (Element e : rep[Connective::and_].witness) w += (w.empty() ? "" : ", ") + L.lattice().name(e);
    add("negation preserved on export", neg);
    add("conjunction not preserved on export", conj, w.empty() ? "" : "witness " + w);
  }
  {
    auto w = conjunction_nonpreservation_witness(L);
    add("conjunction witness distinguishes all candidates", w.all_distinguished,
        w.p.name() + " and " + w.q.name() + " against " + std::to_string(w.distinguishing.size()) + " candidates");
  }
  add("non-top/bottom elements meet- and join-irreducible", verify_irreducibility(L));
  {
    auto neg = hemisphere_negation(L);
    bool grid_ok = true;
    for (Element e = 0; e < L.size(); ++e)
      if (abs.gamma(neg(e)) != (full - abs.gamma(e))) grid_ok = false;
    bool fixed = false;
    for (Element e = 0; e < L.size(); ++e)
      if (neg(e) == e) fixed = true;
    add("hemisphere negation is an involution", L.lattice().is_involution(neg));
    add("hemisphere negation is order reversing", L.lattice().is_order_reversing(neg));
    add("hemisphere negation matches grid complement", grid_ok);
    add("hemisphere negation has no fixed point", !fixed);
  }
  {
    auto ps = generate_proof_system(abs, preservation_report(abs));
    ProofEngine engine(ps);
    Sequent s{{Formula::predicate(Predicate{1, 1, 1}.name()), Formula::predicate(Predicate{-1, -1, 0}.name())},
              {Formula::constant(Connective::ff)}};
    bool derivable = engine.derivable(s);
    bool valid = holds_concrete(abs, s);
    add("x+y>=1, -x-y>=0 |- ff derivable", derivable);
    add("x+y>=1, -x-y>=0 |- ff concretely valid", valid);
  }
  if (C <= 4) {
    auto full_axioms = check_infeasibility_sufficiency(C, N, true);
    std::string detail = std::to_string(full_axioms.selections_checked) + " selections";
    if (full_axioms.witness) {
      detail = "uncovered:";
      for (const auto& p : *full_axioms.witness) detail += " " + p.name();
    }
    add("infeasibility axioms (pairs + parity quadruples) match the grid", full_axioms.holds, detail);
    auto pairs = check_infeasibility_sufficiency(C, N, false);
    std::string pd = pairs.holds ? "pairs alone suffice" : "pairs alone miss:";
    if (pairs.witness)
      for (const auto& p : *pairs.witness) pd += " " + p.name();
    out.push_back({"pairwise infeasibility alone", pairs.holds, pd, true});
  }
  return out;
}

}  // namespace abslog::octagon
