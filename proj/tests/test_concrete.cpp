#include <doctest.h>

#include <random>

#include "abslog/builtins.hpp"
#include "abslog/concrete.hpp"
#include "abslog/error.hpp"

using namespace abslog;

namespace {

ConcreteSet parity_set(const ConcreteUniverse& u, int r) {
  return u.filter([&](std::size_t p) { return ((u.coords(p)[0] % 2) + 2) % 2 == r; });
}

// Independent reimplementation of the defining equations.
bool oracle_preserved_at(const Abstraction& abs, Connective c, const std::vector<Element>& args) {
  const auto& L = abs.lattice();
  const auto& U = abs.universe();
  auto g = [&](Element e) { return abs.gamma(e); };
  switch (c) {
    case Connective::tt: return g(L.top()) == U.full_set();
    case Connective::ff: return g(L.bottom()).none();
    case Connective::and_: return g(L.meet(args[0], args[1])) == (g(args[0]) & g(args[1]));
    case Connective::or_: return g(L.join(args[0], args[1])) == (g(args[0]) | g(args[1]));
    case Connective::not_: return g(abs.apply(c, args[0])) == ~g(args[0]);
    case Connective::impl: return g(L.heyting_implication(args[0], args[1])) == (~g(args[0]) | g(args[1]));
    case Connective::coimpl: return g(L.co_implication(args[0], args[1])) == (g(args[0]) - g(args[1]));
  }
  return false;
}

}  // namespace

TEST_CASE("universes and concrete ops") {
  auto u = ConcreteUniverse::window(-8, 8);
  CHECK(u.size() == 17);
  auto evens = parity_set(u, 0), odds = parity_set(u, 1);
  CHECK(concrete_op(u, "complement", {evens}) == odds);
  CHECK(concrete_op(u, "intersection", {evens, u.full_set()}) == evens);
  CHECK(concrete_op(u, "implication", {evens, u.empty_set()}) == odds);
  CHECK(concrete_op(u, "co_implication", {u.full_set(), evens}) == odds);
  CHECK(concrete_op(u, "union", {evens, odds}) == u.full_set());
  CHECK_THROWS_AS(concrete_op(u, "xor", {evens, odds}), UnknownOperation);

  auto t = ConcreteUniverse::tuples({{0, 2}, {-1, 1}});
  CHECK(t.size() == 9);
  auto p = t.find_point({1, -1});
  REQUIRE(p);
  CHECK(t.coords(*p) == std::vector<int>{1, -1});
  CHECK_FALSE(t.find_point({3, 0}));
}

TEST_CASE("order embedding") {
  auto parity = builtin("parity");
  CHECK(check_order_embedding(*parity).holds);

  auto L = FiniteLattice::build({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}},
                                ClosureMode::hasse);
  auto u = ConcreteUniverse::atoms({"p", "q"});
  ConcreteSet s = u.empty_set();
  s.set(0);
  Abstraction same("same", L, u, {u.empty_set(), s, s, u.full_set()});
  auto r = check_order_embedding(same);
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  auto [a, b] = *r.witness;
  CHECK(a != b);
  CHECK(same.gamma(a).is_subset_of(same.gamma(b)));
  CHECK_FALSE(L.leq(a, b));

  auto one = FiniteLattice::build({"x"}, {}, ClosureMode::full);
  Abstraction single("one", one, u, {u.full_set()});
  CHECK(check_order_embedding(single).holds);

  CHECK_THROWS_AS(Abstraction("bad", L, u, {u.full_set(), s, s, u.empty_set()}), NotMonotone);
}

TEST_CASE("preservation report against oracle") {
  auto parity = builtin("parity");
  auto rp = preservation_report(*parity);
  for (auto c : {Connective::tt, Connective::ff, Connective::and_, Connective::or_, Connective::not_})
    CHECK(rp.preserved(c));

  auto sign = builtin("sign");
  auto rs = preservation_report(*sign);
  CHECK_FALSE(rs.preserved(Connective::or_));
  const auto& L = sign->lattice();
  CHECK_FALSE(oracle_preserved_at(*sign, Connective::or_, {L.index("Neg"), L.index("Pos")}));
  CHECK(rs.preserved(Connective::ff));

  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto rep = preservation_report(*abs);
    const auto n = abs->lattice().size();
    for (auto c : kAllConnectives) {
      const auto& e = rep[c];
      if (e.status == PreservationEntry::Status::unavailable) continue;
      if (e.status == PreservationEntry::Status::not_preserved) {
        CHECK(static_cast<int>(e.witness.size()) == arity(c));
        CHECK_FALSE(oracle_preserved_at(*abs, c, e.witness));
        continue;
      }
      if (arity(c) == 0) CHECK(oracle_preserved_at(*abs, c, {}));
      if (arity(c) == 1)
        for (Element a = 0; a < n; ++a) CHECK(oracle_preserved_at(*abs, c, {a}));
      if (arity(c) == 2)
        for (Element a = 0; a < n; ++a)
          for (Element b = 0; b < n; ++b) CHECK(oracle_preserved_at(*abs, c, {a, b}));
    }
  }
}

TEST_CASE("left adjoint") {
  auto parity = builtin("parity");
  auto res = compute_left_adjoint(parity);
  REQUIRE(res.status == AdjointResult::Status::total);
  const auto& u = parity->universe();
  ConcreteSet s = u.empty_set();
  s.set(*u.find_point({2}));
  s.set(*u.find_point({4}));
  CHECK(parity->lattice().name((*res.alpha)(s)) == "Even");
  CHECK((*res.alpha)(u.empty_set()) == parity->lattice().bottom());

  // Adjunction on random sets, every built-in with a total adjoint.
  std::mt19937_64 rng(3);
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto r = compute_left_adjoint(abs);
    if (r.status != AdjointResult::Status::total) continue;
    const auto& U = abs->universe();
    for (int k = 0; k < 200; ++k) {
      ConcreteSet x = U.empty_set();
      for (std::size_t p = 0; p < U.size(); ++p)
        if (rng() % 4 == 0) x.set(p);
      Element al = (*r.alpha)(x);
      for (Element a = 0; a < abs->lattice().size(); ++a)
        CHECK(abs->lattice().leq(al, a) == x.is_subset_of(abs->gamma(a)));
    }
  }

  // Two incomparable minimal over-approximations: no adjoint.
  auto L = FiniteLattice::build({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}},
                                ClosureMode::hasse);
  auto u2 = ConcreteUniverse::atoms({"p", "q", "r"});
  ConcreteSet ga = u2.empty_set(), gb = u2.empty_set();
  ga.set(0);
  ga.set(1);
  gb.set(0);
  gb.set(2);
  auto abs2 = std::make_shared<const Abstraction>("noalpha", L, u2,
                                                  std::vector<ConcreteSet>{u2.empty_set(), ga, gb, u2.full_set()});
  auto r2 = compute_left_adjoint(abs2);
  CHECK(r2.status == AdjointResult::Status::absent);
  REQUIRE(r2.witness);
  std::vector<Element> over;
  for (Element a = 0; a < 4; ++a)
    if (r2.witness->is_subset_of(abs2->gamma(a))) over.push_back(a);
  bool has_min = false;
  for (Element m : over) {
    bool all = true;
    for (Element o : over) all = all && L.leq(m, o);
    has_min = has_min || all;
  }
  CHECK_FALSE(has_min);
}
