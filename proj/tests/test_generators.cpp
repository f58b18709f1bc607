#include <doctest.h>

#include "abslog/generators.hpp"

using namespace abslog;

TEST_CASE("random abstractions respect their bounds") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    auto abs = random_abstraction(rng);
    CHECK(abs.lattice().size() <= 8);
    CHECK(abs.universe().size() <= 64);
    CHECK(check_order_embedding(abs).holds);
    const auto& L = abs.lattice();
    for (Element a = 0; a < L.size(); ++a)
      for (Element b = 0; b < L.size(); ++b)
        if (L.leq(a, b)) CHECK(abs.gamma(a).is_subset_of(abs.gamma(b)));
  }
}

TEST_CASE("generator is deterministic per seed") {
  std::mt19937_64 a(17), b(17);
  for (int k = 0; k < 20; ++k) {
    auto x = random_abstraction(a), y = random_abstraction(b);
    CHECK(x.lattice().names() == y.lattice().names());
    CHECK(x.gamma_table() == y.gamma_table());
  }
}

TEST_CASE("non-embedding mode can produce collisions") {
  std::mt19937_64 rng(23);
  RandomAbstractionOptions opt;
  opt.embedding = false;
  opt.max_points = 3;
  bool saw_failure = false;
  for (int k = 0; k < 200 && !saw_failure; ++k) saw_failure = !check_order_embedding(random_abstraction(rng, opt)).holds;
  CHECK(saw_failure);
}

TEST_CASE("shape variety") {
  std::mt19937_64 rng(31);
  bool distributive = false, nondistributive = false;
  for (int k = 0; k < 300; ++k) {
    auto abs = random_abstraction(rng);
    (abs.lattice().is_distributive() ? distributive : nondistributive) = true;
  }
  CHECK(distributive);
  CHECK(nondistributive);
}
