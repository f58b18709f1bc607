#include "abslog/generators.hpp"

#include <algorithm>

namespace abslog {

namespace {

std::uniform_int_distribution<std::size_t> range(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi);
}

FiniteLattice random_lattice(std::mt19937_64& rng, std::size_t max_elements) {
  switch (range(0, 3)(rng)) {
    case 0: {
      std::size_t len = range(1, max_elements)(rng);
      std::vector<std::string> names;
      std::vector<std::pair<std::string, std::string>> edges;
      for (std::size_t i = 0; i < len; ++i) {
        names.push_back("c" + std::to_string(i));
        if (i) edges.emplace_back(names[i - 1], names[i]);
      }
      return FiniteLattice::build(names, edges, ClosureMode::hasse);
    }
    case 1:
      return FiniteLattice::build({"bot", "l", "r", "top"}, {{"bot", "l"}, {"bot", "r"}, {"l", "top"}, {"r", "top"}},
                                  ClosureMode::hasse);
    default: {
      const unsigned dim = static_cast<unsigned>(range(1, 3)(rng));
      const unsigned cube = 1u << dim;
      // Random down-set: keep each set with probability 1/2 if all its subsets are kept.
      std::vector<unsigned> members;
      for (unsigned s = 0; s < cube; ++s) {
        bool closed = true;
        for (unsigned b = 0; b < dim; ++b)
          if ((s >> b & 1) && std::find(members.begin(), members.end(), s & ~(1u << b)) == members.end())
            closed = false;
        if (closed && (s == 0 || std::bernoulli_distribution(0.7)(rng))) members.push_back(s);
      }
      bool full = members.size() == cube;
      while (members.size() + (full ? 0 : 1) > max_elements) members.pop_back();
      std::vector<std::string> names;
      for (unsigned s : members) {
        std::string nm = "b";
        for (unsigned b = 0; b < dim; ++b) nm += (s >> b & 1) ? '1' : '0';
        names.push_back(nm);
      }
      std::size_t n = names.size() + (full ? 0 : 1);
      std::vector<char> order(n * n, 0);
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = 0; j < members.size(); ++j) order[i * n + j] = (members[i] & ~members[j]) == 0;
      if (!full) {
        names.push_back("top");
        for (std::size_t i = 0; i < n; ++i) order[i * n + n - 1] = 1;
      }
      return FiniteLattice::from_order(names, order);
    }
  }
}

}  // namespace

Abstraction random_abstraction(std::mt19937_64& rng, const RandomAbstractionOptions& options) {
  FiniteLattice lat = random_lattice(rng, options.max_elements);
  const std::size_t n = lat.size();
  // Each point is described by the up-set of elements whose gamma contains it.
  std::vector<std::vector<char>> points;
  auto up = [&](Element a) {
    std::vector<char> u(n);
    for (Element b = 0; b < n; ++b) u[b] = lat.leq(a, b);
    return u;
  };
  if (options.embedding)
    for (Element a = 0; a < n; ++a)
      if (lat.is_join_irreducible(a)) points.push_back(up(a));
  std::size_t target = range(std::max<std::size_t>(points.size(), 1), options.max_points)(rng);
  while (points.size() < target) {
    switch (range(0, 5)(rng)) {
      case 0: points.emplace_back(n, 0); break;
      case 1: {
        // Union of two principal up-sets.
        auto u = up(range(0, n - 1)(rng));
        auto v = up(range(0, n - 1)(rng));
        for (Element b = 0; b < n; ++b) u[b] = u[b] || v[b];
        points.push_back(u);
        break;
      }
      default: points.push_back(up(range(0, n - 1)(rng))); break;
    }
  }
  std::shuffle(points.begin(), points.end(), rng);
  const int m = static_cast<int>(points.size());
  ConcreteUniverse u = ConcreteUniverse::window(0, m - 1);
  std::vector<ConcreteSet> gamma(n, u.empty_set());
  for (std::size_t p = 0; p < points.size(); ++p)
    for (Element a = 0; a < n; ++a)
      if (points[p][a]) gamma[a].set(p);
  std::string name = "random-" + std::to_string(n) + "x" + std::to_string(m);
  return Abstraction(name, std::move(lat), std::move(u), std::move(gamma));
}

}  // namespace abslog
