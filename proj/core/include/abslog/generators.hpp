#pragma once

#include <random>

#include "abslog/concrete.hpp"

namespace abslog {

struct RandomAbstractionOptions {
  std::size_t max_elements = 8;
  std::size_t max_points = 64;
  /// Include one point per join-irreducible so gamma is an order embedding.
  bool embedding = true;
};

/**
 * Random lattice (a down-set of a Boolean cube of dimension <= 3 closed by a
 * top when needed, a chain, or a diamond) with a gamma that is monotone by
 * construction: each point lies in the gamma of an up-set of elements.
 */
Abstraction random_abstraction(std::mt19937_64& rng, const RandomAbstractionOptions& options = {});

}  // namespace abslog
