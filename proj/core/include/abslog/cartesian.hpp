#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abslog/concrete.hpp"

namespace abslog::cartesian {

/// One subset per axis, each over the one-dimensional window of that axis.
using Rectangle = std::vector<ConcreteSet>;

struct ProductAbstraction {
  std::vector<std::shared_ptr<const Abstraction>> components;
  /// Product lattice (componentwise order) with gamma = iota of the componentwise images.
  std::shared_ptr<const Abstraction> abstraction;
  /// Element -> component elements.
  std::vector<std::vector<Element>> tuples;
  /// First axis of each component within the tuple universe.
  std::vector<std::size_t> axis_offset;
};

/// Throws CarrierTooLarge when the carrier exceeds `carrier_bound` or the
/// tuple universe exceeds `universe_bound` points.
ProductAbstraction product(const std::vector<std::shared_ptr<const Abstraction>>& components,
                           std::size_t carrier_bound = 4096, std::size_t universe_bound = 10000);

/// Axis universes of an integer tuple universe.
std::vector<ConcreteUniverse> axis_universes(const ConcreteUniverse& tuples);

ConcreteSet iota(const ConcreteUniverse& tuples, const Rectangle& rect);
/// Projections of R on every axis.
Rectangle rectangle_closure(const ConcreteUniverse& tuples, const ConcreteSet& r);
bool rect_leq(const Rectangle& a, const Rectangle& b);
Rectangle rect_meet(const Rectangle& a, const Rectangle& b);
bool has_empty_axis(const Rectangle& r);

/// Every rectangle over the axes (exponential; small windows only).
std::vector<Rectangle> all_rectangles(const ConcreteUniverse& tuples);

struct CheckResult {
  bool holds = true;
  std::size_t checked = 0;
  bool exhaustive = false;
  std::string witness;
};

/**
 * closure(R) <= X  iff  R within iota(X).  Exhaustive for two axes of at most
 * five points (via unit, counit and monotonicity of both maps, with closure
 * monotonicity checked on every cover R < R + {p}); sampled otherwise.
 */
CheckResult check_galois(const ConcreteUniverse& tuples, std::size_t samples = 2000, std::uint64_t seed = 7);

/// iota(X meet Y) = iota(X) & iota(Y); exhaustive for two axes of <= 5 points.
CheckResult check_iota_preserves_meets(const ConcreteUniverse& tuples, std::size_t samples = 2000,
                                       std::uint64_t seed = 11);

/// Rectangles with an empty axis map to the empty set, and closure(iota(X)) = X
/// exactly when X has no empty axis or all axes are empty.
CheckResult check_empty_axis_collapse(const ConcreteUniverse& tuples, std::size_t samples = 2000,
                                      std::uint64_t seed = 13);

struct InjectivityResult {
  bool injective_on_nonempty = true;
  std::size_t collisions = 0;
  bool collisions_involve_empty_axis = true;
  std::optional<std::pair<Rectangle, Rectangle>> witness;
};

InjectivityResult check_iota_injective_on_nonempty(const ConcreteUniverse& tuples);

struct ProductEmbeddingResult {
  /// Each component is an order embedding with gamma_k(a) nonempty for a != bot.
  bool precondition = true;
  /// Componentwise order agrees with gamma inclusion on tuples without a bottom component.
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Element, Element>> witness;
};

ProductEmbeddingResult product_embedding_criterion(const ProductAbstraction& pa);

}  // namespace abslog::cartesian
