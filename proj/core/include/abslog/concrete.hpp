#pragma once

#include <array>
#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "abslog/formula.hpp"
#include "abslog/lattice.hpp"

namespace abslog {

/// Membership bitset over the points of a ConcreteUniverse.
using ConcreteSet = boost::dynamic_bitset<>;

/// Inclusive integer interval used for one axis of an integer universe.
struct Axis {
  int lo = 0;
  int hi = 0;
  std::size_t size() const { return static_cast<std::size_t>(hi - lo + 1); }
  friend bool operator==(const Axis&, const Axis&) = default;
};

/**
 * Finite set of concrete points: either opaque named atoms or the integer
 * tuples of a box of axes, ordered lexicographically.
 */
class ConcreteUniverse {
 public:
  enum class Kind { atoms, integers };

  static ConcreteUniverse atoms(std::vector<std::string> names);
  static ConcreteUniverse window(int lo, int hi);
  static ConcreteUniverse tuples(std::vector<Axis> axes);

  Kind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  std::size_t dimension() const { return axes_.size(); }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<std::string>& atom_names() const { return atoms_; }

  /// Coordinates of an integer point.
  std::vector<int> coords(std::size_t point) const;
  std::optional<std::size_t> find_point(const std::vector<int>& coords) const;
  std::optional<std::size_t> find_atom(std::string_view name) const;
  std::string point_text(std::size_t point) const;

  ConcreteSet empty_set() const { return ConcreteSet(size_); }
  ConcreteSet full_set() const { return ConcreteSet(size_).set(); }
  ConcreteSet filter(const std::function<bool(std::size_t)>& pred) const;

  friend bool operator==(const ConcreteUniverse&, const ConcreteUniverse&) = default;

 private:
  Kind kind_ = Kind::atoms;
  std::vector<std::string> atoms_;
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
};

std::string set_text(const ConcreteUniverse& u, const ConcreteSet& s);

/**
 * Concrete operations by name: "intersection", "union", "complement",
 * "implication" (~X | Y), "co_implication" (X & ~Y), "empty", "full".
 * Throws UnknownOperation.
 */
ConcreteSet concrete_op(const ConcreteUniverse& universe, std::string_view op_name,
                        const std::vector<ConcreteSet>& args);

/**
 * A finite lattice together with a monotone concretization into the
 * powerset of a finite universe, plus any extra axiom sequents the domain
 * contributes to its logic.
 */
class Abstraction {
 public:
  /// Validates totality and monotonicity (throws NotMonotone naming the pair).
  Abstraction(std::string name, FiniteLattice lattice, ConcreteUniverse universe, std::vector<ConcreteSet> gamma,
              std::vector<Sequent> extra_axioms = {});

  const std::string& name() const { return name_; }
  const FiniteLattice& lattice() const { return lattice_; }
  const ConcreteUniverse& universe() const { return universe_; }
  const ConcreteSet& gamma(Element a) const { return gamma_.at(a); }
  const std::vector<ConcreteSet>& gamma_table() const { return gamma_; }
  const std::vector<Sequent>& extra_axioms() const { return extra_axioms_; }
  /// Argument list for printed predicates ("x", "x,y", "x1,x2,x3").
  std::string variables() const;

  /// Whether the abstract algebra provides a total table for `c`.
  bool has_table(Connective c) const;
  Element apply(Connective c) const;
  Element apply(Connective c, Element a) const;
  Element apply(Connective c, Element a, Element b) const;

  /// Concrete counterpart of `c` (powerset Boolean operations).
  ConcreteSet concrete(Connective c, const ConcreteSet* a = nullptr, const ConcreteSet* b = nullptr) const;

 private:
  std::string name_;
  FiniteLattice lattice_;
  ConcreteUniverse universe_;
  std::vector<ConcreteSet> gamma_;
  std::vector<Sequent> extra_axioms_;
  // Flattened table per connective: size 1, n or n*n; empty when unavailable.
  std::array<std::vector<Element>, 7> tables_;
};

struct EmbeddingResult {
  bool holds = true;
  /// gamma(a) is included in gamma(b) while a is not below b.
  std::optional<std::pair<Element, Element>> witness;
};

EmbeddingResult check_order_embedding(const Abstraction& abs);

struct PreservationEntry {
  enum class Status { preserved, not_preserved, unavailable };
  Connective connective;
  Status status = Status::unavailable;
  /// Arguments (0, 1 or 2 elements) at which the defining equation fails.
  std::vector<Element> witness;
};

struct PreservationReport {
  std::array<PreservationEntry, 7> entries;

  const PreservationEntry& operator[](Connective c) const { return entries[static_cast<std::size_t>(c)]; }
  bool preserved(Connective c) const { return (*this)[c].status == PreservationEntry::Status::preserved; }
};

PreservationReport preservation_report(const Abstraction& abs);

/// Checks the defining equation of `c` at the given arguments.
bool preservation_holds_at(const Abstraction& abs, Connective c, const std::vector<Element>& args);

/// Best abstraction map S -> min{a : S within gamma(a)}.
class LeftAdjoint {
 public:
  explicit LeftAdjoint(std::shared_ptr<const Abstraction> abs) : abs_(std::move(abs)) {}
  Element operator()(const ConcreteSet& s) const;

 private:
  std::shared_ptr<const Abstraction> abs_;
};

struct AdjointResult {
  enum class Status { total, absent, undetermined };
  Status status = Status::undetermined;
  std::optional<LeftAdjoint> alpha;
  /// Concrete set whose over-approximations have no minimum.
  std::optional<ConcreteSet> witness;
};

/// Exact decision via the closure system of gamma-image intersections, which
/// is bounded by `closure_bound` sets (status undetermined beyond it).
AdjointResult compute_left_adjoint(std::shared_ptr<const Abstraction> abs, std::size_t closure_bound = 1u << 15);

}  // namespace abslog
