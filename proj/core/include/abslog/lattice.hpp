#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace abslog {

/// Index of an element inside its lattice's carrier.
using Element = std::size_t;

struct UnaryOpTable {
  std::string name;
  std::vector<Element> table;

  Element operator()(Element a) const { return table[a]; }
  friend bool operator==(const UnaryOpTable&, const UnaryOpTable&) = default;
};

/// Row-major n*n table.
struct BinaryOpTable {
  std::string name;
  std::size_t arity_size = 0;
  std::vector<Element> table;

  Element operator()(Element a, Element b) const { return table[a * arity_size + b]; }
  friend bool operator==(const BinaryOpTable&, const BinaryOpTable&) = default;
};

enum class ClosureMode { full, hasse };

/**
 * A finite lattice with materialized order, meet and join tables.
 *
 * Construction validates the partial-order axioms and the existence of all
 * binary meets and joins, so every instance in circulation is a lattice.
 * Elements are addressed by index; names are unique.
 *
 * Besides the lattice operations, the carrier may carry additional named
 * unary/binary operation tables (e.g. a declared negation).
 */
class FiniteLattice {
 public:
  static FiniteLattice build(std::vector<std::string> elements,
                             const std::vector<std::pair<std::string, std::string>>& order_pairs,
                             ClosureMode mode);

  /// `order` is a row-major n*n relation, `order[a*n+b]` meaning a <= b.
  static FiniteLattice from_order(std::vector<std::string> elements, std::vector<char> order);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Element a) const { return names_.at(a); }
  Element index(std::string_view name) const;
  std::optional<Element> find(std::string_view name) const;

  bool leq(Element a, Element b) const { return order_[a * size() + b] != 0; }
  bool leq(std::string_view a, std::string_view b) const { return leq(index(a), index(b)); }
  Element meet(Element a, Element b) const { return meet_[a * size() + b]; }
  Element join(Element a, Element b) const { return join_[a * size() + b]; }
  Element top() const { return top_; }
  Element bottom() const { return bottom_; }

  bool is_distributive() const { return distributive_; }
  /// max{c : a /\ c <= b}; throws NotDistributive.
  Element heyting_implication(Element a, Element b) const;
  /// min{c : a <= b \/ c}; throws NotDistributive.
  Element co_implication(Element a, Element b) const;

  bool is_meet_irreducible(Element a) const;
  bool is_join_irreducible(Element a) const;

  std::vector<std::pair<Element, Element>> hasse_edges() const;

  std::vector<UnaryOpTable> find_order_reversing_involutions(std::size_t carrier_bound = 12) const;

  bool is_involution(const UnaryOpTable& op) const;
  bool is_order_reversing(const UnaryOpTable& op) const;

  // Extra operation tables.
  void add_unary_op(UnaryOpTable op);
  void add_binary_op(BinaryOpTable op);
  const UnaryOpTable* unary_op(std::string_view name) const;
  const BinaryOpTable* binary_op(std::string_view name) const;
  const std::map<std::string, UnaryOpTable, std::less<>>& unary_ops() const { return unary_ops_; }
  const std::map<std::string, BinaryOpTable, std::less<>>& binary_ops() const { return binary_ops_; }

 private:
  FiniteLattice() = default;
  void require_distributive(const char* op) const;
  void check_element(Element a) const;

  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
  std::vector<char> order_;
  std::vector<Element> meet_;
  std::vector<Element> join_;
  Element top_ = 0;
  Element bottom_ = 0;
  bool distributive_ = false;
  std::map<std::string, UnaryOpTable, std::less<>> unary_ops_;
  std::map<std::string, BinaryOpTable, std::less<>> binary_ops_;
};

}  // namespace abslog
