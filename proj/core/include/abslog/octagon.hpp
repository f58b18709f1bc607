#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abslog/concrete.hpp"
#include "abslog/lattice.hpp"

namespace abslog::octagon {

/// sx*x + sy*y >= c with sx, sy in {+1, -1}.
struct Predicate {
  int sx = 1;
  int sy = 1;
  int c = 0;

  /// "+x-y>=3"
  std::string name() const;
  bool holds(int x, int y) const { return sx * x + sy * y >= c; }
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// The four slope classes in carrier order.
inline constexpr std::array<std::pair<int, int>, 4> kSlopes{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

/// Window [-C+1, C] is closed under c -> -c+1.
inline int window_lo(int C) { return -C + 1; }
inline int window_hi(int C) { return C; }

/// Flips both signs and maps c to -c+1; throws WindowOverflow outside the window.
Predicate complement(const Predicate& p, int C);

/**
 * bot, the four chains (one per slope class, thresholds descending so each
 * chain is listed bottom-up), then top.
 */
class OctLattice {
 public:
  explicit OctLattice(int C);

  int window() const { return C_; }
  const FiniteLattice& lattice() const { return lattice_; }
  std::size_t size() const { return lattice_.size(); }
  Element bottom() const { return lattice_.bottom(); }
  Element top() const { return lattice_.top(); }
  /// Empty for top and bottom.
  const std::optional<Predicate>& predicate(Element e) const { return preds_.at(e); }
  Element index(const Predicate& p) const;
  bool leq(Element a, Element b) const { return lattice_.leq(a, b); }

 private:
  int C_;
  std::vector<std::optional<Predicate>> preds_;
  FiniteLattice lattice_;
};

/// Conjunction of octagonal constraints as bounds on u = x+y and w = x-y.
struct Region {
  std::optional<int> u_lo, u_hi, w_lo, w_hi;

  static Region of(const std::vector<Predicate>& constraints);
  void add(const Predicate& p);
  /// Nonempty over Z^2: both intervals nonempty, and parities can match.
  bool feasible() const;
};

/// Grid [-N,N]^2 as an integer tuple universe.
ConcreteUniverse grid(int N);
ConcreteSet grid_gamma(const ConcreteUniverse& g, const Predicate& p);
/// gamma of a carrier element on the grid (top full, bottom empty).
ConcreteSet grid_gamma(const ConcreteUniverse& g, const OctLattice& L, Element e);

/// Order-reversing involution top<->bot, (s, c) -> (-s, -c+1).
UnaryOpTable hemisphere_negation(const OctLattice& L);

bool verify_irreducibility(const OctLattice& L);

/// Antecedent sets p1, ..., pk |- ff emitted for the logic: every infeasible
/// pair and every parity-infeasible quadruple fixing u and w.
std::vector<std::vector<Predicate>> infeasibility_axioms(int C, bool include_quadruples = true);

/// Requires N >= 4C (GridGuardViolated otherwise).
Abstraction export_abstraction(const OctLattice& L, int N);

struct ConjunctionWitness {
  Predicate p, q;
  /// For each carrier element r: a grid point in gamma(r) xor (gamma(p) & gamma(q)).
  std::vector<std::optional<std::pair<int, int>>> distinguishing;
  bool all_distinguished = true;
};

ConjunctionWitness conjunction_nonpreservation_witness(const OctLattice& L, Predicate p = {1, 1, 0},
                                                       Predicate q = {1, -1, 0});

struct SufficiencyResult {
  bool holds = true;
  std::size_t selections_checked = 0;
  /// A grid-infeasible constraint selection covered by no emitted axiom.
  std::optional<std::vector<Predicate>> witness;
};

/**
 * Every constraint set reduces to its tightest constraint per slope class, so
 * checking all (2C+1)^4 selections covers all antecedent sets: a selection is
 * grid-infeasible iff some emitted axiom's antecedents are each implied by a
 * member of the selection.
 */
SufficiencyResult check_infeasibility_sufficiency(int C, int N, bool include_quadruples = true);

struct DegenerateModel {
  FiniteLattice lattice;
  UnaryOpTable negation;
  bool involution = false;
  bool order_reversing = false;
  /// All order-reversing involutions of the diamond.
  std::vector<UnaryOpTable> all_negations;
};

/// The four-element top/A/B/bot model with ~A = A and ~B = B.
DegenerateModel degenerate_model();

/// Same shape as some octagon lattice for C >= 1 (order isomorphism test).
bool isomorphic_to_octagon(const FiniteLattice& L, int max_C = 8);

bool order_isomorphic(const FiniteLattice& a, const FiniteLattice& b);

struct SuiteItem {
  std::string name;
  bool pass = false;
  std::string detail;
  /// Reported but not part of the verdict.
  bool informational = false;
};

/**
 * The octagon claims checked on window C and grid N (N >= 4C): complement
 * equation, order versus grid inclusion, region feasibility versus the grid,
 * preservation on the export, the conjunction witness, irreducibility, the
 * hemisphere negation, the infeasibility sequent, and (C <= 4) sufficiency of
 * the emitted infeasibility axioms.
 */
std::vector<SuiteItem> verify_suite(int C, int N);

}  // namespace abslog::octagon
