#pragma once

// Small DPLL satisfiability checker over the clause sets the proof engine
// compiles. Instances are tiny (hundreds of atoms, mostly Horn), so plain
// unit propagation plus chronological backtracking is enough.

#include <cstdint>
#include <set>
#include <vector>

namespace abslog::detail {

/// 2*atom for the positive literal, 2*atom+1 for the negative one.
using Lit = int;

inline Lit pos(int atom) { return 2 * atom; }
inline Lit neg(int atom) { return 2 * atom + 1; }
inline Lit negate(Lit l) { return l ^ 1; }
inline int atom_of_lit(Lit l) { return l >> 1; }
inline bool is_negative(Lit l) { return (l & 1) != 0; }

class ClauseSet {
 public:
  int add_atom() {
    occurs_.emplace_back();
    occurs_.emplace_back();
    return atoms_++;
  }
  int atom_count() const { return atoms_; }

  /// Returns false when the clause was already present or is a tautology.
  bool add_clause(std::vector<Lit> clause);

  const std::vector<std::vector<Lit>>& clauses() const { return clauses_; }
  const std::vector<int>& occurs(Lit l) const { return occurs_[static_cast<std::size_t>(l)]; }
  bool has_empty_clause() const { return has_empty_; }

  bool satisfiable(const std::vector<Lit>& assumptions) const;
  /// Distinct restrictions of the models to atoms [0, k), as bitmasks (k <= 64).
  std::vector<std::uint64_t> project_models(int k) const;

 private:
  int atoms_ = 0;
  bool has_empty_ = false;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> occurs_;
  std::set<std::vector<Lit>> seen_;
};

class Solver {
 public:
  explicit Solver(const ClauseSet& cs);

  /// False on immediate conflict.
  bool assign(Lit l);
  bool propagate();
  bool solve();
  std::size_t mark() const { return trail_.size(); }
  void undo(std::size_t m);
  /// -1 unassigned, 0 false, 1 true.
  int value(int atom) const { return val_[static_cast<std::size_t>(atom)]; }
  bool ok() const { return ok_; }

 private:
  int lit_value(Lit l) const {
    int v = val_[static_cast<std::size_t>(atom_of_lit(l))];
    if (v < 0) return -1;
    return is_negative(l) ? 1 - v : v;
  }

  const ClauseSet& cs_;
  std::vector<int> val_;
  std::vector<Lit> trail_;
  std::size_t qhead_ = 0;
  bool ok_ = true;
};

}  // namespace abslog::detail
