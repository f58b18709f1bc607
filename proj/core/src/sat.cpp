#include "sat.hpp"

#include <algorithm>
#include <functional>

namespace abslog::detail {

bool ClauseSet::add_clause(std::vector<Lit> clause) {
  std::sort(clause.begin(), clause.end());
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 0; i + 1 < clause.size(); ++i)
    if (clause[i + 1] == negate(clause[i])) return false;
  if (!seen_.insert(clause).second) return false;
  if (clause.empty()) has_empty_ = true;
  int id = static_cast<int>(clauses_.size());
  for (Lit l : clause) occurs_[static_cast<std::size_t>(l)].push_back(id);
  clauses_.push_back(std::move(clause));
  return true;
}

bool ClauseSet::satisfiable(const std::vector<Lit>& assumptions) const {
  Solver s(*this);
  if (!s.ok()) return false;
  for (Lit l : assumptions)
    if (!s.assign(l)) return false;
  return s.solve();
}

std::vector<std::uint64_t> ClauseSet::project_models(int k) const {
  std::vector<std::uint64_t> out;
  Solver s(*this);
  if (!s.ok() || !s.propagate()) return out;
  std::function<void(int)> branch = [&](int i) {
    if (i == k) {
      std::size_t m = s.mark();
      if (s.solve()) {
        std::uint64_t mask = 0;
        for (int a = 0; a < k; ++a)
          if (s.value(a) == 1) mask |= std::uint64_t{1} << a;
        out.push_back(mask);
      }
      s.undo(m);
      return;
    }
    if (s.value(i) >= 0) {
      branch(i + 1);
      return;
    }
    for (Lit l : {neg(i), pos(i)}) {
      std::size_t m = s.mark();
      if (s.assign(l) && s.propagate()) branch(i + 1);
      s.undo(m);
    }
  };
  branch(0);
  std::sort(out.begin(), out.end());
  return out;
}

Solver::Solver(const ClauseSet& cs) : cs_(cs), val_(static_cast<std::size_t>(cs.atom_count()), -1) {
  if (cs.has_empty_clause()) {
    ok_ = false;
    return;
  }
  for (const auto& c : cs.clauses())
    if (c.size() == 1 && !assign(c[0])) {
      ok_ = false;
      return;
    }
}

bool Solver::assign(Lit l) {
  int v = lit_value(l);
  if (v == 1) return true;
  if (v == 0) return false;
  val_[static_cast<std::size_t>(atom_of_lit(l))] = is_negative(l) ? 0 : 1;
  trail_.push_back(l);
  return true;
}

bool Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit l = trail_[qhead_++];
    for (int ci : cs_.occurs(negate(l))) {
      const auto& c = cs_.clauses()[static_cast<std::size_t>(ci)];
      Lit unassigned = -1;
      int open = 0;
      bool satisfied = false;
      for (Lit x : c) {
        int v = lit_value(x);
        if (v == 1) {
          satisfied = true;
          break;
        }
        if (v < 0) {
          ++open;
          unassigned = x;
        }
      }
      if (satisfied) continue;
      if (open == 0) return false;
      if (open == 1) assign(unassigned);
    }
  }
  return true;
}

bool Solver::solve() {
  if (!propagate()) return false;
  int atom = -1;
  for (int a = 0; a < cs_.atom_count(); ++a)
    if (val_[static_cast<std::size_t>(a)] < 0) {
      atom = a;
      break;
    }
  if (atom < 0) return true;
  std::size_t m = mark();
  for (Lit l : {pos(atom), neg(atom)}) {
    assign(l);
    if (solve()) return true;
    undo(m);
  }
  return false;
}

void Solver::undo(std::size_t m) {
  while (trail_.size() > m) {
    val_[static_cast<std::size_t>(atom_of_lit(trail_.back()))] = -1;
    trail_.pop_back();
  }
  qhead_ = std::min(qhead_, m);
}

}  // namespace abslog::detail
