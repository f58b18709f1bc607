#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abslog/concrete.hpp"
#include "abslog/formula.hpp"
#include "abslog/logicgen.hpp"

namespace abslog {

namespace detail {
class ClauseSet;
}

struct EngineOptions {
  /// Largest predicate count for which the saturated relation is materialized.
  std::size_t saturation_bound = 14;
  /// Precompute the predicate equivalent of every one-level compound formula.
  bool representatives = true;
};

/**
 * Decides derivability in a generated proof system.
 *
 * Every axiom and every introduction rule of the system is compiled into a
 * clause over "atoms" (predicates plus compound formulas).  With identity,
 * weakening, contraction, exchange and cut, the derivable sequents are exactly
 * the clauses entailed by that set, so a query Gamma |- Delta is derivable iff
 * asserting Gamma and refuting Delta is unsatisfiable.  Contraposition (a rule
 * with a derivable premise) is closed under by fixpoint at construction.
 *
 * The saturated relation over predicate-set sequents is represented by its
 * models: Gamma |- Delta is derivable iff no model contains Gamma and avoids
 * Delta.
 *
 * Immutable after construction; safe to query concurrently.
 */
class ProofEngine {
 public:
  explicit ProofEngine(const ProofSystem& ps, EngineOptions options = {});
  ~ProofEngine();
  ProofEngine(const ProofEngine&) = delete;
  ProofEngine& operator=(const ProofEngine&) = delete;

  const ProofSystem& system() const { return ps_; }
  std::size_t predicate_count() const { return ps_.signature.predicates.size(); }
  std::size_t predicate_index(std::string_view name) const;

  /// Normalizes every formula, then decides the predicate-set sequent.
  bool derivable(const Sequent& s) const;
  /// Formula-level decision without normalization.
  bool derivable_unnormalized(const Sequent& s) const;
  bool derivable_predicates(const std::vector<std::size_t>& antecedents,
                            const std::vector<std::size_t>& succedents) const;

  /// Predicate index p with phi -||- p(x) derivable.
  std::size_t normalize(const Formula& phi) const;

  /// Models of the saturated relation restricted to predicates (bit k = predicate k).
  /// Throws CarrierTooLarge beyond the saturation bound.
  const std::vector<std::uint64_t>& saturated_models() const;
  /// Row-major matrix: [a*n+b] iff a(x) |- b(x) is derivable.
  std::vector<char> atomic_derivability() const;

  /// The compiled clause set as sequents (negative literals on the left).
  std::vector<Sequent> clause_sequents() const;

  bool uses_primitive_negation() const { return primitive_negation_; }

 private:
  int atom_of(const Formula& f, detail::ClauseSet& cs, std::map<Formula, int>& atoms) const;
  void add_definition(const Formula& f, int atom, detail::ClauseSet& cs, std::map<Formula, int>& atoms) const;
  void check_symbols(const Formula& f) const;
  std::optional<std::size_t> find_representative(int atom) const;
  bool entails(const std::vector<int>& assumptions) const;

  ProofSystem ps_;
  EngineOptions options_;
  bool primitive_negation_ = false;
  std::unique_ptr<detail::ClauseSet> clauses_;
  std::map<Formula, int> atoms_;
  /// Predicate formulas by index.
  std::vector<Formula> atom_formula_;
  std::map<Formula, std::size_t> representative_;
  mutable std::once_flag models_once_;
  mutable std::vector<std::uint64_t> models_;
};

Element eval_abstract(const Abstraction& abs, const Formula& phi);
ConcreteSet eval_concrete(const Abstraction& abs, const Formula& phi);
/// Intersection of antecedents (universe when empty) within the union of succedents.
bool holds_concrete(const Abstraction& abs, const Sequent& s);

struct LindenbaumAlgebra {
  /// Predicate indices per class; classes ordered by their first member.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  /// Row-major class order.
  std::vector<char> order;
  /// Induced operation tables over classes (size 1, k or k*k).
  std::map<Connective, std::vector<std::size_t>> operations;
  /// Element a -> class of a(x).
  std::vector<std::size_t> embedding;
  bool operations_well_defined = true;
  /// Every one-level compound is interderivable with some predicate.
  bool every_formula_normalizes = true;

  bool leq(std::size_t c, std::size_t d) const { return order[c * classes.size() + d] != 0; }
};

LindenbaumAlgebra build_lindenbaum(const ProofEngine& engine, const Abstraction& abs);

struct IsomorphismReport {
  bool surjective = true;
  bool injective = true;
  bool order_preserving = true;
  bool order_reflecting = true;
  std::map<Connective, bool> homomorphism;
  std::vector<std::string> failures;

  bool holds() const;
};

IsomorphismReport verify_isomorphism(const Abstraction& abs, const LindenbaumAlgebra& lind);

struct SoundnessResult {
  bool sound = true;
  std::optional<Sequent> counterexample;
  std::size_t saturated_checked = 0;
  std::size_t derivations_replayed = 0;
};

/**
 * Checks every derivable sequent of the saturated relation concretely
 * (exhaustively over predicate-set pairs when the carrier has at most
 * `exhaustive_bound` predicates, via point valuations otherwise), every
 * compiled clause, and `samples` random derivations of depth <= depth_bound
 * replayed rule by rule from the system's schemas.
 */
SoundnessResult verify_soundness(const Abstraction& abs, const ProofEngine& engine, std::size_t depth_bound = 6,
                                 std::size_t samples = 500, std::uint64_t seed = 1,
                                 std::size_t exhaustive_bound = 8);

struct CompletenessResult {
  enum class Status { complete, incomplete, precondition_unmet };
  Status status = Status::complete;
  std::optional<std::pair<Element, Element>> witness;
};

CompletenessResult verify_completeness(const Abstraction& abs, const ProofEngine& engine);

}  // namespace abslog
