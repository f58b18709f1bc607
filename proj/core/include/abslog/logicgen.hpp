#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "abslog/concrete.hpp"
#include "abslog/formula.hpp"

namespace abslog {

/// One predicate per lattice element (same names, lattice order) and the
/// preserved connectives.
struct Signature {
  std::vector<std::string> predicates;
  std::vector<Connective> connectives;
  std::string variables = "x";

  bool has(Connective c) const;
  bool has_predicate(std::string_view name) const;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Declaration order is the sort order of rendered rule lists.
enum class RuleKind { structural, introduction, operation_axiom, order_axiom };

std::string_view rule_kind_name(RuleKind k);

struct Rule {
  RuleKind kind = RuleKind::structural;
  std::string name;
  std::vector<Sequent> premises;
  Sequent conclusion;
  /// Reflexive order axiom a(x) |- a(x).
  bool identity_instance = false;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// Rules are kept sorted by (kind, name); names are unique.
struct ProofSystem {
  Signature signature;
  std::vector<Rule> rules;
  std::string source;

  const Rule* find(std::string_view name) const;
  bool has_rule(std::string_view name) const { return find(name) != nullptr; }
  std::size_t count(RuleKind k) const;
  void sort_rules();
  friend bool operator==(const ProofSystem&, const ProofSystem&) = default;
};

Signature generate_signature(const Abstraction& abs, const PreservationReport& report);

/**
 * Builds the logic of an abstraction: structural rules, introduction rules
 * for each preserved connective, one axiom pair per operation-table entry
 * (`op.<conn>.<args>.l` / `.r`), one order axiom per pair a <= b
 * (`ord.<a>.<b>`), and the abstraction's extra axioms (`op.ax.<k>`).
 */
ProofSystem generate_proof_system(const Abstraction& abs, const PreservationReport& report);

struct MinimizeStats {
  std::vector<std::string> removed;
  bool closure_verified = false;
};

/// Greedy, deterministic removal of redundant axioms (see README).
ProofSystem minimize_proof_system(const ProofSystem& ps, MinimizeStats* stats = nullptr);

enum class RenderFormat { text, latex, machine };

RenderFormat parse_render_format(std::string_view name);
std::string render(const ProofSystem& ps, RenderFormat format);
/// Inverse of render(ps, RenderFormat::machine).
ProofSystem parse_machine(std::string_view text);

}  // namespace abslog
