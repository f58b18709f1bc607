#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abslog {

/// The candidate connectives of a generated logic.
enum class Connective : std::uint8_t { tt, ff, and_, or_, not_, impl, coimpl };

inline constexpr std::array<Connective, 7> kAllConnectives = {
    Connective::tt,   Connective::ff,   Connective::and_,  Connective::or_,
    Connective::not_, Connective::impl, Connective::coimpl};

/// "tt", "ff", "and", "or", "not", "impl", "coimpl".
std::string_view connective_name(Connective c);
std::optional<Connective> connective_from_name(std::string_view name);
int arity(Connective c);

struct FormulaNode;

/**
 * Immutable formula of a single-variable logic: predicate applications,
 * the constants tt/ff, unary and binary connectives, and schematic
 * metavariables (used only inside rule schemas).
 *
 * Copies share structure; equality is structural.
 */
class Formula {
 public:
  enum class Kind : std::uint8_t { predicate, constant, unary, binary, meta };

  static Formula predicate(std::string name);
  static Formula constant(Connective c);
  static Formula unary(Connective c, Formula arg);
  static Formula binary(Connective c, Formula lhs, Formula rhs);
  static Formula meta(std::string name);

  Kind kind() const;
  Connective connective() const;
  /// Predicate or metavariable name.
  const std::string& name() const;
  const Formula& arg(std::size_t i) const;
  std::size_t depth() const;

  bool is_predicate() const { return kind() == Kind::predicate; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  Formula::Kind kind;
  Connective connective = Connective::tt;
  std::string name;
  std::vector<Formula> args;
};

/// Antecedents read conjunctively, succedents disjunctively.
struct Sequent {
  std::vector<Formula> antecedents;
  std::vector<Formula> succedents;

  friend bool operator==(const Sequent&, const Sequent&) = default;
};

/// True for names that print without the `p:` escape.
bool is_plain_identifier(std::string_view name);

/// `vars` is the argument list printed after predicates, e.g. "x" or "x,y".
std::string to_text(const Formula& f, std::string_view vars = "x");
std::string to_text(const Sequent& s, std::string_view vars = "x");

/**
 * Parses the textual formula syntax:
 *
 *   formula := disj (("->" | "<-") formula)?
 *   disj    := conj ("|" conj)*
 *   conj    := unary ("&" unary)*
 *   unary   := "~" unary | atom
 *   atom    := "tt" | "ff" | "(" formula ")" | "$" ident | pred "(" ident ("," ident)* ")"
 *   pred    := ident | "p:" <characters up to "(">
 *
 * Throws ParseError carrying the column (line is `line`).
 */
Formula parse_formula(std::string_view text, std::size_t line = 1);
/// `a(x), b(x) |- c(x), d(x)`; either side may be empty.
Sequent parse_sequent(std::string_view text, std::size_t line = 1);

}  // namespace abslog
