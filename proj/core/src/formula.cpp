#include "abslog/formula.hpp"

#include <cctype>

#include "abslog/error.hpp"

namespace abslog {

std::string_view connective_name(Connective c) {
  switch (c) {
    case Connective::tt: return "tt";
    case Connective::ff: return "ff";
    case Connective::and_: return "and";
    case Connective::or_: return "or";
    case Connective::not_: return "not";
    case Connective::impl: return "impl";
    case Connective::coimpl: return "coimpl";
  }
  return "?";
}

std::optional<Connective> connective_from_name(std::string_view name) {
  for (Connective c : kAllConnectives)
    if (connective_name(c) == name) return c;
  return std::nullopt;
}

int arity(Connective c) {
  switch (c) {
    case Connective::tt:
    case Connective::ff: return 0;
    case Connective::not_: return 1;
    default: return 2;
  }
}

Formula Formula::predicate(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Kind::predicate, Connective::tt, std::move(name), {}}));
}

Formula Formula::constant(Connective c) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Kind::constant, c, {}, {}}));
}

Formula Formula::unary(Connective c, Formula arg) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Kind::unary, c, {}, {std::move(arg)}}));
}

Formula Formula::binary(Connective c, Formula lhs, Formula rhs) {
  return Formula(
      std::make_shared<const FormulaNode>(FormulaNode{Kind::binary, c, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::meta(std::string name) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{Kind::meta, Connective::tt, std::move(name), {}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
Connective Formula::connective() const { return node_->connective; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::arg(std::size_t i) const { return node_->args.at(i); }

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& a : node_->args) d = std::max(d, a.depth() + 1);
  return d;
}

bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.node_->kind <=> b.node_->kind; c != 0) return c;
  if (auto c = a.node_->connective <=> b.node_->connective; c != 0) return c;
  if (auto c = a.node_->name <=> b.node_->name; c != 0) return c;
  if (auto c = a.node_->args.size() <=> b.node_->args.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.node_->args.size(); ++i)
    if (auto c = a.node_->args[i] <=> b.node_->args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

bool is_plain_identifier(std::string_view name) {
  if (name.empty() || name == "tt" || name == "ff") return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!std::isalpha(head) && head != '_') return false;
  for (char ch : name) {
    auto u = static_cast<unsigned char>(ch);
    if (!std::isalnum(u) && ch != '_' && ch != '\'') return false;
  }
  return true;
}

namespace {

// Binding strength; higher binds tighter.
int precedence(const Formula& f) {
  if (f.kind() == Formula::Kind::unary) return 4;
  if (f.kind() != Formula::Kind::binary) return 5;
  switch (f.connective()) {
    case Connective::and_: return 3;
    case Connective::or_: return 2;
    default: return 1;
  }
}

std::string_view symbol(Connective c) {
  switch (c) {
    case Connective::and_: return " & ";
    case Connective::or_: return " | ";
    case Connective::impl: return " -> ";
    case Connective::coimpl: return " <- ";
    case Connective::not_: return "~";
    default: return "?";
  }
}

void print(const Formula& f, std::string_view vars, std::string& out) {
  auto wrap = [&](const Formula& g, bool parens) {
    if (parens) out += '(';
    print(g, vars, out);
    if (parens) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::predicate:
      if (!is_plain_identifier(f.name())) out += "p:";
      out += f.name();
      out += '(';
      out += vars;
      out += ')';
      break;
    case Formula::Kind::constant: out += connective_name(f.connective()); break;
    case Formula::Kind::meta:
      out += '$';
      out += f.name();
      break;
    case Formula::Kind::unary:
      out += symbol(f.connective());
      wrap(f.arg(0), precedence(f.arg(0)) < 4);
      break;
    case Formula::Kind::binary: {
      int p = precedence(f);
      bool right_assoc = p == 1;
      wrap(f.arg(0), right_assoc ? precedence(f.arg(0)) <= p : precedence(f.arg(0)) < p);
      out += symbol(f.connective());
      wrap(f.arg(1), right_assoc ? precedence(f.arg(1)) < p : precedence(f.arg(1)) <= p);
      break;
    }
  }
}

class Parser {
 public:
  Parser(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  Formula formula() {
    Formula lhs = disjunction();
    skip_ws();
    if (peek("->")) {
      pos_ += 2;
      return Formula::binary(Connective::impl, lhs, formula());
    }
    if (peek("<-")) {
      pos_ += 2;
      return Formula::binary(Connective::coimpl, lhs, formula());
    }
    return lhs;
  }

  std::vector<Formula> formula_list(bool stop_at_turnstile) {
    std::vector<Formula> out;
    skip_ws();
    if (at_end() || (stop_at_turnstile && peek("|-"))) return out;
    out.push_back(formula());
    skip_ws();
    while (!at_end() && text_[pos_] == ',') {
      ++pos_;
      out.push_back(formula());
      skip_ws();
    }
    return out;
  }

  Sequent sequent() {
    Sequent s;
    s.antecedents = formula_list(true);
    skip_ws();
    if (!peek("|-")) fail("expected '|-'");
    pos_ += 2;
    s.succedents = formula_list(false);
    expect_end();
    return s;
  }

  void expect_end() {
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
  }

 private:
  Formula disjunction() {
    Formula lhs = conjunction();
    for (;;) {
      skip_ws();
      if (!at_end() && text_[pos_] == '|' && !peek("|-")) {
        ++pos_;
        lhs = Formula::binary(Connective::or_, lhs, conjunction());
      } else {
        return lhs;
      }
    }
  }

  Formula conjunction() {
    Formula lhs = unary();
    for (;;) {
      skip_ws();
      if (!at_end() && text_[pos_] == '&') {
        ++pos_;
        lhs = Formula::binary(Connective::and_, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Formula unary() {
    skip_ws();
    if (!at_end() && text_[pos_] == '~') {
      ++pos_;
      return Formula::unary(Connective::not_, unary());
    }
    return atom();
  }

  Formula atom() {
    skip_ws();
    if (at_end()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Formula inner = formula();
      skip_ws();
      if (at_end() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (ch == '$') {
      ++pos_;
      return Formula::meta(identifier());
    }
    std::string name;
    if (peek("p:")) {
      pos_ += 2;
      std::size_t start = pos_;
      while (!at_end() && text_[pos_] != '(' && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      name = std::string(text_.substr(start, pos_ - start));
      if (name.empty()) fail("empty escaped predicate name");
    } else {
      name = identifier();
      if (name == "tt") return Formula::constant(Connective::tt);
      if (name == "ff") return Formula::constant(Connective::ff);
    }
    skip_ws();
    if (at_end() || text_[pos_] != '(') fail("expected '(' after predicate '" + name + "'");
    ++pos_;
    identifier();
    skip_ws();
    while (!at_end() && text_[pos_] == ',') {
      ++pos_;
      identifier();
      skip_ws();
    }
    if (at_end() || text_[pos_] != ')') fail("expected ')' closing argument list");
    ++pos_;
    return Formula::predicate(std::move(name));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end()) {
      auto u = static_cast<unsigned char>(text_[pos_]);
      if (std::isalnum(u) || u == '_' || u == '\'') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  bool peek(std::string_view tok) const { return text_.substr(pos_, tok.size()) == tok; }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const Formula& f, std::string_view vars) {
  std::string out;
  print(f, vars, out);
  return out;
}

std::string to_text(const Sequent& s, std::string_view vars) {
  std::string out;
  auto list = [&](const std::vector<Formula>& fs) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (i) out += ", ";
      print(fs[i], vars, out);
    }
  };
  list(s.antecedents);
  out += s.antecedents.empty() ? "|-" : " |-";
  if (!s.succedents.empty()) out += ' ';
  list(s.succedents);
  return out;
}

Formula parse_formula(std::string_view text, std::size_t line) {
  Parser p(text, line);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Sequent parse_sequent(std::string_view text, std::size_t line) { return Parser(text, line).sequent(); }

}  // namespace abslog
