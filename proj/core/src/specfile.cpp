#include "abslog/specfile.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "abslog/error.hpp"

namespace abslog {

namespace {

struct Word {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

bool valid_element_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (std::isspace(static_cast<unsigned char>(c)) || std::string_view(",(){}#").find(c) != std::string_view::npos)
      return false;
  return s != "<" && s != "->" && s != "=";
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

/// Character-level parser for one set expression.
class SetParser {
 public:
  SetParser(const ConcreteUniverse& u, std::string_view text, std::size_t line, std::size_t column0)
      : u_(u), text_(text), line_(line), column0_(column0) {}

  ConcreteSet parse() {
    ConcreteSet s = expr();
    skip();
    if (pos_ != text_.size()) fail("trailing characters in set expression");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column0_ + pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::string_view(",(){} \t").find(text_[pos_]) == std::string_view::npos) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    std::size_t at = (skip(), pos_);
    auto w = word();
    auto v = to_int(w);
    if (!v) {
      pos_ = at;
      fail("expected an integer, found '" + w + "'");
    }
    return *v;
  }

  void require_line() {
    if (u_.kind() != ConcreteUniverse::Kind::integers || u_.dimension() != 1)
      fail("this shorthand needs a one-dimensional integer universe");
  }

  ConcreteSet expr() {
    skip();
    if (eat('{')) return point_list();
    std::size_t at = pos_;
    std::string w = word();
    if (w == "all") return u_.full_set();
    if (w == "evens" || w == "odds") {
      pos_ = at;
      require_line();
      pos_ += w.size();
      int r = w == "evens" ? 0 : 1;
      return u_.filter([&](std::size_t p) { return ((u_.coords(p)[0] % 2) + 2) % 2 == r; });
    }
    if (w == "range") {
      pos_ = at;
      require_line();
      pos_ += w.size();
      expect('(');
      int lo = integer();
      expect(',');
      int hi = integer();
      expect(')');
      return u_.filter([&](std::size_t p) {
        int x = u_.coords(p)[0];
        return lo <= x && x <= hi;
      });
    }
    if (w == "union") {
      expect('(');
      ConcreteSet s = u_.empty_set();
      if (eat(')')) return s;
      do s |= expr();
      while (eat(','));
      expect(')');
      return s;
    }
    pos_ = at;
    fail("expected a set expression, found '" + w + "'");
  }

  ConcreteSet point_list() {
    ConcreteSet s = u_.empty_set();
    if (eat('}')) return s;
    do {
      skip();
      std::size_t at = pos_;
      std::optional<std::size_t> p;
      std::string shown;
      if (eat('(')) {
        std::vector<int> c;
        do c.push_back(integer());
        while (eat(','));
        expect(')');
        p = u_.find_point(c);
      } else {
        std::string w = word();
        if (u_.kind() == ConcreteUniverse::Kind::atoms) {
          p = u_.find_atom(w);
        } else if (auto v = to_int(w)) {
          p = u_.find_point({*v});
        }
      }
      if (!p) {
        shown = std::string(text_.substr(at, pos_ - at));
        pos_ = at;
        fail("point '" + shown + "' is not in the universe");
      }
      s.set(*p);
    } while (eat(','));
    expect('}');
    return s;
  }

  const ConcreteUniverse& u_;
  std::string_view text_;
  std::size_t line_;
  std::size_t column0_;
  std::size_t pos_ = 0;
};

enum class Section { none, elements, order, ops, universe, gamma, axioms };

}  // namespace

Abstraction parse_spec(std::string_view text, std::string default_name) {
  std::string name = std::move(default_name);
  std::vector<std::string> elements;
  std::set<std::string> element_set;
  std::vector<std::pair<std::string, std::string>> order;
  ClosureMode mode = ClosureMode::hasse;
  std::vector<UnaryOpTable> unary_ops;
  std::vector<BinaryOpTable> binary_ops;
  std::optional<ConcreteUniverse> universe;
  struct GammaLine {
    std::string element;
    std::string expr;
    std::size_t line, column;
  };
  std::vector<GammaLine> gamma_lines;
  std::vector<std::pair<std::string, std::size_t>> axiom_lines;

  Section section = Section::none;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  auto fail = [&](const std::string& msg, std::size_t col) -> void { throw ParseError(msg, lineno, col); };
  auto known = [&](const Word& w) {
    if (!element_set.count(w.text)) fail("unknown element '" + w.text + "'", w.column);
  };

  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto words = split_words(line);
    if (words.empty()) continue;
    const std::string& head = words[0].text;

    if (head == "ELEMENTS" || head == "ORDER" || head == "OPS" || head == "UNIVERSE" || head == "GAMMA" ||
        head == "AXIOMS") {
      if (head == "ORDER" && words.size() == 2 && (words[1].text == "full" || words[1].text == "hasse")) {
        mode = words[1].text == "full" ? ClosureMode::full : ClosureMode::hasse;
      } else if (words.size() > 1) {
        fail("unexpected text after section header", words[1].column);
      }
      section = head == "ELEMENTS" ? Section::elements
                : head == "ORDER"  ? Section::order
                : head == "OPS"    ? Section::ops
                : head == "UNIVERSE" ? Section::universe
                : head == "GAMMA"  ? Section::gamma
                                   : Section::axioms;
      continue;
    }

    switch (section) {
      case Section::none:
        if (head != "name" || words.size() != 2) fail("expected 'name <id>' or a section header", words[0].column);
        name = words[1].text;
        break;
      case Section::elements:
        for (const auto& w : words) {
          if (!valid_element_name(w.text)) fail("invalid element name '" + w.text + "'", w.column);
          if (!element_set.insert(w.text).second) fail("duplicate element '" + w.text + "'", w.column);
          elements.push_back(w.text);
        }
        break;
      case Section::order:
        if (words.size() < 3 || words.size() % 2 == 0) fail("expected 'a < b [< c ...]'", words[0].column);
        for (std::size_t i = 0; i < words.size(); i += 2) {
          known(words[i]);
          if (i + 1 < words.size() && words[i + 1].text != "<") fail("expected '<'", words[i + 1].column);
          if (i >= 2) order.emplace_back(words[i - 2].text, words[i].text);
        }
        break;
      case Section::ops: {
        if (head != "unary" && head != "binary") fail("expected 'unary' or 'binary'", words[0].column);
        auto colon = line.find(':');
        if (words.size() < 2 || colon == std::string_view::npos) fail("expected '<kind> <name>: ...'", words[0].column);
        std::string op = std::string(split_words(line.substr(0, colon))[1].text);
        const std::size_t n = elements.size();
        std::vector<Element> table(head == "unary" ? n : n * n, n);
        std::size_t start = colon + 1;
        while (start <= line.size()) {
          std::size_t comma = line.find(',', start);
          std::string_view entry = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
          auto ew = split_words(entry);
          for (auto& w : ew) w.column += start;
          std::size_t want = head == "unary" ? 3 : 4;
          if (ew.size() != want || ew[want - 2].text != "->")
            fail(head == "unary" ? "expected 'a -> b'" : "expected 'a b -> c'", start + 1);
          for (std::size_t k = 0; k < want; ++k)
            if (k != want - 2) known(ew[k]);
          auto idx = [&](const Word& w) {
            return static_cast<Element>(std::find(elements.begin(), elements.end(), w.text) - elements.begin());
          };
          std::size_t slot = head == "unary" ? idx(ew[0]) : idx(ew[0]) * n + idx(ew[1]);
          table[slot] = idx(ew[want - 1]);
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
        for (std::size_t s = 0; s < table.size(); ++s)
          if (table[s] == n) {
            std::string arg = head == "unary" ? elements[s] : elements[s / n] + " " + elements[s % n];
            fail("operation '" + op + "' is not total: missing entry for " + arg, words[0].column);
          }
        if (head == "unary") unary_ops.push_back({op, table});
        else binary_ops.push_back({op, n, table});
        break;
      }
      case Section::universe:
        if (universe) fail("universe declared twice", words[0].column);
        if (head == "atoms") {
          std::vector<std::string> atoms;
          for (std::size_t i = 1; i < words.size(); ++i) atoms.push_back(words[i].text);
          if (atoms.empty()) fail("empty atom list", words[0].column);
          std::set<std::string> uniq(atoms.begin(), atoms.end());
          if (uniq.size() != atoms.size()) fail("duplicate atom", words[0].column);
          universe = ConcreteUniverse::atoms(atoms);
        } else if (head == "integers") {
          std::vector<Axis> axes;
          for (std::size_t i = 1; i < words.size(); ++i) {
            if (i % 2 == 0) {
              if (words[i].text != "x") fail("expected 'x' between axes", words[i].column);
              continue;
            }
            const auto& t = words[i].text;
            auto dots = t.find("..");
            std::optional<int> lo, hi;
            if (dots != std::string::npos) {
              lo = to_int(std::string_view(t).substr(0, dots));
              hi = to_int(std::string_view(t).substr(dots + 2));
            }
            if (!lo || !hi || *hi < *lo) fail("expected an axis 'lo..hi'", words[i].column);
            axes.push_back({*lo, *hi});
          }
          if (axes.empty() || words.size() % 2 != 0) fail("expected 'integers lo..hi [x lo..hi ...]'", words[0].column);
          universe = ConcreteUniverse::tuples(axes);
        } else {
          fail("expected 'atoms' or 'integers'", words[0].column);
        }
        break;
      case Section::gamma: {
        if (words.size() < 3 || words[1].text != "=") fail("expected '<element> = <set>'", words[0].column);
        known(words[0]);
        std::size_t off = words[2].column - 1;
        gamma_lines.push_back({head, std::string(line.substr(off)), lineno, words[2].column});
        break;
      }
      case Section::axioms: axiom_lines.emplace_back(std::string(line), lineno); break;
    }
  }

  lineno = lineno + 1;
  if (elements.empty()) fail("no ELEMENTS declared", 1);
  if (!universe) fail("no UNIVERSE declared", 1);
  FiniteLattice lattice = FiniteLattice::build(elements, order, mode);
  for (auto& op : unary_ops) lattice.add_unary_op(std::move(op));
  for (auto& op : binary_ops) lattice.add_binary_op(std::move(op));

  std::vector<std::optional<ConcreteSet>> gamma(elements.size());
  for (const auto& g : gamma_lines) {
    Element e = lattice.index(g.element);
    if (gamma[e]) throw ParseError("gamma of '" + g.element + "' given twice", g.line, 1);
    gamma[e] = SetParser(*universe, g.expr, g.line, g.column).parse();
  }
  std::vector<ConcreteSet> table;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    if (!gamma[e]) fail("no gamma entry for '" + elements[e] + "'", 1);
    table.push_back(*gamma[e]);
  }
  std::vector<Sequent> axioms;
  for (const auto& [text, line] : axiom_lines) axioms.push_back(parse_sequent(text, line));
  return Abstraction(name, std::move(lattice), std::move(*universe), std::move(table), std::move(axioms));
}

Abstraction load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path.stem().string());
}

std::string write_spec(const Abstraction& abs) {
  const auto& lat = abs.lattice();
  const auto& u = abs.universe();
  std::ostringstream out;
  out << "name " << abs.name() << "\n\nELEMENTS\n ";
  for (const auto& n : lat.names()) out << ' ' << n;
  out << "\n\nORDER\n";
  for (auto [a, b] : lat.hasse_edges()) out << "  " << lat.name(a) << " < " << lat.name(b) << '\n';
  if (!lat.unary_ops().empty() || !lat.binary_ops().empty()) {
    out << "\nOPS\n";
    for (const auto& [name, op] : lat.unary_ops()) {
      out << "  unary " << name << ':';
      for (Element a = 0; a < lat.size(); ++a)
        out << (a ? ", " : " ") << lat.name(a) << " -> " << lat.name(op(a));
      out << '\n';
    }
    for (const auto& [name, op] : lat.binary_ops()) {
      out << "  binary " << name << ':';
      bool first = true;
      for (Element a = 0; a < lat.size(); ++a)
        for (Element b = 0; b < lat.size(); ++b) {
          out << (first ? " " : ", ") << lat.name(a) << ' ' << lat.name(b) << " -> " << lat.name(op(a, b));
          first = false;
        }
      out << '\n';
    }
  }
  out << "\nUNIVERSE\n  ";
  if (u.kind() == ConcreteUniverse::Kind::atoms) {
    out << "atoms";
    for (const auto& a : u.atom_names()) out << ' ' << a;
  } else {
    out << "integers ";
    for (std::size_t k = 0; k < u.axes().size(); ++k)
      out << (k ? " x " : "") << u.axes()[k].lo << ".." << u.axes()[k].hi;
  }
  out << "\n\nGAMMA\n";
  for (Element a = 0; a < lat.size(); ++a) {
    const auto& g = abs.gamma(a);
    out << "  " << lat.name(a) << " = " << (g.all() ? std::string("all") : set_text(u, g)) << '\n';
  }
  if (!abs.extra_axioms().empty()) {
    out << "\nAXIOMS\n";
    for (const auto& s : abs.extra_axioms()) out << "  " << to_text(s, abs.variables()) << '\n';
  }
  return out.str();
}

}  // namespace abslog
