#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "abslog/builtins.hpp"
#include "abslog/error.hpp"
#include "abslog/specfile.hpp"

#ifndef ABSLOG_SPEC_DIR
#error "ABSLOG_SPEC_DIR must point at the shipped spec files"
#endif

using namespace abslog;

namespace {

std::pair<std::size_t, std::size_t> parse_error_at(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

bool same_abstraction(const Abstraction& a, const Abstraction& b) {
  if (a.name() != b.name() || a.lattice().names() != b.lattice().names()) return false;
  if (!(a.universe() == b.universe()) || a.gamma_table() != b.gamma_table()) return false;
  if (a.extra_axioms() != b.extra_axioms()) return false;
  const auto n = a.lattice().size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (a.lattice().leq(x, y) != b.lattice().leq(x, y)) return false;
  return a.lattice().unary_ops() == b.lattice().unary_ops() && a.lattice().binary_ops() == b.lattice().binary_ops();
}

}  // namespace

TEST_CASE("parse a small document") {
  auto abs = parse_spec(R"(name demo
ELEMENTS
  bot Even Odd top   # comment
ORDER
  bot < Even < top
  bot < Odd < top
OPS
  unary not: bot -> top, Even -> Odd, Odd -> Even, top -> bot
UNIVERSE
  integers -2..2
GAMMA
  bot = {}
  Even = evens
  Odd = union(odds, {1})
  top = all
AXIOMS
  Even(x), Odd(x) |- ff
)");
  CHECK(abs.name() == "demo");
  CHECK(abs.lattice().size() == 4);
  CHECK(abs.gamma(1).count() == 3);
  CHECK(abs.gamma(2).count() == 2);
  REQUIRE(abs.lattice().unary_op("not"));
  CHECK(abs.extra_axioms().size() == 1);

  auto tup = parse_spec(
      "ELEMENTS\n bot top\nORDER\n bot < top\nUNIVERSE\n integers 0..1 x 0..2\nGAMMA\n bot = {(0,1)}\n top = all\n",
      "t");
  CHECK(tup.name() == "t");
  CHECK(tup.universe().size() == 6);
  CHECK(tup.gamma(0).count() == 1);
}

TEST_CASE("positioned parse errors") {
  CHECK(parse_error_at("ELEMENTS\n a b\nORDER\n a < \n") == std::pair<std::size_t, std::size_t>{4, 2});
  CHECK(parse_error_at("BOGUS\n").first == 1);
  CHECK(parse_error_at("ELEMENTS\n a\nUNIVERSE\n integers 0..x\n").first == 4);
  CHECK(parse_error_at("ELEMENTS\n a\nUNIVERSE\n atoms p\nGAMMA\n a = range(1\n").first == 6);
  CHECK(parse_error_at("ELEMENTS\n a b\nORDER\n a < c\n") == std::pair<std::size_t, std::size_t>{4, 6});
  CHECK_THROWS_AS(parse_spec("ELEMENTS\n a b\nORDER\n a < b\n b < a\nUNIVERSE\n atoms p\nGAMMA\n a = all\n b = all\n"),
                  NotAPartialOrder);
}

TEST_CASE("write/parse round trip for every builtin") {
  for (const auto& name : builtin_names()) {
    auto abs = builtin(name);
    auto text = write_spec(*abs);
    auto back = parse_spec(text);
    CHECK(same_abstraction(*abs, back));
    CHECK(write_spec(back) == text);
  }
  CHECK_THROWS_AS(builtin("nope"), UnknownSymbol);
}

TEST_CASE("shipped spec files match the embedded builtins") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ABSLOG_SPEC_DIR)) {
    if (entry.path().extension() != ".spec") continue;
    ++seen;
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == builtin_spec(entry.path().stem().string()));
    CHECK(same_abstraction(load_spec(entry.path()), *builtin(entry.path().stem().string())));
  }
  CHECK(seen == builtin_names().size());
}
