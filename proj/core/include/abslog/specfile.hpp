#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "abslog/concrete.hpp"

namespace abslog {

/**
 * Line-oriented abstraction spec documents.
 *
 *     name parity
 *     ELEMENTS
 *       bot Even Odd top
 *     ORDER                      # covering edges; "ORDER full" takes pairs as given
 *       bot < Even < top
 *       bot < Odd < top
 *     OPS
 *       unary not: bot -> top, Even -> Odd, Odd -> Even, top -> bot
 *     UNIVERSE
 *       integers -8..8           # or: integers -4..4 x -4..4 / atoms a b c
 *     GAMMA
 *       bot = {}
 *       Even = evens
 *       Odd = union(odds)
 *       top = all
 *     AXIOMS
 *       Even(x), Odd(x) |- ff
 *
 * Parse errors carry line and column; lattice and gamma validation errors
 * are raised by the underlying constructors.
 */
Abstraction parse_spec(std::string_view text, std::string default_name = "spec");
Abstraction load_spec(const std::filesystem::path& path);

/// Canonical document for `abs`; parse_spec(write_spec(abs)) reproduces it.
std::string write_spec(const Abstraction& abs);

}  // namespace abslog
