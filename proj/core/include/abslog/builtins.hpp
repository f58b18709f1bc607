#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "abslog/concrete.hpp"

namespace abslog {

/// parity, sign, interval, diamond, chain3, m3, octagon.
std::vector<std::string> builtin_names();

/// Spec document of a built-in abstraction (octagon is the C=1, N=4 export).
std::string builtin_spec(std::string_view name);
std::shared_ptr<const Abstraction> builtin(std::string_view name);

}  // namespace abslog
