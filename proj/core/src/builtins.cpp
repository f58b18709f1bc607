#include "abslog/builtins.hpp"

#include "abslog/error.hpp"
#include "abslog/specfile.hpp"
#include "builtin_specs.hpp"

namespace abslog {

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::kBuiltinSpecs) out.emplace_back(name);
  return out;
}

std::string builtin_spec(std::string_view name) {
  for (const auto& [n, text] : detail::kBuiltinSpecs)
    if (n == name) return std::string(text);
  throw UnknownSymbol("no built-in abstraction named '" + std::string(name) + "'");
}

std::shared_ptr<const Abstraction> builtin(std::string_view name) {
  return std::make_shared<const Abstraction>(parse_spec(builtin_spec(name), std::string(name)));
}

}  // namespace abslog
