#include "abslog/lattice.hpp"

#include <algorithm>
#include <functional>

#include "abslog/error.hpp"

namespace abslog {

namespace {

std::string pair_text(const std::vector<std::string>& names, Element a, Element b) {
  return "(" + names[a] + ", " + names[b] + ")";
}

}  // namespace

FiniteLattice FiniteLattice::build(std::vector<std::string> elements,
                                   const std::vector<std::pair<std::string, std::string>>& order_pairs,
                                   ClosureMode mode) {
  if (elements.empty()) throw NotALattice("lattice has no elements");
  const std::size_t n = elements.size();
  std::unordered_map<std::string, Element> idx;
  for (Element i = 0; i < n; ++i) {
    if (!idx.emplace(elements[i], i).second) throw NotAPartialOrder("duplicate element '" + elements[i] + "'");
  }
  std::vector<char> order(n * n, 0);
  for (Element i = 0; i < n; ++i) order[i * n + i] = 1;
  for (const auto& [a, b] : order_pairs) {
    auto ia = idx.find(a);
    auto ib = idx.find(b);
    if (ia == idx.end()) throw UnknownElement("unknown element '" + a + "'");
    if (ib == idx.end()) throw UnknownElement("unknown element '" + b + "'");
    order[ia->second * n + ib->second] = 1;
  }
  if (mode == ClosureMode::hasse) {
    for (Element k = 0; k < n; ++k)
      for (Element i = 0; i < n; ++i)
        if (order[i * n + k])
          for (Element j = 0; j < n; ++j)
            if (order[k * n + j]) order[i * n + j] = 1;
  }
  return from_order(std::move(elements), std::move(order));
}

FiniteLattice FiniteLattice::from_order(std::vector<std::string> elements, std::vector<char> order) {
  FiniteLattice L;
  const std::size_t n = elements.size();
  if (n == 0) throw NotALattice("lattice has no elements");
  if (order.size() != n * n) throw NotAPartialOrder("order relation has wrong dimensions");
  L.names_ = std::move(elements);
  for (Element i = 0; i < n; ++i) {
    if (!L.index_.emplace(L.names_[i], i).second)
      throw NotAPartialOrder("duplicate element '" + L.names_[i] + "'");
  }
  L.order_ = std::move(order);
  const auto& names = L.names_;

  for (Element a = 0; a < n; ++a) {
    if (!L.leq(a, a)) throw NotAPartialOrder("reflexivity violated at " + names[a]);
    for (Element b = a + 1; b < n; ++b)
      if (L.leq(a, b) && L.leq(b, a))
        throw NotAPartialOrder("antisymmetry violated by " + pair_text(names, a, b));
  }
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (L.leq(a, b))
        for (Element c = 0; c < n; ++c)
          if (L.leq(b, c) && !L.leq(a, c))
            throw NotAPartialOrder("transitivity violated by " + names[a] + " <= " + names[b] + " <= " +
                                   names[c]);

  // Principal down/up-set sizes: the glb of a set of lower bounds is its member
  // with the largest down-set, if any member dominates the rest.
  std::vector<std::size_t> down(n, 0), up(n, 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (L.leq(a, b)) {
        ++down[b];
        ++up[a];
      }

  auto extremum = [&](Element a, Element b, bool lower) -> std::optional<Element> {
    std::vector<Element> bounds;
    for (Element c = 0; c < n; ++c) {
      bool ok = lower ? (L.leq(c, a) && L.leq(c, b)) : (L.leq(a, c) && L.leq(b, c));
      if (ok) bounds.push_back(c);
    }
    if (bounds.empty()) return std::nullopt;
    Element best = bounds.front();
    for (Element c : bounds)
      if ((lower ? down[c] : up[c]) > (lower ? down[best] : up[best])) best = c;
    for (Element c : bounds)
      if (lower ? !L.leq(c, best) : !L.leq(best, c)) return std::nullopt;
    return best;
  };

  L.meet_.assign(n * n, 0);
  L.join_.assign(n * n, 0);
  for (Element a = 0; a < n; ++a) {
    for (Element b = a; b < n; ++b) {
      auto m = extremum(a, b, true);
      if (!m) throw NotALattice("no greatest lower bound for " + pair_text(names, a, b));
      auto j = extremum(a, b, false);
      if (!j) throw NotALattice("no least upper bound for " + pair_text(names, a, b));
      L.meet_[a * n + b] = L.meet_[b * n + a] = *m;
      L.join_[a * n + b] = L.join_[b * n + a] = *j;
    }
  }
  // With all binary meets/joins present, the carrier's fold gives bottom/top.
  Element bot = 0, top = 0;
  for (Element a = 1; a < n; ++a) {
    bot = L.meet(bot, a);
    top = L.join(top, a);
  }
  L.bottom_ = bot;
  L.top_ = top;

  L.distributive_ = true;
  for (Element a = 0; a < n && L.distributive_; ++a)
    for (Element b = 0; b < n && L.distributive_; ++b)
      for (Element c = 0; c < n; ++c)
        if (L.meet(a, L.join(b, c)) != L.join(L.meet(a, b), L.meet(a, c))) {
          L.distributive_ = false;
          break;
        }
  return L;
}

Element FiniteLattice::index(std::string_view name) const {
  auto found = find(name);
  if (!found) throw UnknownElement("unknown element '" + std::string(name) + "'");
  return *found;
}

std::optional<Element> FiniteLattice::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FiniteLattice::check_element(Element a) const {
  if (a >= size()) throw UnknownElement("element index " + std::to_string(a) + " out of range");
}

void FiniteLattice::require_distributive(const char* op) const {
  if (!distributive_) throw NotDistributive(std::string(op) + " requires a distributive lattice");
}

Element FiniteLattice::heyting_implication(Element a, Element b) const {
  require_distributive("heyting_implication");
  check_element(a);
  check_element(b);
  // In a finite distributive lattice the join of all admissible c is admissible.
  Element result = bottom_;
  for (Element c = 0; c < size(); ++c)
    if (leq(meet(a, c), b)) result = join(result, c);
  return result;
}

Element FiniteLattice::co_implication(Element a, Element b) const {
  require_distributive("co_implication");
  check_element(a);
  check_element(b);
  Element result = top_;
  for (Element c = 0; c < size(); ++c)
    if (leq(a, join(b, c))) result = meet(result, c);
  return result;
}

bool FiniteLattice::is_meet_irreducible(Element a) const {
  check_element(a);
  if (a == top_) return false;
  for (Element b = 0; b < size(); ++b) {
    if (b == a || !leq(a, b)) continue;
    for (Element c = b + 1; c < size(); ++c)
      if (c != a && leq(a, c) && meet(b, c) == a) return false;
  }
  return true;
}

bool FiniteLattice::is_join_irreducible(Element a) const {
  check_element(a);
  if (a == bottom_) return false;
  for (Element b = 0; b < size(); ++b) {
    if (b == a || !leq(b, a)) continue;
    for (Element c = b + 1; c < size(); ++c)
      if (c != a && leq(c, a) && join(b, c) == a) return false;
  }
  return true;
}

std::vector<std::pair<Element, Element>> FiniteLattice::hasse_edges() const {
  std::vector<std::pair<Element, Element>> edges;
  const std::size_t n = size();
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      if (a == b || !leq(a, b)) continue;
      bool covers = true;
      for (Element c = 0; c < n && covers; ++c)
        if (c != a && c != b && leq(a, c) && leq(c, b)) covers = false;
      if (covers) edges.emplace_back(a, b);
    }
  return edges;
}

bool FiniteLattice::is_involution(const UnaryOpTable& op) const {
  if (op.table.size() != size()) return false;
  for (Element a = 0; a < size(); ++a)
    if (op.table[a] >= size() || op.table[op.table[a]] != a) return false;
  return true;
}

bool FiniteLattice::is_order_reversing(const UnaryOpTable& op) const {
  if (op.table.size() != size()) return false;
  for (Element a = 0; a < size(); ++a)
    for (Element b = 0; b < size(); ++b)
      if (leq(a, b) && !leq(op.table[b], op.table[a])) return false;
  return true;
}

std::vector<UnaryOpTable> FiniteLattice::find_order_reversing_involutions(std::size_t carrier_bound) const {
  const std::size_t n = size();
  if (n > carrier_bound) throw CarrierTooLarge("involution enumeration", n, carrier_bound);
  constexpr Element unset = static_cast<Element>(-1);
  std::vector<Element> map(n, unset);
  std::vector<UnaryOpTable> found;

  // Checks order reversal between `a` and every already-assigned element.
  auto consistent = [&](Element a) {
    for (Element b = 0; b < n; ++b) {
      if (map[b] == unset) continue;
      if (leq(a, b) && !leq(map[b], map[a])) return false;
      if (leq(b, a) && !leq(map[a], map[b])) return false;
    }
    return true;
  };

  std::function<void(Element)> extend = [&](Element a) {
    while (a < n && map[a] != unset) ++a;
    if (a == n) {
      found.push_back(UnaryOpTable{"involution" + std::to_string(found.size()), map});
      return;
    }
    for (Element b = 0; b < n; ++b) {
      if (map[b] != unset && b != a) continue;
      map[a] = b;
      map[b] = a;
      if (consistent(a) && consistent(b)) extend(a + 1);
      map[a] = unset;
      map[b] = unset;
    }
  };
  extend(0);
  return found;
}

void FiniteLattice::add_unary_op(UnaryOpTable op) {
  if (op.table.size() != size()) throw UnknownOperation("operation '" + op.name + "' is not total");
  for (Element v : op.table) check_element(v);
  std::string key = op.name;
  unary_ops_.insert_or_assign(std::move(key), std::move(op));
}

void FiniteLattice::add_binary_op(BinaryOpTable op) {
  op.arity_size = size();
  if (op.table.size() != size() * size()) throw UnknownOperation("operation '" + op.name + "' is not total");
  for (Element v : op.table) check_element(v);
  std::string key = op.name;
  binary_ops_.insert_or_assign(std::move(key), std::move(op));
}

const UnaryOpTable* FiniteLattice::unary_op(std::string_view name) const {
  auto it = unary_ops_.find(name);
  return it == unary_ops_.end() ? nullptr : &it->second;
}

const BinaryOpTable* FiniteLattice::binary_op(std::string_view name) const {
  auto it = binary_ops_.find(name);
  return it == binary_ops_.end() ? nullptr : &it->second;
}

}  // namespace abslog
