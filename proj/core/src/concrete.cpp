#include "abslog/concrete.hpp"

#include <algorithm>
#include <set>

#include "abslog/error.hpp"

namespace abslog {

ConcreteUniverse ConcreteUniverse::atoms(std::vector<std::string> names) {
  if (names.empty()) throw Error("universe must be nonempty");
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size()) throw Error("universe atoms must be distinct");
  ConcreteUniverse u;
  u.kind_ = Kind::atoms;
  u.size_ = names.size();
  u.atoms_ = std::move(names);
  return u;
}

ConcreteUniverse ConcreteUniverse::window(int lo, int hi) { return tuples({Axis{lo, hi}}); }

ConcreteUniverse ConcreteUniverse::tuples(std::vector<Axis> axes) {
  if (axes.empty()) throw Error("integer universe needs at least one axis");
  std::size_t size = 1;
  for (const Axis& a : axes) {
    if (a.hi < a.lo) throw Error("empty axis [" + std::to_string(a.lo) + "," + std::to_string(a.hi) + "]");
    size *= a.size();
  }
  ConcreteUniverse u;
  u.kind_ = Kind::integers;
  u.axes_ = std::move(axes);
  u.size_ = size;
  return u;
}

std::vector<int> ConcreteUniverse::coords(std::size_t point) const {
  std::vector<int> out(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    out[k] = axes_[k].lo + static_cast<int>(point % axes_[k].size());
    point /= axes_[k].size();
  }
  return out;
}

std::optional<std::size_t> ConcreteUniverse::find_point(const std::vector<int>& c) const {
  if (kind_ != Kind::integers || c.size() != axes_.size()) return std::nullopt;
  std::size_t idx = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    if (c[k] < axes_[k].lo || c[k] > axes_[k].hi) return std::nullopt;
    idx = idx * axes_[k].size() + static_cast<std::size_t>(c[k] - axes_[k].lo);
  }
  return idx;
}

std::optional<std::size_t> ConcreteUniverse::find_atom(std::string_view name) const {
  auto it = std::find(atoms_.begin(), atoms_.end(), name);
  if (it == atoms_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::string ConcreteUniverse::point_text(std::size_t point) const {
  if (kind_ == Kind::atoms) return atoms_.at(point);
  auto c = coords(point);
  if (c.size() == 1) return std::to_string(c[0]);
  std::string out = "(";
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(c[k]);
  }
  return out + ")";
}

ConcreteSet ConcreteUniverse::filter(const std::function<bool(std::size_t)>& pred) const {
  ConcreteSet s(size_);
  for (std::size_t p = 0; p < size_; ++p)
    if (pred(p)) s.set(p);
  return s;
}

std::string set_text(const ConcreteUniverse& u, const ConcreteSet& s) {
  std::string out = "{";
  bool first = true;
  for (auto p = s.find_first(); p != ConcreteSet::npos; p = s.find_next(p)) {
    if (!first) out += ", ";
    first = false;
    out += u.point_text(p);
  }
  return out + "}";
}

ConcreteSet concrete_op(const ConcreteUniverse& universe, std::string_view op_name,
                        const std::vector<ConcreteSet>& args) {
  auto need = [&](std::size_t k) {
    if (args.size() != k)
      throw UnknownOperation("operation '" + std::string(op_name) + "' expects " + std::to_string(k) + " arguments");
    for (const auto& a : args)
      if (a.size() != universe.size()) throw Error("argument is not over the given universe");
  };
  if (op_name == "empty") return need(0), universe.empty_set();
  if (op_name == "full") return need(0), universe.full_set();
  if (op_name == "complement") return need(1), ~args[0];
  if (op_name == "intersection") return need(2), args[0] & args[1];
  if (op_name == "union") return need(2), args[0] | args[1];
  if (op_name == "implication") return need(2), ~args[0] | args[1];
  if (op_name == "co_implication") return need(2), args[0] - args[1];
  throw UnknownOperation("unknown concrete operation '" + std::string(op_name) + "'");
}

Abstraction::Abstraction(std::string name, FiniteLattice lattice, ConcreteUniverse universe,
                         std::vector<ConcreteSet> gamma, std::vector<Sequent> extra_axioms)
    : name_(std::move(name)),
      lattice_(std::move(lattice)),
      universe_(std::move(universe)),
      gamma_(std::move(gamma)),
      extra_axioms_(std::move(extra_axioms)) {
  const std::size_t n = lattice_.size();
  if (gamma_.size() != n) throw NotMonotone("concretization is not total over the lattice");
  for (const auto& s : gamma_)
    if (s.size() != universe_.size()) throw NotMonotone("concretization image is not over the universe");
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      if (lattice_.leq(a, b) && !gamma_[a].is_subset_of(gamma_[b]))
        throw NotMonotone("concretization not monotone: " + lattice_.name(a) + " <= " + lattice_.name(b) +
                          " but gamma(" + lattice_.name(a) + ") is not included in gamma(" + lattice_.name(b) + ")");

  auto idx = [](Connective c) { return static_cast<std::size_t>(c); };
  tables_[idx(Connective::tt)] = {lattice_.top()};
  tables_[idx(Connective::ff)] = {lattice_.bottom()};
  auto& meet = tables_[idx(Connective::and_)];
  auto& join = tables_[idx(Connective::or_)];
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) {
      meet.push_back(lattice_.meet(a, b));
      join.push_back(lattice_.join(a, b));
    }
  if (const auto* neg = lattice_.unary_op("not")) {
    tables_[idx(Connective::not_)] = neg->table;
  } else if (lattice_.is_distributive()) {
    for (Element a = 0; a < n; ++a)
      tables_[idx(Connective::not_)].push_back(lattice_.heyting_implication(a, lattice_.bottom()));
  }
  auto binary = [&](Connective c, const char* declared, auto&& derived) {
    if (const auto* op = lattice_.binary_op(declared)) {
      tables_[idx(c)] = op->table;
    } else if (lattice_.is_distributive()) {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) tables_[idx(c)].push_back(derived(a, b));
    }
  };
  binary(Connective::impl, "impl", [&](Element a, Element b) { return lattice_.heyting_implication(a, b); });
  binary(Connective::coimpl, "coimpl", [&](Element a, Element b) { return lattice_.co_implication(a, b); });
}

std::string Abstraction::variables() const {
  if (universe_.kind() == ConcreteUniverse::Kind::atoms || universe_.dimension() == 1) return "x";
  if (universe_.dimension() == 2) return "x,y";
  std::string out;
  for (std::size_t k = 1; k <= universe_.dimension(); ++k) {
    if (k > 1) out += ',';
    out += "x" + std::to_string(k);
  }
  return out;
}

bool Abstraction::has_table(Connective c) const { return !tables_[static_cast<std::size_t>(c)].empty(); }

Element Abstraction::apply(Connective c) const {
  if (arity(c) != 0 || !has_table(c)) throw UnknownOperation("no nullary table for " + std::string(connective_name(c)));
  return tables_[static_cast<std::size_t>(c)][0];
}

Element Abstraction::apply(Connective c, Element a) const {
  if (arity(c) != 1 || !has_table(c)) throw UnknownOperation("no unary table for " + std::string(connective_name(c)));
  return tables_[static_cast<std::size_t>(c)].at(a);
}

Element Abstraction::apply(Connective c, Element a, Element b) const {
  if (arity(c) != 2 || !has_table(c)) throw UnknownOperation("no binary table for " + std::string(connective_name(c)));
  return tables_[static_cast<std::size_t>(c)].at(a * lattice_.size() + b);
}

ConcreteSet Abstraction::concrete(Connective c, const ConcreteSet* a, const ConcreteSet* b) const {
  switch (c) {
    case Connective::tt: return universe_.full_set();
    case Connective::ff: return universe_.empty_set();
    case Connective::not_: return ~*a;
    case Connective::and_: return *a & *b;
    case Connective::or_: return *a | *b;
    case Connective::impl: return ~*a | *b;
    case Connective::coimpl: return *a - *b;
  }
  throw UnknownOperation("unknown connective");
}

EmbeddingResult check_order_embedding(const Abstraction& abs) {
  const auto& L = abs.lattice();
  for (Element a = 0; a < L.size(); ++a)
    for (Element b = 0; b < L.size(); ++b)
      if (!L.leq(a, b) && abs.gamma(a).is_subset_of(abs.gamma(b))) return {false, std::make_pair(a, b)};
  return {};
}

bool preservation_holds_at(const Abstraction& abs, Connective c, const std::vector<Element>& args) {
  switch (arity(c)) {
    case 0: return abs.gamma(abs.apply(c)) == abs.concrete(c);
    case 1: return abs.gamma(abs.apply(c, args.at(0))) == abs.concrete(c, &abs.gamma(args.at(0)));
    default:
      return abs.gamma(abs.apply(c, args.at(0), args.at(1))) ==
             abs.concrete(c, &abs.gamma(args.at(0)), &abs.gamma(args.at(1)));
  }
}

PreservationReport preservation_report(const Abstraction& abs) {
  PreservationReport report;
  const std::size_t n = abs.lattice().size();
  for (Connective c : kAllConnectives) {
    auto& entry = report.entries[static_cast<std::size_t>(c)];
    entry.connective = c;
    if (!abs.has_table(c)) {
      entry.status = PreservationEntry::Status::unavailable;
      continue;
    }
    entry.status = PreservationEntry::Status::preserved;
    std::vector<std::vector<Element>> inputs;
    if (arity(c) == 0) inputs.push_back({});
    if (arity(c) == 1)
      for (Element a = 0; a < n; ++a) inputs.push_back({a});
    if (arity(c) == 2)
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) inputs.push_back({a, b});
    for (const auto& args : inputs) {
      if (!preservation_holds_at(abs, c, args)) {
        entry.status = PreservationEntry::Status::not_preserved;
        entry.witness = args;
        break;
      }
    }
  }
  return report;
}

Element LeftAdjoint::operator()(const ConcreteSet& s) const {
  const auto& L = abs_->lattice();
  Element m = L.top();
  for (Element a = 0; a < L.size(); ++a)
    if (s.is_subset_of(abs_->gamma(a))) m = L.meet(m, a);
  return m;
}

AdjointResult compute_left_adjoint(std::shared_ptr<const Abstraction> abs, std::size_t closure_bound) {
  const auto& L = abs->lattice();
  // Every upper set {a : S within gamma(a)} is determined by the least member
  // of the intersection closure containing S, so checking the closure suffices.
  std::set<ConcreteSet> closure;
  std::vector<ConcreteSet> frontier;
  auto add = [&](ConcreteSet s) {
    if (closure.insert(s).second) frontier.push_back(std::move(s));
  };
  add(abs->universe().full_set());
  for (Element a = 0; a < L.size(); ++a) add(abs->gamma(a));

  auto check = [&](const ConcreteSet& s) {
    bool any = false;
    Element m = L.top();
    for (Element a = 0; a < L.size(); ++a)
      if (s.is_subset_of(abs->gamma(a))) {
        any = true;
        m = L.meet(m, a);
      }
    return any && s.is_subset_of(abs->gamma(m));
  };

  AdjointResult result;
  while (!frontier.empty()) {
    ConcreteSet s = std::move(frontier.back());
    frontier.pop_back();
    if (!check(s)) {
      result.status = AdjointResult::Status::absent;
      result.witness = s;
      return result;
    }
    for (Element a = 0; a < L.size(); ++a) add(s & abs->gamma(a));
    if (closure.size() > closure_bound) return result;
  }
  result.status = AdjointResult::Status::total;
  result.alpha.emplace(std::move(abs));
  return result;
}

}  // namespace abslog
