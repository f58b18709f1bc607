#include "abslog/cartesian.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "abslog/error.hpp"

namespace abslog::cartesian {

namespace {

void require_integers(const ConcreteUniverse& u, const std::string& what) {
  if (u.kind() != ConcreteUniverse::Kind::integers) throw Error(what + " needs an integer universe");
}

std::string rect_text(const std::vector<ConcreteUniverse>& axes, const Rectangle& r) {
  std::string out = "(";
  for (std::size_t k = 0; k < r.size(); ++k) out += (k ? ", " : "") + set_text(axes[k], r[k]);
  return out + ")";
}

ConcreteSet random_set(std::size_t size, std::mt19937_64& rng) {
  ConcreteSet s(size);
  // Mix sparse and dense sets so both sides of each law are exercised.
  double density = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  density = density * density;
  std::bernoulli_distribution bit(density);
  for (std::size_t i = 0; i < size; ++i)
    if (bit(rng)) s.set(i);
  return s;
}

Rectangle random_rect(const std::vector<ConcreteUniverse>& axes, std::mt19937_64& rng) {
  Rectangle r;
  for (const auto& a : axes) r.push_back(random_set(a.size(), rng));
  return r;
}

bool small_plane(const std::vector<ConcreteUniverse>& axes) {
  return axes.size() == 2 && axes[0].size() <= 5 && axes[1].size() <= 5;
}

}  // namespace

std::vector<ConcreteUniverse> axis_universes(const ConcreteUniverse& tuples) {
  require_integers(tuples, "rectangles");
  std::vector<ConcreteUniverse> out;
  for (const auto& a : tuples.axes()) out.push_back(ConcreteUniverse::window(a.lo, a.hi));
  return out;
}

ConcreteSet iota(const ConcreteUniverse& tuples, const Rectangle& rect) {
  require_integers(tuples, "iota");
  const auto& axes = tuples.axes();
  if (rect.size() != axes.size()) throw Error("rectangle dimension does not match the universe");
  return tuples.filter([&](std::size_t p) {
    auto c = tuples.coords(p);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!rect[k].test(static_cast<std::size_t>(c[k] - axes[k].lo))) return false;
    return true;
  });
}

Rectangle rectangle_closure(const ConcreteUniverse& tuples, const ConcreteSet& r) {
  require_integers(tuples, "rectangle closure");
  const auto& axes = tuples.axes();
  Rectangle out;
  for (const auto& a : axes) out.emplace_back(a.size());
  for (auto p = r.find_first(); p != ConcreteSet::npos; p = r.find_next(p)) {
    auto c = tuples.coords(p);
    for (std::size_t k = 0; k < c.size(); ++k) out[k].set(static_cast<std::size_t>(c[k] - axes[k].lo));
  }
  return out;
}

bool rect_leq(const Rectangle& a, const Rectangle& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!a[k].is_subset_of(b[k])) return false;
  return true;
}

Rectangle rect_meet(const Rectangle& a, const Rectangle& b) {
  Rectangle out;
  for (std::size_t k = 0; k < a.size(); ++k) out.push_back(a[k] & b[k]);
  return out;
}

bool has_empty_axis(const Rectangle& r) {
  return std::any_of(r.begin(), r.end(), [](const ConcreteSet& s) { return s.none(); });
}

std::vector<Rectangle> all_rectangles(const ConcreteUniverse& tuples) {
  auto axes = axis_universes(tuples);
  std::size_t bits = 0;
  for (const auto& a : axes) bits += a.size();
  if (bits > 20) throw CarrierTooLarge("rectangle enumeration (total axis points)", bits, 20);
  std::vector<Rectangle> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    Rectangle r;
    std::size_t shift = 0;
    for (const auto& a : axes) {
      ConcreteSet s(a.size(), (code >> shift) & ((std::uint64_t{1} << a.size()) - 1));
      shift += a.size();
      r.push_back(std::move(s));
    }
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult check_galois(const ConcreteUniverse& tuples, std::size_t samples, std::uint64_t seed) {
  auto axes = axis_universes(tuples);
  CheckResult res;
  if (small_plane(axes)) {
    res.exhaustive = true;
    const std::size_t rows = axes[0].size(), cols = axes[1].size(), n = rows * cols;
    // Bitmask mirrors of iota and closure, cross-checked against the set versions first.
    auto closure_mask = [&](std::uint32_t r) {
      std::uint32_t px = 0, py = 0;
      for (std::size_t i = 0; i < rows; ++i) {
        std::uint32_t row = (r >> (i * cols)) & ((1u << cols) - 1);
        if (row) px |= 1u << i;
        py |= row;
      }
      return std::pair{px, py};
    };
    auto iota_mask = [&](std::uint32_t px, std::uint32_t py) {
      std::uint32_t out = 0;
      for (std::size_t i = 0; i < rows; ++i)
        if (px >> i & 1) out |= py << (i * cols);
      return out;
    };
    auto to_mask = [](const ConcreteSet& s) { return static_cast<std::uint32_t>(s.to_ulong()); };
    const auto rects = all_rectangles(tuples);
    for (const auto& x : rects) {
      std::uint32_t img = to_mask(iota(tuples, x));
      if (img != iota_mask(to_mask(x[0]), to_mask(x[1]))) {
        res.holds = false;
        res.witness = "bitmask mirror of iota disagrees at " + rect_text(axes, x);
        return res;
      }
      // Counit: closure(iota(X)) <= X.
      if (!rect_leq(rectangle_closure(tuples, iota(tuples, x)), x)) {
        res.holds = false;
        res.witness = "closure(iota(X)) exceeds X = " + rect_text(axes, x);
        return res;
      }
      ++res.checked;
    }
    // iota monotone over every rectangle cover.
    for (const auto& x : rects)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t b = 0; b < x[k].size(); ++b) {
          if (x[k].test(b)) continue;
          Rectangle y = x;
          y[k].set(b);
          if (!iota(tuples, x).is_subset_of(iota(tuples, y))) {
            res.holds = false;
            res.witness = "iota not monotone at " + rect_text(axes, x);
            return res;
          }
        }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      ConcreteSet r = random_set(n, rng);
      auto [px, py] = closure_mask(to_mask(r));
      auto cl = rectangle_closure(tuples, r);
      if (to_mask(cl[0]) != px || to_mask(cl[1]) != py) {
        res.holds = false;
        res.witness = "bitmask mirror of closure disagrees at " + set_text(tuples, r);
        return res;
      }
    }
    for (std::uint32_t r = 0; r < (1u << n); ++r) {
      auto [px, py] = closure_mask(r);
      // Unit: R within iota(closure(R)).
      if ((r & ~iota_mask(px, py)) != 0) {
        res.holds = false;
        res.witness = "R not within iota(closure(R)) for R mask " + std::to_string(r);
        return res;
      }
      for (std::size_t p = 0; p < n; ++p) {
        if (r >> p & 1) continue;
        auto [qx, qy] = closure_mask(r | (1u << p));
        if ((px & ~qx) || (py & ~qy)) {
          res.holds = false;
          res.witness = "closure not monotone at R mask " + std::to_string(r);
          return res;
        }
      }
      ++res.checked;
    }
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    ConcreteSet r = random_set(tuples.size(), rng);
    Rectangle x = random_rect(axes, rng);
    if (s % 2 == 0) {
      // Half the samples sit above the closure so the true side is exercised.
      auto cl = rectangle_closure(tuples, r);
      for (std::size_t k = 0; k < x.size(); ++k) x[k] |= cl[k];
    }
    bool lhs = rect_leq(rectangle_closure(tuples, r), x);
    bool rhs = r.is_subset_of(iota(tuples, x));
    ++res.checked;
    if (lhs != rhs) {
      res.holds = false;
      res.witness = "R = " + set_text(tuples, r) + ", X = " + rect_text(axes, x);
      return res;
    }
  }
  return res;
}

CheckResult check_iota_preserves_meets(const ConcreteUniverse& tuples, std::size_t samples, std::uint64_t seed) {
  auto axes = axis_universes(tuples);
  CheckResult res;
  auto check = [&](const Rectangle& x, const Rectangle& y) {
    ++res.checked;
    if (iota(tuples, rect_meet(x, y)) != (iota(tuples, x) & iota(tuples, y))) {
      res.holds = false;
      res.witness = rect_text(axes, x) + " and " + rect_text(axes, y);
    }
    return res.holds;
  };
  if (small_plane(axes)) {
    res.exhaustive = true;
    const auto rects = all_rectangles(tuples);
    std::vector<ConcreteSet> images;
    for (const auto& x : rects) images.push_back(iota(tuples, x));
    for (std::size_t i = 0; i < rects.size(); ++i)
      for (std::size_t j = 0; j < rects.size(); ++j) {
        ++res.checked;
        if (iota(tuples, rect_meet(rects[i], rects[j])) != (images[i] & images[j])) {
          res.holds = false;
          res.witness = rect_text(axes, rects[i]) + " and " + rect_text(axes, rects[j]);
          return res;
        }
      }
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s)
    if (!check(random_rect(axes, rng), random_rect(axes, rng))) return res;
  return res;
}

CheckResult check_empty_axis_collapse(const ConcreteUniverse& tuples, std::size_t samples, std::uint64_t seed) {
  auto axes = axis_universes(tuples);
  CheckResult res;
  auto check = [&](const Rectangle& x) {
    ++res.checked;
    ConcreteSet img = iota(tuples, x);
    bool empty_axis = has_empty_axis(x);
    if (empty_axis && img.any()) {
      res.holds = false;
      res.witness = "iota nonempty on " + rect_text(axes, x);
      return false;
    }
    bool all_empty = std::all_of(x.begin(), x.end(), [](const ConcreteSet& s) { return s.none(); });
    Rectangle back = rectangle_closure(tuples, img);
    if (!rect_leq(back, x)) {
      res.holds = false;
      res.witness = "closure(iota(X)) above X = " + rect_text(axes, x);
      return false;
    }
    if ((back == x) != (!empty_axis || all_empty)) {
      res.holds = false;
      res.witness = "closure(iota(X)) = X mismatch at " + rect_text(axes, x);
      return false;
    }
    return true;
  };
  if (small_plane(axes)) {
    res.exhaustive = true;
    for (const auto& x : all_rectangles(tuples))
      if (!check(x)) return res;
    return res;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    Rectangle x = random_rect(axes, rng);
    if (s % 3 == 0) x[s % x.size()].reset();
    if (!check(x)) return res;
  }
  return res;
}

InjectivityResult check_iota_injective_on_nonempty(const ConcreteUniverse& tuples) {
  InjectivityResult res;
  const auto rects = all_rectangles(tuples);
  std::vector<ConcreteSet> images;
  for (const auto& x : rects) images.push_back(iota(tuples, x));
  for (std::size_t i = 0; i < rects.size(); ++i)
    for (std::size_t j = i + 1; j < rects.size(); ++j) {
      if (images[i] != images[j]) continue;
      ++res.collisions;
      bool involves_empty = has_empty_axis(rects[i]) || has_empty_axis(rects[j]);
      if (!involves_empty) {
        res.collisions_involve_empty_axis = false;
        if (res.injective_on_nonempty) res.witness = std::pair{rects[i], rects[j]};
      }
      if (!has_empty_axis(rects[i]) && !has_empty_axis(rects[j])) res.injective_on_nonempty = false;
    }
  return res;
}

ProductAbstraction product(const std::vector<std::shared_ptr<const Abstraction>>& components,
                           std::size_t carrier_bound, std::size_t universe_bound) {
  if (components.empty()) throw Error("product of zero abstractions");
  ProductAbstraction pa;
  pa.components = components;
  std::size_t carrier = 1, points = 1;
  std::vector<Axis> axes;
  std::string name;
  for (const auto& c : components) {
    require_integers(c->universe(), "product component '" + c->name() + "'");
    carrier *= c->lattice().size();
    points *= c->universe().size();
    if (carrier > carrier_bound) throw CarrierTooLarge("product carrier", carrier, carrier_bound);
    if (points > universe_bound) throw CarrierTooLarge("product universe", points, universe_bound);
    pa.axis_offset.push_back(axes.size());
    for (const auto& a : c->universe().axes()) axes.push_back(a);
    name += (name.empty() ? "" : "*") + c->name();
  }

  // Mixed-radix enumeration, first component most significant.
  std::vector<std::string> names;
  for (std::size_t code = 0; code < carrier; ++code) {
    std::vector<Element> t(components.size());
    std::size_t rest = code;
    for (std::size_t k = components.size(); k-- > 0;) {
      t[k] = rest % components[k]->lattice().size();
      rest /= components[k]->lattice().size();
    }
    std::string nm;
    for (std::size_t k = 0; k < t.size(); ++k) nm += (k ? "*" : "") + components[k]->lattice().name(t[k]);
    names.push_back(nm);
    pa.tuples.push_back(std::move(t));
  }
  std::vector<char> order(carrier * carrier, 0);
  for (std::size_t a = 0; a < carrier; ++a)
    for (std::size_t b = 0; b < carrier; ++b) {
      bool le = true;
      for (std::size_t k = 0; k < components.size() && le; ++k)
        le = components[k]->lattice().leq(pa.tuples[a][k], pa.tuples[b][k]);
      order[a * carrier + b] = le;
    }
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
    throw Error("product element names collide; rename component elements");
  FiniteLattice lat = FiniteLattice::from_order(names, std::move(order));

  ConcreteUniverse u = ConcreteUniverse::tuples(axes);
  std::vector<ConcreteSet> gamma;
  for (std::size_t e = 0; e < carrier; ++e) {
    gamma.push_back(u.filter([&](std::size_t p) {
      auto c = u.coords(p);
      for (std::size_t k = 0; k < components.size(); ++k) {
        const auto& cu = components[k]->universe();
        std::vector<int> sub(c.begin() + static_cast<std::ptrdiff_t>(pa.axis_offset[k]),
                             c.begin() + static_cast<std::ptrdiff_t>(pa.axis_offset[k] + cu.dimension()));
        if (!components[k]->gamma(pa.tuples[e][k]).test(*cu.find_point(sub))) return false;
      }
      return true;
    }));
  }
  pa.abstraction = std::make_shared<const Abstraction>(name, std::move(lat), std::move(u), std::move(gamma));
  return pa;
}

ProductEmbeddingResult product_embedding_criterion(const ProductAbstraction& pa) {
  ProductEmbeddingResult res;
  for (const auto& c : pa.components) {
    if (!check_order_embedding(*c).holds) res.precondition = false;
    for (Element a = 0; a < c->lattice().size(); ++a)
      if (a != c->lattice().bottom() && c->gamma(a).none()) res.precondition = false;
  }
  const auto& abs = *pa.abstraction;
  const std::size_t n = abs.lattice().size();
  auto guarded = [&](Element e) {
    for (std::size_t k = 0; k < pa.components.size(); ++k)
      if (pa.tuples[e][k] == pa.components[k]->lattice().bottom()) return false;
    return true;
  };
  for (Element a = 0; a < n; ++a) {
    if (!guarded(a)) continue;
    for (Element b = 0; b < n; ++b) {
      if (!guarded(b)) continue;
      ++res.pairs_checked;
      if (abs.lattice().leq(a, b) != abs.gamma(a).is_subset_of(abs.gamma(b))) {
        res.holds = false;
        res.witness = std::pair{a, b};
        return res;
      }
    }
  }
  return res;
}

}  // namespace abslog::cartesian
