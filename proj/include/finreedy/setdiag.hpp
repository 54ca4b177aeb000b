#pragma once

// Diagrams of finite sets: limits, colimits, cofinality, matching and
// latching objects, relative maps, and pointwise Kan extensions.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fincat.hpp"
#include "quillen.hpp"
#include "reedy.hpp"
#include "union_find.hpp"

namespace finreedy {

/// An ordered finite set of named elements.
class FiniteSet {
 public:
  FiniteSet() : impl_(std::make_shared<Impl>()) {}

  explicit FiniteSet(std::vector<std::string> elements) {
    auto impl = std::make_shared<Impl>();
    for (std::uint32_t i = 0; i < elements.size(); ++i) {
      if (!impl->index.emplace(elements[i], i).second) {
        throw Error(ErrorKind::DuplicateId, "element '" + elements[i] + "' appears twice");
      }
    }
    impl->elements = std::move(elements);
    impl_ = std::move(impl);
  }

  std::size_t size() const noexcept { return impl_->elements.size(); }
  bool empty() const noexcept { return impl_->elements.empty(); }
  const std::string& element(std::uint32_t i) const { return impl_->elements.at(i); }
  const std::vector<std::string>& elements() const noexcept { return impl_->elements; }

  std::optional<std::uint32_t> find(const std::string& name) const {
    auto it = impl_->index.find(name);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t index(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorKind::BadElement, "no element '" + name + "'");
  }

  bool operator==(const FiniteSet& other) const { return elements() == other.elements(); }

 private:
  struct Impl {
    std::vector<std::string> elements;
    std::unordered_map<std::string, std::uint32_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Integer range {0, ..., n-1} with elements named by their index.
inline FiniteSet range_set(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return FiniteSet(std::move(names));
}

struct SetFunction {
  FiniteSet domain;
  FiniteSet codomain;
  std::vector<std::uint32_t> map;

  std::uint32_t operator()(std::uint32_t x) const { return map[x]; }

  bool is_injective() const {
    std::vector<bool> seen(codomain.size(), false);
    for (auto y : map) {
      if (seen[y]) return false;
      seen[y] = true;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<bool> seen(codomain.size(), false);
    for (auto y : map) seen[y] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  bool is_bijective() const { return domain.size() == codomain.size() && is_injective(); }
};

inline SetFunction make_function(const FiniteSet& domain, const FiniteSet& codomain,
                                 std::vector<std::uint32_t> map) {
  if (map.size() != domain.size()) {
    throw Error(ErrorKind::MissingFunction, "function is not total");
  }
  for (auto y : map) {
    if (y >= codomain.size()) throw Error(ErrorKind::BadElement, "image outside the codomain");
  }
  return {domain, codomain, std::move(map)};
}

inline SetFunction identity_function(const FiniteSet& s) {
  std::vector<std::uint32_t> map(s.size());
  for (std::uint32_t i = 0; i < map.size(); ++i) map[i] = i;
  return {s, s, std::move(map)};
}

/// `second ∘ first`.
inline SetFunction compose(const SetFunction& first, const SetFunction& second) {
  if (!(first.codomain == second.domain)) {
    throw Error(ErrorKind::ShapeMismatch, "functions are not composable");
  }
  std::vector<std::uint32_t> map(first.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = second.map[first.map[i]];
  return {first.domain, second.codomain, std::move(map)};
}

/// A functor from a finite category to finite sets.
class SetDiagram {
 public:
  SetDiagram() = default;

  const FiniteCategory& shape() const noexcept { return shape_; }
  const FiniteSet& set(ObjectId a) const { return sets_.at(a); }
  std::span<const std::uint32_t> function(MorphismId f) const { return functions_.at(f); }
  std::uint32_t apply(MorphismId f, std::uint32_t x) const { return functions_[f][x]; }
  SetFunction as_function(MorphismId f) const {
    return {sets_[shape_.src(f)], sets_[shape_.dst(f)], functions_[f]};
  }

 private:
  FiniteCategory shape_;
  std::vector<FiniteSet> sets_;
  std::vector<std::vector<std::uint32_t>> functions_;

  friend SetDiagram make_diagram(const FiniteCategory&, std::vector<FiniteSet>,
                                 std::vector<std::vector<std::uint32_t>>);
};

/// `functions` is indexed by morphism; entries for identities are replaced
/// by identity functions. Functoriality is checked on every composable pair.
inline SetDiagram make_diagram(const FiniteCategory& shape, std::vector<FiniteSet> sets,
                               std::vector<std::vector<std::uint32_t>> functions) {
  if (sets.size() != shape.object_count()) {
    throw Error(ErrorKind::ShapeMismatch, "one set per object is required");
  }
  functions.resize(shape.morphism_count());
  std::size_t total = 0;
  for (const auto& s : sets) total += s.size();
  check_element_budget(total, "diagram");
  for (ObjectId a = 0; a < shape.object_count(); ++a) {
    functions[a].resize(sets[a].size());
    for (std::uint32_t i = 0; i < sets[a].size(); ++i) functions[a][i] = i;
  }
  for (MorphismId f = static_cast<MorphismId>(shape.object_count()); f < shape.morphism_count(); ++f) {
    const auto& dom = sets[shape.src(f)];
    const auto& cod = sets[shape.dst(f)];
    if (functions[f].size() != dom.size()) {
      throw Error(ErrorKind::MissingFunction, "function for '" + shape.morphism_name(f) + "' is not total");
    }
    for (auto y : functions[f]) {
      if (y >= cod.size()) {
        throw Error(ErrorKind::BadElement, "function for '" + shape.morphism_name(f) + "' leaves its codomain");
      }
    }
  }
  for (MorphismId f = static_cast<MorphismId>(shape.object_count()); f < shape.morphism_count(); ++f) {
    for (MorphismId g : shape.out(shape.dst(f))) {
      if (shape.is_identity(g)) continue;
      const MorphismId gf = shape.then(f, g);
      for (std::uint32_t x = 0; x < sets[shape.src(f)].size(); ++x) {
        if (functions[g][functions[f][x]] != functions[gf][x]) {
          throw Error(ErrorKind::NotFunctorial,
                      shape.morphism_name(g) + "∘" + shape.morphism_name(f) + " at '" +
                          sets[shape.src(f)].element(x) + "'");
        }
      }
    }
  }
  SetDiagram d;
  d.shape_ = shape;
  d.sets_ = std::move(sets);
  d.functions_ = std::move(functions);
  return d;
}

/// Diagram description in the shape of the diagram file.
struct RawDiagram {
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::map<std::string, std::string>> functions;
};

inline SetDiagram validate_diagram(const FiniteCategory& shape, const RawDiagram& raw) {
  std::vector<FiniteSet> sets;
  for (const auto& [name, _] : raw.sets) shape.object(name);
  for (const auto& [name, _] : raw.functions) shape.morphism(name);
  for (ObjectId a = 0; a < shape.object_count(); ++a) {
    auto it = raw.sets.find(shape.object_name(a));
    sets.push_back(it == raw.sets.end() ? FiniteSet{} : FiniteSet(it->second));
  }
  std::vector<std::vector<std::uint32_t>> functions(shape.morphism_count());
  for (MorphismId f = static_cast<MorphismId>(shape.object_count()); f < shape.morphism_count(); ++f) {
    const auto& dom = sets[shape.src(f)];
    const auto& cod = sets[shape.dst(f)];
    auto it = raw.functions.find(shape.morphism_name(f));
    if (it == raw.functions.end()) {
      if (dom.empty()) continue;
      throw Error(ErrorKind::MissingFunction, "no function for '" + shape.morphism_name(f) + "'");
    }
    functions[f].assign(dom.size(), UINT32_MAX);
    for (const auto& [x, y] : it->second) {
      auto xi = dom.find(x);
      auto yi = cod.find(y);
      if (!xi || !yi) {
        throw Error(ErrorKind::BadElement, "'" + shape.morphism_name(f) + "' maps '" + x + "' to '" + y + "'");
      }
      functions[f][*xi] = *yi;
    }
    for (std::uint32_t x = 0; x < dom.size(); ++x) {
      if (functions[f][x] == UINT32_MAX) {
        throw Error(ErrorKind::MissingFunction,
                    "'" + shape.morphism_name(f) + "' is undefined at '" + dom.element(x) + "'");
      }
    }
  }
  return make_diagram(shape, std::move(sets), std::move(functions));
}

inline RawDiagram describe(const SetDiagram& x) {
  RawDiagram raw;
  const auto& c = x.shape();
  for (ObjectId a = 0; a < c.object_count(); ++a) raw.sets[c.object_name(a)] = x.set(a).elements();
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    auto& row = raw.functions[c.morphism_name(f)];
    for (std::uint32_t i = 0; i < x.set(c.src(f)).size(); ++i) {
      row[x.set(c.src(f)).element(i)] = x.set(c.dst(f)).element(x.apply(f, i));
    }
  }
  return raw;
}

/// One-point set at every object.
inline SetDiagram constant_diagram(const FiniteCategory& shape, const FiniteSet& value) {
  std::vector<FiniteSet> sets(shape.object_count(), value);
  std::vector<std::vector<std::uint32_t>> functions(shape.morphism_count());
  for (auto& f : functions) {
    f.resize(value.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) f[i] = i;
  }
  return make_diagram(shape, std::move(sets), std::move(functions));
}

struct LimitResult {
  FiniteSet set;
  /// tuples[i][a] is the component at object a of the i-th element.
  std::vector<std::vector<std::uint32_t>> tuples;
  std::vector<SetFunction> projections;
};

struct ColimitResult {
  FiniteSet set;
  std::vector<SetFunction> injections;
};

namespace detail {

inline std::string tuple_name(const SetDiagram& x, const std::vector<std::uint32_t>& t) {
  std::string s = "(";
  for (ObjectId a = 0; a < t.size(); ++a) {
    if (a != 0) s += ",";
    s += x.set(a).element(t[a]);
  }
  return s + ")";
}

}  // namespace detail

/// Compatible object-indexed tuples, in lexicographic order of element
/// indices taken in object order.
inline LimitResult limit(const SetDiagram& x) {
  const auto& c = x.shape();
  const std::size_t n = c.object_count();
  // checks[b]: non-identity morphisms whose endpoints are both at most b and
  // one of which is b.
  std::vector<std::vector<MorphismId>> checks(n);
  for (MorphismId f = static_cast<MorphismId>(n); f < c.morphism_count(); ++f) {
    checks[std::max(c.src(f), c.dst(f))].push_back(f);
  }
  LimitResult out;
  std::vector<std::uint32_t> t(n, 0);
  std::size_t steps = 0;
  const std::size_t budget = size_guard().max_elements.load() * 16;
  auto consistent = [&](ObjectId b) {
    for (MorphismId f : checks[b]) {
      if (x.apply(f, t[c.src(f)]) != t[c.dst(f)]) return false;
    }
    return true;
  };
  auto forced = [&](ObjectId b) -> std::optional<std::uint32_t> {
    for (MorphismId f : checks[b]) {
      if (c.dst(f) == b && c.src(f) < b) return x.apply(f, t[c.src(f)]);
    }
    return std::nullopt;
  };
  auto search = [&](auto&& self, ObjectId b) -> void {
    if (++steps > budget) throw Error(ErrorKind::SizeLimit, "limit search exceeded its budget");
    if (b == n) {
      out.tuples.push_back(t);
      check_element_budget(out.tuples.size(), "limit");
      return;
    }
    if (auto v = forced(b)) {
      t[b] = *v;
      if (consistent(b)) self(self, b + 1);
      return;
    }
    for (std::uint32_t v = 0; v < x.set(b).size(); ++v) {
      t[b] = v;
      if (consistent(b)) self(self, b + 1);
    }
  };
  search(search, 0);
  std::vector<std::string> names;
  for (const auto& tuple : out.tuples) names.push_back(detail::tuple_name(x, tuple));
  out.set = FiniteSet(std::move(names));
  for (ObjectId a = 0; a < n; ++a) {
    std::vector<std::uint32_t> map;
    for (const auto& tuple : out.tuples) map.push_back(tuple[a]);
    out.projections.push_back({out.set, x.set(a), std::move(map)});
  }
  return out;
}

/// Classes of the disjoint union under x ~ X_f(x). Each class is named
/// "<object>:<element>" after its least member in (object, element) order.
inline ColimitResult colimit(const SetDiagram& x) {
  const auto& c = x.shape();
  std::vector<std::uint32_t> offset(c.object_count() + 1, 0);
  for (ObjectId a = 0; a < c.object_count(); ++a) offset[a + 1] = offset[a] + x.set(a).size();
  check_element_budget(offset.back(), "colimit");
  UnionFind uf(offset.back());
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    const ObjectId a = c.src(f);
    const ObjectId b = c.dst(f);
    for (std::uint32_t i = 0; i < x.set(a).size(); ++i) uf.unite(offset[a] + i, offset[b] + x.apply(f, i));
  }
  std::size_t count = 0;
  auto cls = uf.classes(&count);
  std::vector<std::string> names(count);
  std::vector<bool> named(count, false);
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    for (std::uint32_t i = 0; i < x.set(a).size(); ++i) {
      const auto k = cls[offset[a] + i];
      if (!named[k]) {
        names[k] = c.object_name(a) + ":" + x.set(a).element(i);
        named[k] = true;
      }
    }
  }
  ColimitResult out;
  out.set = FiniteSet(std::move(names));
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    std::vector<std::uint32_t> map;
    for (std::uint32_t i = 0; i < x.set(a).size(); ++i) map.push_back(cls[offset[a] + i]);
    out.injections.push_back({x.set(a), out.set, std::move(map)});
  }
  return out;
}

/// G^* X: (G^* X)_a = X_{G a}.
inline SetDiagram restrict(const FunctorData& g, const SetDiagram& x) {
  if (!g.target().same_structure(x.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram shape differs from the functor's target");
  }
  const auto& c = g.source();
  std::vector<FiniteSet> sets;
  for (ObjectId a = 0; a < c.object_count(); ++a) sets.push_back(x.set(g.on_object(a)));
  std::vector<std::vector<std::uint32_t>> functions(c.morphism_count());
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    auto image = x.function(g.on_morphism(f));
    functions[f].assign(image.begin(), image.end());
  }
  return make_diagram(c, std::move(sets), std::move(functions));
}

/// lim_D X -> lim_C G^* X.
inline SetFunction limit_restriction_map(const FunctorData& g, const SetDiagram& x) {
  LimitResult big = limit(x);
  LimitResult small = limit(restrict(g, x));
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < small.tuples.size(); ++i) index.emplace(small.tuples[i], i);
  std::vector<std::uint32_t> map;
  for (const auto& t : big.tuples) {
    std::vector<std::uint32_t> r(g.source().object_count());
    for (ObjectId a = 0; a < r.size(); ++a) r[a] = t[g.on_object(a)];
    map.push_back(index.at(r));
  }
  return {big.set, small.set, std::move(map)};
}

/// colim_C G^* X -> colim_D X.
inline SetFunction colimit_corestriction_map(const FunctorData& g, const SetDiagram& x) {
  ColimitResult big = colimit(x);
  ColimitResult small = colimit(restrict(g, x));
  std::vector<std::uint32_t> map(small.set.size(), UINT32_MAX);
  for (ObjectId a = 0; a < g.source().object_count(); ++a) {
    const auto& inj = small.injections[a];
    for (std::uint32_t i = 0; i < inj.map.size(); ++i) {
      map[inj.map[i]] = big.injections[g.on_object(a)].map[i];
    }
  }
  return {small.set, big.set, std::move(map)};
}

struct CofinalityVerdict {
  bool holds = true;
  std::optional<ObjectId> failing;
  /// Components of the failing comma category (0 when empty).
  std::size_t components = 0;
};

/// Every over category G/b is nonempty and connected.
inline CofinalityVerdict is_left_cofinal(const FunctorData& g) {
  for (ObjectId b = 0; b < g.target().object_count(); ++b) {
    Partition p = pi0(comma_over(g, b).category);
    if (p.count() != 1) return {false, b, p.count()};
  }
  return {};
}

/// Every under category b/G is nonempty and connected.
inline CofinalityVerdict is_right_cofinal(const FunctorData& g) {
  for (ObjectId b = 0; b < g.target().object_count(); ++b) {
    Partition p = pi0(comma_under(g, b).category);
    if (p.count() != 1) return {false, b, p.count()};
  }
  return {};
}

/// The codomain functor of a latching or matching category into its ambient
/// category.
inline FunctorData slice_projection(const SliceCategory& s, const FiniteCategory& ambient,
                                    bool matching) {
  std::vector<ObjectId> objects;
  for (MorphismId f : s.labels) objects.push_back(matching ? ambient.dst(f) : ambient.src(f));
  return validate_functor(s.category, ambient, std::move(objects), s.underlying);
}

struct MatchingObject {
  LimitResult limit;
  /// X_α -> M_α X.
  SetFunction map;
};

struct LatchingObject {
  ColimitResult colimit;
  /// L_α X -> X_α.
  SetFunction map;
};

inline MatchingObject matching_object(const ReedyCategory& r, const SetDiagram& x, ObjectId alpha) {
  if (!r.base().same_structure(x.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram shape differs from the Reedy category");
  }
  SliceCategory m = matching_category(r, alpha);
  MatchingObject out;
  out.limit = limit(restrict(slice_projection(m, r.base(), true), x));
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < out.limit.tuples.size(); ++i) index.emplace(out.limit.tuples[i], i);
  std::vector<std::uint32_t> map;
  for (std::uint32_t v = 0; v < x.set(alpha).size(); ++v) {
    std::vector<std::uint32_t> t;
    for (MorphismId nu : m.labels) t.push_back(x.apply(nu, v));
    map.push_back(index.at(t));
  }
  out.map = {x.set(alpha), out.limit.set, std::move(map)};
  return out;
}

inline LatchingObject latching_object(const ReedyCategory& r, const SetDiagram& x, ObjectId alpha) {
  if (!r.base().same_structure(x.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram shape differs from the Reedy category");
  }
  SliceCategory l = latching_category(r, alpha);
  LatchingObject out;
  out.colimit = colimit(restrict(slice_projection(l, r.base(), false), x));
  std::vector<std::uint32_t> map(out.colimit.set.size(), UINT32_MAX);
  for (ObjectId k = 0; k < l.labels.size(); ++k) {
    const auto& inj = out.colimit.injections[k];
    for (std::uint32_t i = 0; i < inj.map.size(); ++i) map[inj.map[i]] = x.apply(l.labels[k], i);
  }
  out.map = {out.colimit.set, x.set(alpha), std::move(map)};
  return out;
}

struct PullbackResult {
  FiniteSet set;
  SetFunction first;
  SetFunction second;
};

struct PushoutResult {
  FiniteSet set;
  SetFunction first;
  SetFunction second;
};

/// Pairs (a, b) with f(a) = g(b), in lexicographic order.
inline PullbackResult pullback(const SetFunction& f, const SetFunction& g) {
  if (!(f.codomain == g.codomain)) throw Error(ErrorKind::ShapeMismatch, "pullback needs a common codomain");
  check_element_budget(f.domain.size() * g.domain.size(), "pullback");
  std::vector<std::string> names;
  std::vector<std::uint32_t> p1, p2;
  for (std::uint32_t a = 0; a < f.domain.size(); ++a) {
    for (std::uint32_t b = 0; b < g.domain.size(); ++b) {
      if (f.map[a] != g.map[b]) continue;
      names.push_back("(" + f.domain.element(a) + "," + g.domain.element(b) + ")");
      p1.push_back(a);
      p2.push_back(b);
    }
  }
  PullbackResult out;
  out.set = FiniteSet(std::move(names));
  out.first = {out.set, f.domain, std::move(p1)};
  out.second = {out.set, g.domain, std::move(p2)};
  return out;
}

/// A ⊔ B modulo f(c) ~ g(c). Classes are named "0:<a>" or "1:<b>" after
/// their least member, A before B.
inline PushoutResult pushout(const SetFunction& f, const SetFunction& g) {
  if (!(f.domain == g.domain)) throw Error(ErrorKind::ShapeMismatch, "pushout needs a common domain");
  const auto na = static_cast<std::uint32_t>(f.codomain.size());
  UnionFind uf(na + g.codomain.size());
  for (std::uint32_t c = 0; c < f.domain.size(); ++c) uf.unite(f.map[c], na + g.map[c]);
  std::size_t count = 0;
  auto cls = uf.classes(&count);
  std::vector<std::string> names(count);
  std::vector<bool> named(count, false);
  for (std::uint32_t i = 0; i < cls.size(); ++i) {
    if (named[cls[i]]) continue;
    named[cls[i]] = true;
    names[cls[i]] = i < na ? "0:" + f.codomain.element(i) : "1:" + g.codomain.element(i - na);
  }
  PushoutResult out;
  out.set = FiniteSet(std::move(names));
  out.first = {f.codomain, out.set, std::vector<std::uint32_t>(cls.begin(), cls.begin() + na)};
  out.second = {g.codomain, out.set, std::vector<std::uint32_t>(cls.begin() + na, cls.end())};
  return out;
}

/// A natural transformation X -> Y of set diagrams over one shape.
struct NaturalTransformation {
  SetDiagram source;
  SetDiagram target;
  std::vector<std::vector<std::uint32_t>> components;
};

inline NaturalTransformation validate_natural(const SetDiagram& x, const SetDiagram& y,
                                              std::vector<std::vector<std::uint32_t>> components) {
  const auto& c = x.shape();
  if (!c.same_structure(y.shape()) || components.size() != c.object_count()) {
    throw Error(ErrorKind::ShapeMismatch, "transformation between diagrams of different shapes");
  }
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (components[a].size() != x.set(a).size()) {
      throw Error(ErrorKind::NotNatural, "component at '" + c.object_name(a) + "' is not total");
    }
    for (auto v : components[a]) {
      if (v >= y.set(a).size()) throw Error(ErrorKind::BadElement, "component leaves its codomain");
    }
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    for (std::uint32_t v = 0; v < x.set(c.src(f)).size(); ++v) {
      if (components[c.dst(f)][x.apply(f, v)] != y.apply(f, components[c.src(f)][v])) {
        throw Error(ErrorKind::NotNatural, "square at '" + c.morphism_name(f) + "' fails");
      }
    }
  }
  return {x, y, std::move(components)};
}

inline NaturalTransformation identity_transformation(const SetDiagram& x) {
  std::vector<std::vector<std::uint32_t>> components;
  for (ObjectId a = 0; a < x.shape().object_count(); ++a) {
    components.push_back(identity_function(x.set(a)).map);
  }
  return validate_natural(x, x, std::move(components));
}

struct RelativeMap {
  /// Pullback Y_α ×_{M_α Y} M_α X, or pushout X_α ⊔_{L_α X} L_α Y.
  FiniteSet corner;
  SetFunction map;
};

/// X_α -> Y_α ×_{M_α Y} M_α X.
inline RelativeMap relative_matching_map(const ReedyCategory& r, const NaturalTransformation& f,
                                         ObjectId alpha) {
  MatchingObject mx = matching_object(r, f.source, alpha);
  MatchingObject my = matching_object(r, f.target, alpha);
  SliceCategory m = matching_category(r, alpha);
  const auto& c = r.base();
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  for (std::uint32_t i = 0; i < my.limit.tuples.size(); ++i) index.emplace(my.limit.tuples[i], i);
  std::vector<std::uint32_t> mf;
  for (const auto& t : mx.limit.tuples) {
    std::vector<std::uint32_t> image(t.size());
    for (std::size_t k = 0; k < t.size(); ++k) image[k] = f.components[c.dst(m.labels[k])][t[k]];
    mf.push_back(index.at(image));
  }
  SetFunction mfun{mx.limit.set, my.limit.set, std::move(mf)};
  PullbackResult p = pullback(my.map, mfun);
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> pair_index;
  for (std::uint32_t i = 0; i < p.set.size(); ++i) pair_index.emplace(std::make_pair(p.first.map[i], p.second.map[i]), i);
  std::vector<std::uint32_t> map;
  for (std::uint32_t v = 0; v < f.source.set(alpha).size(); ++v) {
    map.push_back(pair_index.at({f.components[alpha][v], mx.map.map[v]}));
  }
  return {p.set, {f.source.set(alpha), p.set, std::move(map)}};
}

/// X_α ⊔_{L_α X} L_α Y -> Y_α.
inline RelativeMap relative_latching_map(const ReedyCategory& r, const NaturalTransformation& f,
                                         ObjectId alpha) {
  LatchingObject lx = latching_object(r, f.source, alpha);
  LatchingObject ly = latching_object(r, f.target, alpha);
  SliceCategory l = latching_category(r, alpha);
  const auto& c = r.base();
  std::vector<std::uint32_t> lf(lx.colimit.set.size(), UINT32_MAX);
  for (ObjectId k = 0; k < l.labels.size(); ++k) {
    const ObjectId gamma = c.src(l.labels[k]);
    for (std::uint32_t i = 0; i < lx.colimit.injections[k].map.size(); ++i) {
      lf[lx.colimit.injections[k].map[i]] = ly.colimit.injections[k].map[f.components[gamma][i]];
    }
  }
  SetFunction lfun{lx.colimit.set, ly.colimit.set, std::move(lf)};
  PushoutResult p = pushout(lx.map, lfun);
  std::vector<std::uint32_t> map(p.set.size(), UINT32_MAX);
  for (std::uint32_t v = 0; v < f.source.set(alpha).size(); ++v) {
    map[p.first.map[v]] = f.components[alpha][v];
  }
  for (std::uint32_t w = 0; w < ly.colimit.set.size(); ++w) map[p.second.map[w]] = ly.map.map[w];
  return {p.set, {p.set, f.target.set(alpha), std::move(map)}};
}

/// Pointwise left Kan extension: (Lan X)_d = colim over G/d of X.
inline SetDiagram left_kan(const FunctorData& g, const SetDiagram& x) {
  if (!g.source().same_structure(x.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram shape differs from the functor's source");
  }
  const auto& d = g.target();
  std::vector<CommaCategory> commas;
  std::vector<ColimitResult> values;
  std::vector<FiniteSet> sets;
  for (ObjectId b = 0; b < d.object_count(); ++b) {
    commas.push_back(comma_over(g, b));
    std::vector<ObjectId> objects;
    for (const auto& l : commas.back().labels) objects.push_back(l.object);
    FunctorData proj = validate_functor(commas.back().category, g.source(), std::move(objects),
                                        commas.back().underlying);
    values.push_back(colimit(restrict(proj, x)));
    sets.push_back(values.back().set);
  }
  std::vector<std::vector<std::uint32_t>> functions(d.morphism_count());
  for (MorphismId u = static_cast<MorphismId>(d.object_count()); u < d.morphism_count(); ++u) {
    const auto& from = commas[d.src(u)];
    const auto& to = commas[d.dst(u)];
    std::map<std::pair<ObjectId, MorphismId>, ObjectId> index;
    for (ObjectId k = 0; k < to.labels.size(); ++k) index.emplace(std::make_pair(to.labels[k].object, to.labels[k].arrow), k);
    auto& fn = functions[u];
    fn.assign(sets[d.src(u)].size(), UINT32_MAX);
    for (ObjectId k = 0; k < from.labels.size(); ++k) {
      const ObjectId k2 = index.at({from.labels[k].object, d.then(from.labels[k].arrow, u)});
      const auto& inj = values[d.src(u)].injections[k];
      for (std::uint32_t i = 0; i < inj.map.size(); ++i) {
        fn[inj.map[i]] = values[d.dst(u)].injections[k2].map[i];
      }
    }
  }
  return make_diagram(d, std::move(sets), std::move(functions));
}

/// Pointwise right Kan extension: (Ran X)_d = lim over d/G of X.
inline SetDiagram right_kan(const FunctorData& g, const SetDiagram& x) {
  if (!g.source().same_structure(x.shape())) {
    throw Error(ErrorKind::ShapeMismatch, "diagram shape differs from the functor's source");
  }
  const auto& d = g.target();
  std::vector<CommaCategory> commas;
  std::vector<LimitResult> values;
  std::vector<FiniteSet> sets;
  for (ObjectId b = 0; b < d.object_count(); ++b) {
    commas.push_back(comma_under(g, b));
    std::vector<ObjectId> objects;
    for (const auto& l : commas.back().labels) objects.push_back(l.object);
    FunctorData proj = validate_functor(commas.back().category, g.source(), std::move(objects),
                                        commas.back().underlying);
    values.push_back(limit(restrict(proj, x)));
    sets.push_back(values.back().set);
  }
  std::vector<std::vector<std::uint32_t>> functions(d.morphism_count());
  for (MorphismId u = static_cast<MorphismId>(d.object_count()); u < d.morphism_count(); ++u) {
    const auto& from = commas[d.src(u)];
    const auto& to = commas[d.dst(u)];
    std::map<std::pair<ObjectId, MorphismId>, ObjectId> index;
    for (ObjectId k = 0; k < from.labels.size(); ++k) index.emplace(std::make_pair(from.labels[k].object, from.labels[k].arrow), k);
    std::map<std::vector<std::uint32_t>, std::uint32_t> tuple_index;
    const auto& target_tuples = values[d.dst(u)].tuples;
    for (std::uint32_t i = 0; i < target_tuples.size(); ++i) tuple_index.emplace(target_tuples[i], i);
    auto& fn = functions[u];
    for (const auto& t : values[d.src(u)].tuples) {
      std::vector<std::uint32_t> image(to.labels.size());
      for (ObjectId k = 0; k < to.labels.size(); ++k) {
        image[k] = t[index.at({to.labels[k].object, d.then(u, to.labels[k].arrow)})];
      }
      fn.push_back(tuple_index.at(image));
    }
  }
  return make_diagram(d, std::move(sets), std::move(functions));
}

/// Left Kan extension of the restriction to degrees at most n.
inline SetDiagram skeleton(const ReedyCategory& r, int n, const SetDiagram& x) {
  Truncation t = truncate(r, n);
  return left_kan(t.inclusion.data(), restrict(t.inclusion.data(), x));
}

inline SetDiagram coskeleton(const ReedyCategory& r, int n, const SetDiagram& x) {
  Truncation t = truncate(r, n);
  return right_kan(t.inclusion.data(), restrict(t.inclusion.data(), x));
}

struct MatchingIsoVerdict {
  bool bijective = false;
  std::size_t value_size = 0;
  std::size_t matching_size = 0;
};

/// For fibering G with nonempty kernel at α, the matching map of G^* X at α
/// is a bijection.
inline MatchingIsoVerdict matching_iso_check(const ReedyFunctor& g, const SetDiagram& x,
                                             ObjectId alpha) {
  if (!is_fibering(g).holds) throw Error(ErrorKind::PreconditionFailed, "functor is not fibering");
  if (g_kernel(g, alpha).labels.empty()) {
    throw Error(ErrorKind::PreconditionFailed,
                "kernel at '" + g.source().base().object_name(alpha) + "' is empty");
  }
  MatchingObject m = matching_object(g.source(), restrict(g.data(), x), alpha);
  return {m.map.is_bijective(), m.map.domain.size(), m.map.codomain.size()};
}

}  // namespace finreedy
