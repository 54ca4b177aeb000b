#pragma once

// Builders for the standard Reedy categories and functors (truncated
// simplex categories, products, diagonals, slices, truncations, the square
// example) and seeded random Reedy functors and set diagrams.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "reedy.hpp"
#include "setdiag.hpp"
#include "union_find.hpp"

namespace finreedy {

struct RandomBounds {
  std::size_t max_objects = 8;
  std::size_t max_morphisms = 60;
};

/// A weakly monotone map [source] -> [target], stored as its image tuple.
struct MonotoneMap {
  int source = 0;
  int target = 0;
  std::vector<int> image;

  bool is_identity() const {
    if (source != target) return false;
    for (int i = 0; i <= source; ++i) {
      if (image[i] != i) return false;
    }
    return true;
  }
  bool is_injective() const {
    for (int i = 0; i < source; ++i) {
      if (image[i] == image[i + 1]) return false;
    }
    return true;
  }
  bool is_surjective() const {
    return image.front() == 0 && image.back() == target &&
           std::adjacent_find(image.begin(), image.end(),
                              [](int a, int b) { return b > a + 1; }) == image.end();
  }
  bool operator==(const MonotoneMap&) const = default;
};

/// `second ∘ first`.
inline MonotoneMap compose(const MonotoneMap& first, const MonotoneMap& second) {
  MonotoneMap m{first.source, second.target, {}};
  for (int v : first.image) m.image.push_back(second.image[v]);
  return m;
}

/// All monotone maps [a] -> [b] in lexicographic order of image tuples.
inline std::vector<MonotoneMap> monotone_maps(int a, int b) {
  std::vector<MonotoneMap> out;
  std::vector<int> image(a + 1, 0);
  std::function<void(int, int)> fill = [&](int i, int lo) {
    if (i == a + 1) {
      out.push_back({a, b, image});
      return;
    }
    for (int v = lo; v <= b; ++v) {
      image[i] = v;
      fill(i + 1, v);
    }
  };
  fill(0, 0);
  return out;
}

inline std::string delta_object_name(int k) { return "[" + std::to_string(k) + "]"; }

/// "d[a->b]:(v0,...,va)"; identities keep the builder's "id:[a]".
inline std::string delta_morphism_name(const MonotoneMap& m) {
  if (m.is_identity()) return identity_name(delta_object_name(m.source));
  std::string s = "d[" + std::to_string(m.source) + "->" + std::to_string(m.target) + "]:(";
  for (std::size_t i = 0; i < m.image.size(); ++i) {
    if (i != 0) s += ",";
    s += std::to_string(m.image[i]);
  }
  return s + ")";
}

namespace detail {

/// Δ≤n, or its subcategory of injections.
inline ReedyCategory build_delta(int n, bool injective_only) {
  if (n < 0) throw Error(ErrorKind::PreconditionFailed, "truncation degree must be nonnegative");
  if (n > 12) throw Error(ErrorKind::SizeLimit, "truncation degree " + std::to_string(n));
  CategoryBuilder b;
  for (int k = 0; k <= n; ++k) b.add_object(delta_object_name(k));
  std::map<std::pair<int, std::vector<int>>, MorphismId> id_of;
  std::vector<MonotoneMap> maps;
  std::vector<MorphismClass> classes(n + 1, MorphismClass::Identity);
  std::size_t total = 0;
  for (int a = 0; a <= n; ++a) {
    for (int c = 0; c <= n; ++c) total += monotone_maps(a, c).size();
  }
  check_morphism_budget(total, "truncated simplex category");
  for (int a = 0; a <= n; ++a) {
    for (int c = 0; c <= n; ++c) {
      for (auto& m : monotone_maps(a, c)) {
        if (injective_only && !m.is_injective()) continue;
        if (m.is_identity()) {
          id_of.emplace(std::make_pair(c, m.image), static_cast<MorphismId>(a));
          continue;
        }
        const MorphismId f = b.add_morphism(delta_morphism_name(m), a, c);
        id_of.emplace(std::make_pair(c, m.image), f);
        classes.push_back(m.is_injective()    ? MorphismClass::Direct
                          : m.is_surjective() ? MorphismClass::Inverse
                                              : MorphismClass::General);
        maps.push_back(std::move(m));
      }
    }
  }
  for (const auto& f : maps) {
    for (const auto& g : maps) {
      if (f.target != g.source) continue;
      MonotoneMap gf = compose(f, g);
      b.set_composite(id_of.at({f.target, f.image}), id_of.at({g.target, g.image}),
                      id_of.at({gf.target, gf.image}));
    }
  }
  std::vector<int> degree(n + 1);
  for (int k = 0; k <= n; ++k) degree[k] = k;
  return validate_reedy(b.build(false), std::move(degree), std::move(classes));
}

}  // namespace detail

/// Δ≤n: objects [0], ..., [n] with [k] of degree k, all monotone maps;
/// injections are direct and surjections inverse.
inline ReedyCategory delta_truncated(int n) { return detail::build_delta(n, false); }

struct ReedyInclusion {
  ReedyCategory category;
  ReedyFunctor inclusion;
};

/// Injections of Δ≤n and their inclusion into Δ≤n.
inline ReedyInclusion delta_rest_truncated(int n) {
  ReedyCategory rest = detail::build_delta(n, true);
  ReedyCategory full = delta_truncated(n);
  return {rest, validate_reedy_functor(inclusion_by_name(rest.base(), full.base()), rest, full)};
}

/// R_1 × ... × R_m with the index of every morphism tuple.
struct IteratedProduct {
  ReedyCategory category;
  std::vector<std::vector<MorphismId>> tuples;
  std::map<std::vector<MorphismId>, MorphismId> index;
};

inline IteratedProduct iterated_product(const std::vector<ReedyCategory>& factors) {
  if (factors.empty()) throw Error(ErrorKind::PreconditionFailed, "a product needs a factor");
  IteratedProduct p;
  p.category = factors.front();
  for (MorphismId f = 0; f < p.category.base().morphism_count(); ++f) p.tuples.push_back({f});
  for (std::size_t i = 1; i < factors.size(); ++i) {
    std::vector<std::pair<MorphismId, MorphismId>> parts;
    ReedyCategory next = product_reedy(p.category, factors[i], &parts);
    std::vector<std::vector<MorphismId>> tuples;
    for (const auto& [left, right] : parts) {
      tuples.push_back(p.tuples[left]);
      tuples.back().push_back(right);
    }
    p.category = std::move(next);
    p.tuples = std::move(tuples);
  }
  for (MorphismId f = 0; f < p.tuples.size(); ++f) p.index.emplace(p.tuples[f], f);
  return p;
}

inline ReedyCategory power_reedy(const ReedyCategory& r, int m) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "power must be at least 1");
  return iterated_product(std::vector<ReedyCategory>(m, r)).category;
}

/// R -> R^m, φ ↦ (φ, ..., φ).
inline ReedyFunctor diagonal(const ReedyCategory& r, int m) {
  if (m < 1) throw Error(ErrorKind::PreconditionFailed, "power must be at least 1");
  IteratedProduct p = iterated_product(std::vector<ReedyCategory>(m, r));
  const auto& c = r.base();
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    objects.push_back(p.index.at(std::vector<MorphismId>(m, c.identity(a))));
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    morphisms.push_back(p.index.at(std::vector<MorphismId>(m, f)));
  }
  return validate_reedy_functor(validate_functor(c, p.category.base(), objects, morphisms), r,
                                p.category);
}

inline ReedyFunctor diagonal_functor(int n, int m) {
  if (n < 1 || m < 1) throw Error(ErrorKind::PreconditionFailed, "diagonal needs n, m >= 1");
  return diagonal(delta_truncated(n), m);
}

/// Inclusion of the K-slice: coordinates in `k` (0-based, increasing) vary,
/// the others are fixed at `basepoints[i]`.
inline ReedyFunctor slice_inclusion(const std::vector<ReedyCategory>& factors,
                                    const std::vector<std::size_t>& k,
                                    const std::map<std::size_t, ObjectId>& basepoints) {
  std::vector<ReedyCategory> varying;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] >= factors.size() || (i > 0 && k[i] <= k[i - 1])) {
      throw Error(ErrorKind::DanglingReference, "slice index " + std::to_string(k[i]));
    }
    varying.push_back(factors[k[i]]);
  }
  if (varying.empty()) throw Error(ErrorKind::PreconditionFailed, "slice needs a varying coordinate");
  std::vector<MorphismId> fixed(factors.size(), kNoId);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (std::find(k.begin(), k.end(), i) != k.end()) continue;
    auto it = basepoints.find(i);
    if (it == basepoints.end() || it->second >= factors[i].base().object_count()) {
      throw Error(ErrorKind::DanglingReference, "no basepoint for coordinate " + std::to_string(i));
    }
    fixed[i] = factors[i].base().identity(it->second);
  }
  IteratedProduct src = iterated_product(varying);
  IteratedProduct tgt = iterated_product(factors);
  auto embed = [&](const std::vector<MorphismId>& t) {
    std::vector<MorphismId> full = fixed;
    for (std::size_t i = 0; i < k.size(); ++i) full[k[i]] = t[i];
    return tgt.index.at(full);
  };
  const auto& s = src.category.base();
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a = 0; a < s.object_count(); ++a) objects.push_back(embed(src.tuples[a]));
  for (MorphismId f = 0; f < s.morphism_count(); ++f) morphisms.push_back(embed(src.tuples[f]));
  return validate_reedy_functor(validate_functor(s, tgt.category.base(), objects, morphisms),
                                src.category, tgt.category);
}

inline ReedyFunctor truncation_inclusion(const ReedyCategory& r, int n) {
  if (n < 0) throw Error(ErrorKind::PreconditionFailed, "truncation degree must be nonnegative");
  return truncate(r, n).inclusion;
}

/// The commutative square α -> γ -> β, α -> δ -> β (qp = sr) with degrees
/// 2, 1, 1, 0 and every map inverse, and the inclusion of the full
/// subcategory on α, γ, δ.
inline ReedyFunctor example_square() {
  CategoryBuilder b;
  const ObjectId alpha = b.add_object("α");
  const ObjectId beta = b.add_object("β");
  const ObjectId gamma = b.add_object("γ");
  const ObjectId delta = b.add_object("δ");
  const MorphismId p = b.add_morphism("p", alpha, gamma);
  const MorphismId q = b.add_morphism("q", gamma, beta);
  const MorphismId r = b.add_morphism("r", alpha, delta);
  const MorphismId s = b.add_morphism("s", delta, beta);
  const MorphismId qp = b.add_morphism("qp", alpha, beta);
  b.set_composite(p, q, qp);
  b.set_composite(r, s, qp);
  FiniteCategory d = b.build();
  std::vector<MorphismClass> classes(d.morphism_count(), MorphismClass::Inverse);
  ReedyCategory rd = validate_reedy(d, {2, 0, 1, 1}, std::move(classes));
  ReedyCategory rc = restrict_reedy(rd, full_subcategory(d, {"α", "γ", "δ"}));
  return validate_reedy_functor(inclusion_by_name(rc.base(), d), rc, rd);
}

/// Five objects α, β, γ, δ, ε of degrees 4..0 over a two-object target
/// a -> b: the maps among α, β, γ and μ: δ -> ε go to identities, the
/// remaining maps to f.
inline ReedyFunctor kernel_example() {
  CategoryBuilder b;
  const ObjectId al = b.add_object("α");
  const ObjectId be = b.add_object("β");
  const ObjectId ga = b.add_object("γ");
  const ObjectId de = b.add_object("δ");
  const ObjectId ep = b.add_object("ε");
  const MorphismId ab = b.add_morphism("αβ", al, be);
  const MorphismId ag = b.add_morphism("αγ", al, ga);
  const MorphismId bg = b.add_morphism("βγ", be, ga);
  const MorphismId sigma = b.add_morphism("σ", al, de);
  const MorphismId tau = b.add_morphism("τ", ga, ep);
  const MorphismId mu = b.add_morphism("μ", de, ep);
  const MorphismId ae = b.add_morphism("αε", al, ep);
  const MorphismId bee = b.add_morphism("βε", be, ep);
  b.set_composite(ab, bg, ag);
  b.set_composite(ab, bee, ae);
  b.set_composite(ag, tau, ae);
  b.set_composite(bg, tau, bee);
  b.set_composite(sigma, mu, ae);
  FiniteCategory c = b.build();
  ReedyCategory rc = validate_reedy(c, {4, 3, 2, 1, 0},
                                    std::vector<MorphismClass>(c.morphism_count(), MorphismClass::Inverse));
  CategoryBuilder bd;
  bd.add_object("a");
  bd.add_object("b");
  bd.add_morphism("f", 0, 1);
  FiniteCategory d = bd.build();
  ReedyCategory rd = validate_reedy(d, {1, 0}, {MorphismClass::Identity, MorphismClass::Identity,
                                                MorphismClass::Inverse});
  FunctorData g = validate_functor(
      c, d, std::map<std::string, std::string>{{"α", "a"}, {"β", "a"}, {"γ", "a"}, {"δ", "b"}, {"ε", "b"}},
      std::map<std::string, std::string>{{"αβ", "id:a"}, {"αγ", "id:a"}, {"βγ", "id:a"}, {"σ", "f"},
                                         {"τ", "f"}, {"μ", "id:b"}, {"αε", "f"}, {"βε", "f"}});
  return validate_reedy_functor(g, rc, rd);
}

/// Walking arrow a -> b with a of degree 1, the arrow inverse, collapsed to
/// the terminal category.
inline ReedyFunctor arrow_collapse() {
  CategoryBuilder b;
  b.add_object("a");
  b.add_object("b");
  b.add_morphism("f", 0, 1);
  FiniteCategory c = b.build();
  ReedyCategory rc = validate_reedy(c, {1, 0}, {MorphismClass::Identity, MorphismClass::Identity,
                                                MorphismClass::Inverse});
  CategoryBuilder bt;
  bt.add_object("*");
  FiniteCategory t = bt.build();
  ReedyCategory rt = validate_reedy(t, {0}, {MorphismClass::Identity});
  return validate_reedy_functor(validate_functor(c, t, {0, 0}, {0, 0, 0}), rc, rt);
}

/// Subcategory with the given objects and morphisms (closed under
/// composition, identities implied); names are kept.
inline FiniteCategory subcategory(const FiniteCategory& c, const std::vector<ObjectId>& objects,
                                  const std::vector<MorphismId>& morphisms) {
  std::vector<ObjectId> new_obj(c.object_count(), kNoId);
  CategoryBuilder b;
  for (ObjectId a : objects) new_obj[a] = b.add_object(c.object_name(a));
  std::vector<MorphismId> new_mor(c.morphism_count(), kNoId);
  for (ObjectId a : objects) new_mor[c.identity(a)] = new_obj[a];
  for (MorphismId f : morphisms) {
    if (c.is_identity(f)) continue;
    if (new_obj[c.src(f)] == kNoId || new_obj[c.dst(f)] == kNoId) {
      throw Error(ErrorKind::DanglingReference, "morphism '" + c.morphism_name(f) + "' leaves the subcategory");
    }
    new_mor[f] = b.add_morphism(c.morphism_name(f), new_obj[c.src(f)], new_obj[c.dst(f)]);
  }
  for (MorphismId f : morphisms) {
    if (c.is_identity(f)) continue;
    for (MorphismId g : morphisms) {
      if (c.is_identity(g) || c.src(g) != c.dst(f)) continue;
      const MorphismId gf = new_mor[c.then(f, g)];
      if (gf == kNoId) {
        throw Error(ErrorKind::NotClosed, "subcategory misses " + c.morphism_name(g) + "∘" + c.morphism_name(f));
      }
      b.set_composite(new_mor[f], new_mor[g], gf);
    }
  }
  return b.build(false);
}

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  bool chance(int percent) { return static_cast<int>(engine_() % 100) < percent; }

 private:
  std::mt19937_64 engine_;
};

struct LayeredGraph {
  std::vector<int> degree;
  std::vector<std::pair<ObjectId, ObjectId>> edges;
};

struct PathSet {
  std::vector<std::vector<std::uint32_t>> paths;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index;
  std::vector<ObjectId> src;
  std::vector<ObjectId> dst;
};

inline LayeredGraph random_layered_graph(Rng& rng, std::size_t objects, int max_degree) {
  LayeredGraph g;
  for (std::size_t i = 0; i < objects; ++i) g.degree.push_back(static_cast<int>(rng.below(max_degree + 1)));
  const int density = 50 + static_cast<int>(rng.below(45));
  for (ObjectId a = 0; a < objects; ++a) {
    for (ObjectId b = 0; b < objects; ++b) {
      if (g.degree[a] <= g.degree[b]) continue;
      if (!rng.chance(density)) continue;
      g.edges.emplace_back(a, b);
      if (rng.chance(20)) g.edges.emplace_back(a, b);
    }
  }
  return g;
}

/// Every nonempty path, shortest first; nullopt beyond `cap` paths.
inline std::optional<PathSet> enumerate_paths(const LayeredGraph& g, std::size_t cap) {
  PathSet ps;
  std::vector<std::vector<std::uint32_t>> frontier;
  for (std::uint32_t e = 0; e < g.edges.size(); ++e) frontier.push_back({e});
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto& p : frontier) {
      if (ps.paths.size() >= cap) return std::nullopt;
      const ObjectId end = g.edges[p.back()].second;
      ps.index.emplace(p, static_cast<std::uint32_t>(ps.paths.size()));
      ps.src.push_back(g.edges[p.front()].first);
      ps.dst.push_back(end);
      ps.paths.push_back(p);
      for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].first != end) continue;
        auto q = p;
        q.push_back(e);
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  return ps;
}

/// Closes an equivalence of parallel paths under pre- and post-composition.
inline void close_congruence(const LayeredGraph& g, const PathSet& ps, UnionFind& uf) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint32_t i = 0; i < ps.paths.size(); ++i) {
      const std::uint32_t r = uf.find(i);
      if (r == i) continue;
      for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        if (g.edges[e].first == ps.dst[i]) {
          auto a = ps.paths[i];
          auto b = ps.paths[r];
          a.push_back(e);
          b.push_back(e);
          changed |= uf.unite(ps.index.at(a), ps.index.at(b));
        }
        if (g.edges[e].second == ps.src[i]) {
          std::vector<std::uint32_t> a{e};
          std::vector<std::uint32_t> b{e};
          a.insert(a.end(), ps.paths[i].begin(), ps.paths[i].end());
          b.insert(b.end(), ps.paths[r].begin(), ps.paths[r].end());
          changed |= uf.unite(ps.index.at(a), ps.index.at(b));
        }
      }
    }
  }
}

inline void identify_parallel(Rng& rng, const PathSet& ps, UnionFind& uf, int percent) {
  for (std::uint32_t i = 0; i < ps.paths.size(); ++i) {
    for (std::uint32_t j = i + 1; j < ps.paths.size(); ++j) {
      if (ps.src[i] == ps.src[j] && ps.dst[i] == ps.dst[j] && rng.chance(percent)) uf.unite(i, j);
    }
  }
}

struct PathCategory {
  ReedyCategory category;
  std::vector<MorphismId> morphism_of_path;
};

/// The inverse category of path classes; objects "o<i>", generators "g<e>",
/// composites named after their least path, last map first.
inline PathCategory quotient_category(const LayeredGraph& g, const PathSet& ps, UnionFind& uf,
                                      const std::string& prefix) {
  CategoryBuilder b;
  for (std::size_t a = 0; a < g.degree.size(); ++a) b.add_object(prefix + "o" + std::to_string(a));
  PathCategory out;
  out.morphism_of_path.assign(ps.paths.size(), kNoId);
  for (std::uint32_t i = 0; i < ps.paths.size(); ++i) {
    const std::uint32_t r = uf.find(i);
    if (out.morphism_of_path[r] == kNoId) {
      std::string name;
      for (auto it = ps.paths[r].rbegin(); it != ps.paths[r].rend(); ++it) {
        if (!name.empty()) name += "∘";
        name += prefix + "g" + std::to_string(*it);
      }
      out.morphism_of_path[r] = b.add_morphism(name, ps.src[r], ps.dst[r]);
    }
    out.morphism_of_path[i] = out.morphism_of_path[r];
  }
  for (std::uint32_t i = 0; i < ps.paths.size(); ++i) {
    if (uf.find(i) != i) continue;
    for (std::uint32_t j = 0; j < ps.paths.size(); ++j) {
      if (uf.find(j) != j || ps.src[j] != ps.dst[i]) continue;
      auto p = ps.paths[i];
      p.insert(p.end(), ps.paths[j].begin(), ps.paths[j].end());
      b.set_composite(out.morphism_of_path[i], out.morphism_of_path[j],
                      out.morphism_of_path[ps.index.at(p)]);
    }
  }
  FiniteCategory c = b.build(false);
  std::vector<MorphismClass> classes(c.morphism_count(), MorphismClass::Inverse);
  out.category = validate_reedy(c, g.degree, std::move(classes));
  return out;
}

struct RandomInverse {
  LayeredGraph graph;
  PathSet paths;
  UnionFind congruence;
  PathCategory category;
};

inline RandomInverse random_inverse(Rng& rng, std::size_t max_objects, std::size_t max_morphisms,
                                    const std::string& prefix = "") {
  for (int attempt = 0; attempt < 32; ++attempt) {
    const std::size_t n = max_objects < 3 ? max_objects : 3 + rng.below(max_objects - 2);
    LayeredGraph g = random_layered_graph(rng, n, 1 + static_cast<int>(rng.below(n)));
    auto ps = enumerate_paths(g, 400);
    if (!ps) continue;
    UnionFind uf(ps->paths.size());
    identify_parallel(rng, *ps, uf, rng.chance(15) ? 0 : 40 + static_cast<int>(rng.below(4)) * 20);
    close_congruence(g, *ps, uf);
    PathCategory pc = quotient_category(g, *ps, uf, prefix);
    if (pc.category.base().morphism_count() > max_morphisms) continue;
    return {std::move(g), std::move(*ps), std::move(uf), std::move(pc)};
  }
  throw Error(ErrorKind::GenerationFailed, "no inverse category within bounds");
}

/// Smallest subcategory of Δ≤n containing `seed` and `objects` that is
/// closed under composition and under taking both factorization parts.
inline ReedyCategory delta_closure(const ReedyCategory& delta, std::set<MorphismId> morphisms,
                                   std::set<ObjectId> objects) {
  const auto& c = delta.base();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<MorphismId> current(morphisms.begin(), morphisms.end());
    for (MorphismId f : current) {
      objects.insert(c.src(f));
      objects.insert(c.dst(f));
      const Factorization fac = delta.factor(f);
      changed |= morphisms.insert(fac.inverse_part).second;
      changed |= morphisms.insert(fac.direct_part).second;
    }
    for (MorphismId f : current) {
      for (MorphismId g : current) {
        if (c.dst(f) == c.src(g)) changed |= morphisms.insert(c.then(f, g)).second;
      }
    }
  }
  std::vector<MorphismId> mor;
  for (MorphismId f : morphisms) {
    if (!c.is_identity(f)) mor.push_back(f);
  }
  FiniteCategory sub = subcategory(c, {objects.begin(), objects.end()}, mor);
  return restrict_reedy(delta, sub);
}

inline ReedyCategory random_delta_sub(Rng& rng, const ReedyCategory& delta, std::size_t seeds) {
  std::set<MorphismId> mor;
  std::set<ObjectId> obj;
  const auto& c = delta.base();
  for (std::size_t i = 0; i < seeds; ++i) mor.insert(static_cast<MorphismId>(rng.below(c.morphism_count())));
  if (rng.chance(30)) obj.insert(static_cast<ObjectId>(rng.below(c.object_count())));
  return delta_closure(delta, mor, obj);
}

inline ReedyFunctor random_chain_collapse(Rng& rng, const ReedyCategory& r) {
  const auto& c = r.base();
  std::vector<ObjectId> order(c.object_count());
  for (ObjectId a = 0; a < order.size(); ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(),
                   [&](ObjectId x, ObjectId y) { return r.degree(x) < r.degree(y); });
  std::vector<int> level(c.object_count(), 0);
  for (ObjectId a : order) {
    int lo = 0;
    for (MorphismId f : c.out(a)) {
      if (!c.is_identity(f)) lo = std::max(lo, level[c.dst(f)]);
    }
    level[a] = lo + static_cast<int>(rng.below(2));
  }
  const int top = *std::max_element(level.begin(), level.end());
  CategoryBuilder b;
  for (int i = 0; i <= top; ++i) b.add_object("l" + std::to_string(i));
  std::map<std::pair<int, int>, MorphismId> arrow;
  for (int i = 0; i <= top; ++i) {
    arrow[{i, i}] = static_cast<MorphismId>(i);
    for (int j = 0; j < i; ++j) {
      arrow[{i, j}] = b.add_morphism("l" + std::to_string(i) + ">l" + std::to_string(j), i, j);
    }
  }
  for (int i = 0; i <= top; ++i) {
    for (int j = 0; j < i; ++j) {
      for (int k = 0; k < j; ++k) b.set_composite(arrow[{i, j}], arrow[{j, k}], arrow[{i, k}]);
    }
  }
  FiniteCategory chain = b.build();
  std::vector<int> degree(top + 1);
  std::vector<MorphismClass> classes(chain.morphism_count(), MorphismClass::Inverse);
  for (int i = 0; i <= top; ++i) degree[i] = i;
  ReedyCategory rchain = validate_reedy(chain, std::move(degree), std::move(classes));
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a = 0; a < c.object_count(); ++a) objects.push_back(level[a]);
  for (MorphismId f = 0; f < c.morphism_count(); ++f) morphisms.push_back(arrow.at({level[c.src(f)], level[c.dst(f)]}));
  return validate_reedy_functor(validate_functor(c, chain, objects, morphisms), r, rchain);
}

inline ReedyFunctor projection(const ReedyCategory& r1, const ReedyCategory& r2) {
  IteratedProduct p = iterated_product({r1, r2});
  const auto& c = p.category.base();
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a = 0; a < c.object_count(); ++a) objects.push_back(p.tuples[a][0]);
  for (MorphismId f = 0; f < c.morphism_count(); ++f) morphisms.push_back(p.tuples[f][0]);
  return validate_reedy_functor(validate_functor(c, r1.base(), objects, morphisms), p.category, r1);
}

inline ReedyFunctor full_inclusion(Rng& rng, const ReedyCategory& r) {
  std::vector<ObjectId> keep;
  for (ObjectId a = 0; a < r.base().object_count(); ++a) {
    if (rng.chance(75)) keep.push_back(a);
  }
  if (keep.empty()) keep.push_back(static_cast<ObjectId>(rng.below(r.base().object_count())));
  ReedyCategory sub = restrict_reedy(r, full_subcategory(r.base(), keep));
  return validate_reedy_functor(inclusion_by_name(sub.base(), r.base()), sub, r);
}

/// A small category of one of several kinds, for products and diagonals.
inline ReedyCategory random_small(Rng& rng, std::size_t max_morphisms, const std::string& prefix) {
  switch (rng.below(3)) {
    case 0: return random_inverse(rng, 3, max_morphisms, prefix).category.category;
    case 1: return opposite_reedy(random_inverse(rng, 3, max_morphisms, prefix).category.category);
    default: {
      ReedyCategory d = delta_truncated(1);
      ReedyCategory sub = random_delta_sub(rng, d, 1 + rng.below(2));
      if (sub.base().morphism_count() > max_morphisms) return truncate(d, 0).category;
      return sub;
    }
  }
}

inline ReedyFunctor random_functor_once(Rng& rng, const RandomBounds& bounds) {
  const std::size_t objs = std::min<std::size_t>(bounds.max_objects, 6);
  switch (rng.below(8)) {
    case 0: {
      auto d = random_inverse(rng, objs, bounds.max_morphisms);
      return full_inclusion(rng, d.category.category);
    }
    case 1: {
      auto c = random_inverse(rng, objs, bounds.max_morphisms);
      UnionFind coarser = c.congruence;
      identify_parallel(rng, c.paths, coarser, 15 + static_cast<int>(rng.below(50)));
      close_congruence(c.graph, c.paths, coarser);
      PathCategory d = quotient_category(c.graph, c.paths, coarser, "");
      const auto& cc = c.category.category.base();
      std::vector<ObjectId> objects(cc.object_count());
      std::vector<MorphismId> morphisms(cc.morphism_count());
      for (ObjectId a = 0; a < objects.size(); ++a) objects[a] = a;
      for (MorphismId f = 0; f < cc.object_count(); ++f) morphisms[f] = f;
      for (std::uint32_t i = 0; i < c.paths.paths.size(); ++i) {
        morphisms[c.category.morphism_of_path[i]] = d.morphism_of_path[i];
      }
      return validate_reedy_functor(validate_functor(cc, d.category.base(), objects, morphisms),
                                    c.category.category, d.category);
    }
    case 2: {
      auto c = random_inverse(rng, objs, bounds.max_morphisms);
      return random_chain_collapse(rng, c.category.category);
    }
    case 3: {
      ReedyCategory delta = delta_truncated(1 + static_cast<int>(rng.below(2)));
      ReedyCategory small = random_delta_sub(rng, delta, 1 + rng.below(3));
      std::set<MorphismId> more;
      for (MorphismId f = 0; f < small.base().morphism_count(); ++f) {
        more.insert(delta.base().morphism(small.base().morphism_name(f)));
      }
      for (std::size_t i = rng.below(3); i > 0; --i) {
        more.insert(static_cast<MorphismId>(rng.below(delta.base().morphism_count())));
      }
      std::set<ObjectId> objects;
      for (ObjectId a = 0; a < small.base().object_count(); ++a) {
        objects.insert(delta.base().object(small.base().object_name(a)));
      }
      ReedyCategory big = delta_closure(delta, more, objects);
      return validate_reedy_functor(inclusion_by_name(small.base(), big.base()), small, big);
    }
    case 4: {
      ReedyCategory r1 = random_small(rng, 10, "x");
      ReedyCategory r2 = random_small(rng, bounds.max_morphisms / r1.base().morphism_count(), "y");
      return projection(r1, r2);
    }
    case 5: {
      ReedyCategory r = random_small(rng, 7, "");
      return diagonal(r, 2);
    }
    case 6: {
      auto c = random_inverse(rng, objs, bounds.max_morphisms);
      ReedyFunctor inc = full_inclusion(rng, c.category.category);
      ReedyFunctor collapse = random_chain_collapse(rng, c.category.category);
      return compose_functors(inc, collapse);
    }
    default: {
      ReedyCategory r = rng.chance(50) ? random_inverse(rng, objs, bounds.max_morphisms).category.category
                                       : random_delta_sub(rng, delta_truncated(2), 2 + rng.below(3));
      return truncation_inclusion(r, static_cast<int>(rng.below(r.max_degree() + 1)));
    }
  }
}

}  // namespace detail

/// A random Reedy functor within `bounds`, determined by `seed`. Built from
/// inclusions, quotients, collapses, projections, diagonals and truncations
/// of random inverse categories and subcategories of truncated simplex
/// categories, and their opposites.
inline ReedyFunctor random_reedy_functor(std::uint64_t seed, const RandomBounds& bounds = {}) {
  detail::Rng rng(seed * 0x9E3779B97F4A7C15ull + 1);
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      ReedyFunctor g = detail::random_functor_once(rng, bounds);
      if (rng.chance(50)) g = opposite(g);
      const auto& s = g.source().base();
      const auto& t = g.target().base();
      if (s.object_count() > bounds.max_objects || t.object_count() > bounds.max_objects ||
          s.morphism_count() > bounds.max_morphisms || t.morphism_count() > bounds.max_morphisms) {
        continue;
      }
      return g;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::SizeLimit) continue;
      if (e.kind() == ErrorKind::GenerationFailed) continue;
      throw;
    }
  }
  throw Error(ErrorKind::GenerationFailed, "seed " + std::to_string(seed));
}

/// A random diagram of finite sets on `shape`: a quotient of a coproduct of
/// representables by a random congruence, with every set of size at most
/// `max_fiber`.
inline SetDiagram random_set_diagram(const FiniteCategory& shape, std::uint64_t seed,
                                     std::size_t max_fiber = 3) {
  detail::Rng rng(seed * 0xD1B54A32D192ED03ull + 7);
  const std::size_t n = shape.object_count();
  std::vector<ObjectId> generators;
  if (n > 0) {
    const std::size_t k = rng.chance(10) ? 0 : 1 + rng.below(3);
    for (std::size_t i = 0; i < k; ++i) generators.push_back(static_cast<ObjectId>(rng.below(n)));
  }
  // Elements at e: (i, h) with h: generators[i] -> e.
  std::vector<std::vector<std::pair<std::uint32_t, MorphismId>>> elems(n);
  std::vector<std::uint32_t> offset(n + 1, 0);
  for (ObjectId e = 0; e < n; ++e) {
    for (std::uint32_t i = 0; i < generators.size(); ++i) {
      for (MorphismId h : shape.hom(generators[i], e)) elems[e].emplace_back(i, h);
    }
    offset[e + 1] = offset[e] + static_cast<std::uint32_t>(elems[e].size());
  }
  check_element_budget(offset[n], "random diagram");
  auto global = [&](ObjectId e, std::uint32_t i, MorphismId h) {
    const auto& v = elems[e];
    return offset[e] + static_cast<std::uint32_t>(
                           std::find(v.begin(), v.end(), std::make_pair(i, h)) - v.begin());
  };
  auto act = [&](MorphismId f, std::uint32_t x) {
    const ObjectId e = shape.src(f);
    const auto [i, h] = elems[e][x - offset[e]];
    return global(shape.dst(f), i, shape.then(h, f));
  };
  UnionFind uf(offset[n]);
  auto close = [&] {
    bool changed = true;
    while (changed) {
      changed = false;
      for (MorphismId f = static_cast<MorphismId>(n); f < shape.morphism_count(); ++f) {
        const ObjectId e = shape.src(f);
        for (std::uint32_t x = offset[e]; x < offset[e + 1]; ++x) {
          const std::uint32_t r = uf.find(x);
          if (r != x) changed |= uf.unite(act(f, x), act(f, r));
        }
      }
    }
  };
  const int percent = static_cast<int>(rng.below(4)) * 15;
  for (ObjectId e = 0; e < n; ++e) {
    for (std::uint32_t x = offset[e]; x < offset[e + 1]; ++x) {
      for (std::uint32_t y = x + 1; y < offset[e + 1]; ++y) {
        if (rng.chance(percent)) uf.unite(x, y);
      }
    }
  }
  close();
  for (ObjectId e = 0; e < n; ++e) {
    for (;;) {
      std::vector<std::uint32_t> roots;
      for (std::uint32_t x = offset[e]; x < offset[e + 1]; ++x) {
        if (uf.find(x) == x) roots.push_back(x);
      }
      if (roots.size() <= max_fiber) break;
      const std::size_t a = rng.below(roots.size());
      std::size_t b = rng.below(roots.size() - 1);
      if (b >= a) ++b;
      uf.unite(roots[a], roots[b]);
      close();
    }
  }
  std::vector<FiniteSet> sets;
  std::vector<std::vector<std::uint32_t>> local(n);
  for (ObjectId e = 0; e < n; ++e) {
    std::map<std::uint32_t, std::uint32_t> number;
    std::vector<std::string> names;
    local[e].resize(offset[e + 1] - offset[e]);
    for (std::uint32_t x = offset[e]; x < offset[e + 1]; ++x) {
      auto [it, inserted] = number.emplace(uf.find(x), static_cast<std::uint32_t>(number.size()));
      if (inserted) names.push_back("x" + std::to_string(it->second));
      local[e][x - offset[e]] = it->second;
    }
    sets.emplace_back(std::move(names));
  }
  std::vector<std::vector<std::uint32_t>> functions(shape.morphism_count());
  for (MorphismId f = static_cast<MorphismId>(n); f < shape.morphism_count(); ++f) {
    const ObjectId e = shape.src(f);
    functions[f].assign(sets[e].size(), 0);
    for (std::uint32_t x = offset[e]; x < offset[e + 1]; ++x) {
      const std::uint32_t y = act(f, x);
      functions[f][local[e][x - offset[e]]] = local[shape.dst(f)][y - offset[shape.dst(f)]];
    }
  }
  return make_diagram(shape, std::move(sets), std::move(functions));
}

}  // namespace finreedy
