#include <gtest/gtest.h>

#include "oracles.hpp"
#include "suite.hpp"

using namespace finreedy;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Parse;
}

/// Diagram with sets {0, ..., n-1} and functions given by morphism name.
SetDiagram make(const FiniteCategory& shape, const std::vector<std::size_t>& sizes,
                const std::map<std::string, std::vector<std::uint32_t>>& functions) {
  std::vector<FiniteSet> sets;
  for (auto n : sizes) sets.push_back(range_set(n));
  std::vector<std::vector<std::uint32_t>> fn(shape.morphism_count());
  for (const auto& [name, values] : functions) fn[shape.morphism(name)] = values;
  return make_diagram(shape, std::move(sets), std::move(fn));
}

FunctorData point_inclusion(const FiniteCategory& c, const std::string& object) {
  const FiniteCategory point = suite::discrete(1);
  return validate_functor(point, c, {c.object(object)}, {c.identity(c.object(object))});
}

/// γ ↦ Hom_inv(γ, β) on the opposite of the square, by precomposition.
SetDiagram square_hom_diagram() {
  const ReedyFunctor g = example_square();
  const ReedyCategory& r = g.target();
  const auto& d = r.base();
  const FiniteCategory shape = opposite(d);
  const ObjectId beta = d.object("β");
  std::vector<std::vector<MorphismId>> homs(d.object_count());
  std::vector<FiniteSet> sets;
  for (ObjectId a = 0; a < d.object_count(); ++a) {
    std::vector<std::string> names;
    for (MorphismId h : d.hom(a, beta)) {
      if (!r.in_inverse(h)) continue;
      homs[a].push_back(h);
      names.push_back(d.morphism_name(h));
    }
    sets.emplace_back(std::move(names));
  }
  std::vector<std::vector<std::uint32_t>> fn(shape.morphism_count());
  for (MorphismId f = static_cast<MorphismId>(d.object_count()); f < d.morphism_count(); ++f) {
    // f^op: dst f -> src f sends h to h∘f.
    for (MorphismId h : homs[d.dst(f)]) {
      const MorphismId hf = d.then(f, h);
      fn[f].push_back(static_cast<std::uint32_t>(std::find(homs[d.src(f)].begin(), homs[d.src(f)].end(), hf) -
                                                  homs[d.src(f)].begin()));
    }
  }
  return make_diagram(shape, std::move(sets), std::move(fn));
}

struct CofinalCase {
  std::string name;
  FunctorData functor;
};

/// Left cofinal functors: identities, initial-object inclusions and the
/// matching-category functors of fibering catalog entries.
std::vector<CofinalCase> left_cofinal_suite() {
  std::vector<CofinalCase> out;
  for (const auto& [name, s] : suite::small_shapes()) out.push_back({"identity-" + name, identity_functor(s)});
  out.push_back({"initial-arrow", point_inclusion(suite::walking_arrow(), "a")});
  out.push_back({"initial-span", point_inclusion(suite::span(), "c")});
  out.push_back({"initial-chain", point_inclusion(suite::chain3(), "a")});
  for (const auto& [name, g] : suite::catalog_functors()) {
    if (!is_fibering(g).holds) continue;
    for (ObjectId a = 0; a < g.source().base().object_count(); ++a) {
      MatchingPushforward p = matching_pushforward(g, a, true);
      if (p.matching.labels.empty()) continue;
      out.push_back({name + "-matching-" + g.source().base().object_name(a), p.functor});
    }
  }
  return out;
}

}  // namespace

TEST(SetDiag, ValidateDiagram) {
  for (const auto& [name, s] : suite::small_shapes()) {
    EXPECT_NO_THROW(constant_diagram(s, range_set(1))) << name;
  }
  const FiniteCategory arrow = suite::walking_arrow();
  EXPECT_EQ(kind_of([&] { make(arrow, {2, 2}, {{"f", {0}}}); }), ErrorKind::MissingFunction);
  EXPECT_EQ(kind_of([&] { make(arrow, {2, 2}, {{"f", {0, 5}}}); }), ErrorKind::BadElement);
  RawDiagram raw;
  raw.sets = {{"a", {"x", "y"}}, {"b", {"z"}}};
  raw.functions = {{"f", {{"x", "z"}}}};
  EXPECT_EQ(kind_of([&] { validate_diagram(arrow, raw); }), ErrorKind::MissingFunction);
  raw.functions = {{"f", {{"x", "z"}, {"y", "w"}}}};
  EXPECT_EQ(kind_of([&] { validate_diagram(arrow, raw); }), ErrorKind::BadElement);
  raw.functions = {{"f", {{"x", "z"}, {"y", "z"}}}};
  EXPECT_NO_THROW(validate_diagram(arrow, raw));
  EXPECT_EQ(kind_of([&] { make(suite::idempotent(), {2}, {{"e", {1, 0}}}); }), ErrorKind::NotFunctorial);
  EXPECT_EQ(kind_of([&] { make(suite::chain3(), {1, 2, 2}, {{"f", {0}}, {"g", {1, 0}}, {"gf", {0}}}); }),
            ErrorKind::NotFunctorial);
  const SetDiagram hom = square_hom_diagram();
  EXPECT_EQ(hom.set(hom.shape().object("α")).size(), 1u);
  EXPECT_EQ(hom.set(hom.shape().object("β")).size(), 1u);
}

TEST(SetDiag, LimitExamples) {
  const LimitResult product = limit(make(suite::discrete(2), {2, 3}, {}));
  EXPECT_EQ(product.set.size(), 6u);
  const LimitResult equalizer = limit(make(suite::parallel_pair(), {2, 2}, {{"f", {0, 1}}, {"g", {1, 0}}}));
  EXPECT_EQ(equalizer.set.size(), 0u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SetDiagram x = random_set_diagram(suite::span(), seed);
    const LimitResult l = limit(x);
    EXPECT_TRUE(l.projections[x.shape().object("c")].is_bijective());
  }
}

TEST(SetDiag, ColimitExamples) {
  EXPECT_EQ(colimit(make(suite::discrete(2), {2, 3}, {})).set.size(), 5u);
  EXPECT_EQ(colimit(make(suite::parallel_pair(), {2, 2}, {{"f", {0, 1}}, {"g", {1, 0}}})).set.size(), 1u);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SetDiagram x = random_set_diagram(suite::cospan(), seed);
    const ColimitResult c = colimit(x);
    EXPECT_TRUE(c.injections[x.shape().object("c")].is_bijective());
  }
}

TEST(SetDiag, LimitsAndColimitsAreUniversalOnSmallShapes) {
  std::size_t cases = 0;
  for (const auto& [name, s] : suite::small_shapes()) {
    std::vector<SetDiagram> diagrams = oracle::all_diagrams(s, 3, 12);
    for (std::uint64_t seed = 0; seed < 8; ++seed) diagrams.push_back(random_set_diagram(s, seed, 3));
    for (const auto& x : diagrams) {
      if (cases == 200) break;
      const LimitResult l = limit(x);
      EXPECT_TRUE(oracle::limit_is_universal(x, l)) << name;
      EXPECT_EQ(l.tuples, oracle::point_cones(x)) << name;
      EXPECT_TRUE(oracle::colimit_is_universal(x, colimit(x))) << name;
      ++cases;
    }
  }
  EXPECT_EQ(cases, 200u);
}

TEST(SetDiag, Restrict) {
  const SetDiagram x = random_set_diagram(suite::commuting_square(), 3);
  const SetDiagram same = restrict(identity_functor(x.shape()), x);
  EXPECT_EQ(diagram_body_json(same), diagram_body_json(x));

  const ReedyFunctor g = example_square();
  const SetDiagram hom = square_hom_diagram();
  const SetDiagram on_c = restrict(opposite(g.data()), hom);
  EXPECT_EQ(on_c.shape().object_count(), 3u);

  const ReedyFunctor collapse = arrow_collapse();
  const SetDiagram point = make(collapse.target().base(), {3}, {});
  const SetDiagram constant = restrict(collapse.data(), point);
  EXPECT_EQ(diagram_body_json(constant), diagram_body_json(constant_diagram(collapse.source().base(), range_set(3))));
  EXPECT_EQ(kind_of([&] { restrict(collapse.data(), x); }), ErrorKind::ShapeMismatch);
}

TEST(SetDiag, RestrictionMaps) {
  const SetDiagram x = random_set_diagram(suite::chain3(), 5);
  const SetFunction id = limit_restriction_map(identity_functor(x.shape()), x);
  for (std::uint32_t i = 0; i < id.map.size(); ++i) EXPECT_EQ(id.map[i], i);
  const SetFunction cid = colimit_corestriction_map(identity_functor(x.shape()), x);
  for (std::uint32_t i = 0; i < cid.map.size(); ++i) EXPECT_EQ(cid.map[i], i);

  const FiniteCategory pair = suite::discrete(2);
  const SetDiagram prod = make(pair, {2, 3}, {});
  const SetFunction r = limit_restriction_map(point_inclusion(pair, "o0"), prod);
  EXPECT_EQ(r.domain.size(), 6u);
  EXPECT_EQ(r.codomain.size(), 2u);
  EXPECT_FALSE(r.is_bijective());
  const SetFunction c = colimit_corestriction_map(point_inclusion(pair, "o0"), prod);
  EXPECT_FALSE(c.is_bijective());
}

TEST(SetDiag, CofinalityExamples) {
  const FunctorData id = identity_functor(suite::walking_arrow());
  EXPECT_TRUE(is_left_cofinal(id).holds);
  EXPECT_TRUE(is_right_cofinal(id).holds);
  const FunctorData terminal = point_inclusion(suite::walking_arrow(), "b");
  EXPECT_TRUE(is_right_cofinal(terminal).holds);
  const CofinalityVerdict left = is_left_cofinal(terminal);
  EXPECT_FALSE(left.holds);
  ASSERT_TRUE(left.failing.has_value());
  EXPECT_EQ(suite::walking_arrow().object_name(*left.failing), "a");
  EXPECT_EQ(left.components, 0u);

  // Two parallel maps a -> d keep a from being initial.
  const FiniteCategory open = suite::open_square();
  const CofinalityVerdict two = is_left_cofinal(point_inclusion(open, "a"));
  EXPECT_FALSE(two.holds);
  ASSERT_TRUE(two.failing.has_value());
  EXPECT_EQ(open.object_name(*two.failing), "d");
  EXPECT_EQ(two.components, 2u);
  const SetDiagram x = make(open, {1, 1, 1, 2}, {{"p", {0}}, {"q", {0}}, {"r", {0}}, {"s", {1}}, {"qp", {0}}, {"sr", {1}}});
  EXPECT_FALSE(limit_restriction_map(point_inclusion(open, "a"), x).is_bijective());
}

TEST(SetDiag, LeftCofinalFunctorsPreserveLimits) {
  const auto cases = left_cofinal_suite();
  EXPECT_GT(cases.size(), 20u);
  for (const auto& [name, g] : cases) {
    ASSERT_TRUE(is_left_cofinal(g).holds) << name;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SetDiagram x = random_set_diagram(g.target(), seed, 3);
      EXPECT_TRUE(limit_restriction_map(g, x).is_bijective()) << name << " seed " << seed;
    }
  }
}

TEST(SetDiag, RightCofinalFunctorsPreserveColimits) {
  std::vector<CofinalCase> cases;
  for (auto& c : left_cofinal_suite()) cases.push_back({c.name + "-op", opposite(c.functor)});
  cases.push_back({"terminal-arrow", point_inclusion(suite::walking_arrow(), "b")});
  cases.push_back({"terminal-cospan", point_inclusion(suite::cospan(), "c")});
  for (const auto& [name, g] : cases) {
    ASSERT_TRUE(is_right_cofinal(g).holds) << name;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const SetDiagram x = random_set_diagram(g.target(), seed, 3);
      EXPECT_TRUE(colimit_corestriction_map(g, x).is_bijective()) << name << " seed " << seed;
    }
  }
}

TEST(SetDiag, CofinalityMatchesCommaConnectivity) {
  for (const auto& [name, g] : suite::random_functors(1, 60)) {
    const FunctorData& f = g.data();
    bool left = true;
    bool right = true;
    for (ObjectId b = 0; b < f.target().object_count(); ++b) {
      left &= oracle::component_count(comma_over(f, b).category) == 1;
      right &= oracle::component_count(comma_under(f, b).category) == 1;
    }
    EXPECT_EQ(is_left_cofinal(f).holds, left) << name;
    EXPECT_EQ(is_right_cofinal(f).holds, right) << name;
    if (left) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_TRUE(limit_restriction_map(f, random_set_diagram(f.target(), seed)).is_bijective()) << name;
      }
    }
  }
}

TEST(SetDiag, MatchingObjects) {
  const ReedyCategory d2 = delta_truncated(2);
  const ObjectId zero = d2.base().object("[0]");
  const ObjectId top = d2.base().object("[2]");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SetDiagram x = random_set_diagram(d2.base(), seed, 3);
    const MatchingObject m0 = matching_object(d2, x, zero);
    EXPECT_EQ(m0.limit.set.size(), 1u);
    const MatchingObject m = matching_object(d2, x, top);
    EXPECT_EQ(m.limit.tuples, oracle::matching_by_formula(d2, x, top));
    EXPECT_TRUE(oracle::limit_is_universal(restrict(slice_projection(matching_category(d2, top), d2.base(), true), x),
                                           m.limit));
  }
  const MatchingObject c = matching_object(d2, constant_diagram(d2.base(), range_set(3)), top);
  EXPECT_EQ(c.limit.set.size(), 3u);
  EXPECT_TRUE(c.map.is_bijective());
}

TEST(SetDiag, MatchingObjectsOnRandomReedyCategories) {
  for (const auto& [name, g] : suite::random_functors(1, 40)) {
    const ReedyCategory& r = g.source();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SetDiagram x = random_set_diagram(r.base(), seed, 2);
      for (ObjectId a = 0; a < r.base().object_count(); ++a) {
        EXPECT_EQ(matching_object(r, x, a).limit.tuples, oracle::matching_by_formula(r, x, a)) << name;
        EXPECT_EQ(latching_object(r, x, a).colimit.set.size(), oracle::latching_class_count(r, x, a)) << name;
      }
    }
  }
}

TEST(SetDiag, LatchingObjects) {
  const ReedyCategory d2 = delta_truncated(2);
  const ObjectId zero = d2.base().object("[0]");
  const ObjectId top = d2.base().object("[2]");
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SetDiagram x = random_set_diagram(d2.base(), seed, 3);
    EXPECT_EQ(latching_object(d2, x, zero).colimit.set.size(), 0u);
    EXPECT_EQ(latching_object(d2, x, top).colimit.set.size(), oracle::latching_class_count(d2, x, top));
  }
  const LatchingObject one = latching_object(d2, constant_diagram(d2.base(), range_set(1)), top);
  EXPECT_EQ(one.colimit.set.size(), 1u);
}

TEST(SetDiag, PullbackAndPushout) {
  const FiniteSet two = range_set(2);
  const FiniteSet point = range_set(1);
  const PullbackResult graph = pullback(identity_function(two), identity_function(two));
  EXPECT_EQ(graph.set.size(), 2u);
  const SetFunction to_point{two, point, {0, 0}};
  EXPECT_EQ(pullback(to_point, to_point).set.size(), 4u);
  const SetFunction in0{point, two, {0}};
  const SetFunction in1{point, two, {1}};
  EXPECT_EQ(pushout(in0, in1).set.size(), 3u);
  EXPECT_EQ(kind_of([&] { pullback(to_point, in0); }), ErrorKind::ShapeMismatch);
  EXPECT_EQ(kind_of([&] { pushout(to_point, in0); }), ErrorKind::ShapeMismatch);
}

TEST(SetDiag, NaturalityIsChecked) {
  const FiniteCategory arrow = suite::walking_arrow();
  const SetDiagram x = make(arrow, {2, 2}, {{"f", {0, 1}}});
  const SetDiagram y = make(arrow, {2, 2}, {{"f", {1, 0}}});
  EXPECT_EQ(kind_of([&] { validate_natural(x, y, {{0, 1}, {0, 1}}); }), ErrorKind::NotNatural);
  EXPECT_NO_THROW(validate_natural(x, y, {{0, 1}, {1, 0}}));
}

TEST(SetDiag, RelativeMapsOfIdentitiesAreBijective) {
  const ReedyCategory d2 = delta_truncated(2);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SetDiagram x = random_set_diagram(d2.base(), seed, 3);
    const NaturalTransformation id = identity_transformation(x);
    for (ObjectId a = 0; a < d2.base().object_count(); ++a) {
      EXPECT_TRUE(relative_matching_map(d2, id, a).map.is_bijective());
      EXPECT_TRUE(relative_latching_map(d2, id, a).map.is_bijective());
    }
  }
}

TEST(SetDiag, RelativeMapsReduceToAbsoluteMaps) {
  const ReedyCategory d2 = delta_truncated(2);
  const FiniteCategory& shape = d2.base();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SetDiagram x = random_set_diagram(shape, seed, 3);
    const SetDiagram point = constant_diagram(shape, range_set(1));
    const SetDiagram empty = constant_diagram(shape, range_set(0));
    std::vector<std::vector<std::uint32_t>> to_point, from_empty(shape.object_count());
    for (ObjectId a = 0; a < shape.object_count(); ++a) to_point.emplace_back(x.set(a).size(), 0);
    const NaturalTransformation bang = validate_natural(x, point, to_point);
    const NaturalTransformation zero = validate_natural(empty, x, from_empty);
    for (ObjectId a = 0; a < shape.object_count(); ++a) {
      const MatchingObject m = matching_object(d2, x, a);
      const RelativeMap rm = relative_matching_map(d2, bang, a);
      EXPECT_EQ(rm.corner.size(), m.limit.set.size());
      EXPECT_EQ(rm.map.is_injective(), m.map.is_injective());
      EXPECT_EQ(rm.map.is_surjective(), m.map.is_surjective());
      const LatchingObject l = latching_object(d2, x, a);
      const RelativeMap rl = relative_latching_map(d2, zero, a);
      EXPECT_EQ(rl.corner.size(), l.colimit.set.size());
      EXPECT_EQ(rl.map.map, l.map.map);
    }
  }
}

namespace {

/// Pointwise product X × Z with pairs (i, j) numbered i·|Z_a| + j.
SetDiagram pointwise_product(const SetDiagram& x, const SetDiagram& z) {
  const auto& c = x.shape();
  std::vector<FiniteSet> sets;
  for (ObjectId a = 0; a < c.object_count(); ++a) sets.push_back(range_set(x.set(a).size() * z.set(a).size()));
  std::vector<std::vector<std::uint32_t>> fn(c.morphism_count());
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    const auto nz = static_cast<std::uint32_t>(z.set(c.src(f)).size());
    const auto mz = static_cast<std::uint32_t>(z.set(c.dst(f)).size());
    for (std::uint32_t i = 0; i < x.set(c.src(f)).size(); ++i) {
      for (std::uint32_t j = 0; j < nz; ++j) fn[f].push_back(x.apply(f, i) * mz + z.apply(f, j));
    }
  }
  return make_diagram(c, std::move(sets), std::move(fn));
}

}  // namespace

TEST(SetDiag, RelativeMatchingMapOfProjectionMatchesBruteForce) {
  std::size_t failing = 0;
  std::size_t checked = 0;
  for (const auto& [name, g] : suite::random_functors(1, 30)) {
    const ReedyCategory& r = g.source();
    const auto& c = r.base();
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const SetDiagram x = random_set_diagram(c, seed, 2);
      const SetDiagram z = random_set_diagram(c, seed + 100, 2);
      const SetDiagram s = pointwise_product(x, z);
      std::vector<std::vector<std::uint32_t>> proj;
      for (ObjectId a = 0; a < c.object_count(); ++a) {
        const auto nz = static_cast<std::uint32_t>(z.set(a).size());
        proj.emplace_back();
        for (std::uint32_t k = 0; k < s.set(a).size(); ++k) proj.back().push_back(k / nz);
      }
      const NaturalTransformation f = validate_natural(s, x, proj);
      for (ObjectId alpha = 0; alpha < c.object_count(); ++alpha) {
        std::vector<MorphismId> nus;
        for (MorphismId m = 0; m < c.morphism_count(); ++m) {
          if (c.src(m) == alpha && !c.is_identity(m) && r.in_inverse(m)) nus.push_back(m);
        }
        // Corner: pairs (y, t) with y in X_α and t in M_α S agreeing in M_α X.
        const auto tuples = oracle::matching_by_formula(r, s, alpha);
        std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, std::size_t> preimages;
        for (std::uint32_t y = 0; y < x.set(alpha).size(); ++y) {
          for (const auto& t : tuples) {
            bool agree = true;
            for (std::size_t k = 0; k < nus.size(); ++k) {
              agree &= x.apply(nus[k], y) == proj[c.dst(nus[k])][t[k]];
            }
            if (agree) preimages[{y, t}] = 0;
          }
        }
        for (std::uint32_t v = 0; v < s.set(alpha).size(); ++v) {
          std::vector<std::uint32_t> t;
          for (MorphismId nu : nus) t.push_back(s.apply(nu, v));
          ++preimages.at({proj[alpha][v], t});
        }
        bool bijective = true;
        for (const auto& [key, count] : preimages) bijective &= count == 1;
        const RelativeMap rm = relative_matching_map(r, f, alpha);
        EXPECT_EQ(rm.corner.size(), preimages.size()) << name;
        EXPECT_EQ(rm.map.is_bijective(), bijective) << name;
        failing += bijective ? 0 : 1;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100u);
  EXPECT_GT(failing, 0u);
}

TEST(SetDiag, KanExtensionExamples) {
  const FunctorData id = identity_functor(suite::chain3());
  const SetDiagram x = random_set_diagram(suite::chain3(), 4);
  EXPECT_TRUE(oracle::isomorphic(left_kan(id, x), x));
  EXPECT_TRUE(oracle::isomorphic(right_kan(id, x), x));

  const ReedyFunctor collapse = arrow_collapse();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SetDiagram y = random_set_diagram(collapse.source().base(), seed);
    EXPECT_EQ(left_kan(collapse.data(), y).set(0).size(), colimit(y).set.size());
    EXPECT_EQ(right_kan(collapse.data(), y).set(0).size(), limit(y).set.size());
  }
}

TEST(SetDiag, KanExtensionsAreAdjoint) {
  std::vector<suite::NamedFunctor> functors = suite::catalog_functors();
  for (auto& f : suite::random_functors(1, 20)) functors.push_back(f);
  std::size_t left = 0;
  std::size_t right = 0;
  for (const auto& [name, g] : functors) {
    const FunctorData& f = g.data();
    if (f.source().object_count() > 5 || f.target().object_count() > 5) continue;
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      const SetDiagram x = random_set_diagram(f.source(), seed, 2);
      const SetDiagram y = random_set_diagram(f.target(), seed + 50, 2);
      const SetDiagram lan = left_kan(f, x);
      const SetDiagram ran = right_kan(f, x);
      const SetDiagram gy = restrict(f, y);
      EXPECT_EQ(oracle::count_natural(lan, y), oracle::count_natural(x, gy)) << name;
      EXPECT_EQ(oracle::count_natural(y, ran), oracle::count_natural(gy, x)) << name;
      ++left;
      ++right;
    }
  }
  EXPECT_GE(left, 30u);
  EXPECT_GE(right, 30u);
}

TEST(SetDiag, SkeletonAndCoskeleton) {
  const ReedyCategory d2 = delta_truncated(2);
  const auto& c = d2.base();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SetDiagram x = random_set_diagram(c, seed, 3);
    EXPECT_TRUE(oracle::isomorphic(skeleton(d2, 2, x), x));
    EXPECT_TRUE(oracle::isomorphic(coskeleton(d2, 2, x), x));
    for (int n = 0; n <= 1; ++n) {
      const SetDiagram sk = skeleton(d2, n, x);
      const SetDiagram cosk = coskeleton(d2, n, x);
      for (ObjectId a = 0; a < c.object_count(); ++a) {
        if (d2.degree(a) > n) continue;
        EXPECT_EQ(sk.set(a).size(), x.set(a).size());
        EXPECT_EQ(cosk.set(a).size(), x.set(a).size());
      }
      // Above degree n the matching map of the coskeleton and the latching map
      // of the skeleton are bijections.
      const ObjectId top = c.object("[2]");
      EXPECT_TRUE(matching_object(d2, cosk, top).map.is_bijective());
      EXPECT_TRUE(latching_object(d2, sk, top).map.is_bijective());
    }
  }
}

TEST(SetDiag, MatchingIsoCheck) {
  std::size_t checked = 0;
  for (const auto& [name, g] : suite::fibering_with_kernel(1, 20)) {
    const auto& src = g.source().base();
    for (ObjectId a = 0; a < src.object_count(); ++a) {
      if (g_kernel(g, a).labels.empty()) continue;
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const MatchingIsoVerdict v = matching_iso_check(g, random_set_diagram(g.target().base(), seed), a);
        EXPECT_TRUE(v.bijective) << name;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50u);
  const ReedyFunctor square = example_square();
  const SetDiagram x = constant_diagram(square.target().base(), range_set(1));
  EXPECT_EQ(kind_of([&] { matching_iso_check(square, x, 0); }), ErrorKind::PreconditionFailed);
  const ReedyFunctor kernel = kernel_example();
  const SetDiagram y = constant_diagram(kernel.target().base(), range_set(2));
  for (ObjectId a = 0; a < kernel.source().base().object_count(); ++a) {
    if (g_kernel(kernel, a).labels.empty()) {
      EXPECT_EQ(kind_of([&] { matching_iso_check(kernel, y, a); }), ErrorKind::PreconditionFailed);
    } else {
      EXPECT_TRUE(matching_iso_check(kernel, y, a).bijective);
    }
  }
}
