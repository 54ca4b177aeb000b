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

std::uint64_t delta_count(int n, bool injective_only) {
  std::uint64_t total = 0;
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      total += injective_only ? oracle::binomial(b + 1, a + 1) : oracle::binomial(a + b + 1, a + 1);
    }
  }
  return total;
}

}  // namespace

TEST(Catalog, DeltaCounts) {
  const ReedyCategory d2 = delta_truncated(2);
  EXPECT_EQ(d2.base().object_count(), 3u);
  EXPECT_EQ(d2.base().morphism_count(), 31u);
  EXPECT_EQ(d2.base().hom(d2.base().object("[1]"), d2.base().object("[2]")).size(), 6u);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_EQ(delta_truncated(n).base().morphism_count(), delta_count(n, false)) << n;
    EXPECT_EQ(delta_rest_truncated(n).category.base().morphism_count(), delta_count(n, true)) << n;
  }
}

TEST(Catalog, MonotoneMapsMatchBruteForce) {
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      const auto maps = monotone_maps(a, b);
      const auto brute = oracle::monotone_functions(a, b);
      ASSERT_EQ(maps.size(), brute.size());
      EXPECT_EQ(maps.size(), oracle::binomial(a + b + 1, a + 1));
      for (std::size_t i = 0; i < maps.size(); ++i) {
        std::vector<std::uint32_t> image(maps[i].image.begin(), maps[i].image.end());
        EXPECT_EQ(image, brute[i]);
      }
    }
  }
}

TEST(Catalog, DeltaNamesAndDegrees) {
  const ReedyCategory d3 = delta_truncated(3);
  const auto& c = d3.base();
  for (int k = 0; k <= 3; ++k) {
    const ObjectId o = c.object(delta_object_name(k));
    EXPECT_EQ(d3.degree(o), k);
    EXPECT_EQ(c.morphism_name(c.identity(o)), "id:" + delta_object_name(k));
  }
  EXPECT_EQ(delta_morphism_name({0, 1, {1}}), "d[0->1]:(1)");
  EXPECT_EQ(kind_of([] { delta_truncated(-1); }), ErrorKind::PreconditionFailed);
  EXPECT_EQ(kind_of([] { delta_truncated(13); }), ErrorKind::SizeLimit);
}

TEST(Catalog, DeltaRestInclusion) {
  const ReedyInclusion rest = delta_rest_truncated(2);
  EXPECT_EQ(rest.category.base().morphism_count(), 11u);
  EXPECT_EQ(rest.inclusion.source().base().morphism_count(), 11u);
  EXPECT_EQ(rest.inclusion.target().base().morphism_count(), 31u);
  for (ObjectId a = 0; a < rest.category.base().object_count(); ++a) {
    EXPECT_TRUE(matching_category(rest.category, a).labels.empty());
  }
  EXPECT_TRUE(is_fibering(rest.inclusion).holds);
}

TEST(Catalog, PowerReedy) {
  const ReedyCategory d1 = delta_truncated(1);
  const ReedyCategory p1 = power_reedy(d1, 1);
  EXPECT_TRUE(find_isomorphism(p1.base(), d1.base()).has_value());
  const ReedyCategory p2 = power_reedy(d1, 2);
  EXPECT_EQ(p2.base().object_count(), 4u);
  EXPECT_EQ(p2.base().morphism_count(), 49u);
  EXPECT_EQ(p2.degree(p2.base().object("[1]×[1]")), 2);
  EXPECT_EQ(power_reedy(delta_truncated(2), 2).base().morphism_count(), 31u * 31u);
  EXPECT_EQ(kind_of([&] { power_reedy(d1, 0); }), ErrorKind::PreconditionFailed);
}

TEST(Catalog, Diagonal) {
  const ReedyFunctor one = diagonal_functor(2, 1);
  EXPECT_TRUE(find_isomorphism(one.source().base(), one.target().base()).has_value());
  for (int n = 1; n <= 2; ++n) {
    for (int m = 1; m <= 3; ++m) {
      if (n == 2 && m == 3) continue;
      const ReedyFunctor d = diagonal_functor(n, m);
      EXPECT_TRUE(is_fibering(d).holds) << n << "," << m;
      EXPECT_TRUE(is_cofibering(d).holds) << n << "," << m;
    }
  }
}

TEST(Catalog, Slice) {
  const ReedyCategory d1 = delta_truncated(1);
  const ReedyFunctor all = slice_inclusion({d1, d1}, {0, 1}, {});
  EXPECT_TRUE(find_isomorphism(all.source().base(), all.target().base()).has_value());
  const ReedyFunctor first = slice_inclusion({d1, d1}, {0}, {{1, 0}});
  EXPECT_EQ(first.source().base().object_count(), 2u);
  EXPECT_EQ(first.target().base().object_name(first.on_object(1)), "[1]×[0]");
  EXPECT_EQ(kind_of([&] { slice_inclusion({d1, d1}, {0}, {}); }), ErrorKind::DanglingReference);
  EXPECT_EQ(kind_of([&] { slice_inclusion({d1, d1}, {2}, {{0, 0}, {1, 0}}); }), ErrorKind::DanglingReference);
  EXPECT_EQ(kind_of([&] { slice_inclusion({d1, d1}, {}, {{0, 0}, {1, 0}}); }), ErrorKind::PreconditionFailed);
}

TEST(Catalog, Square) {
  const ReedyFunctor g = example_square();
  EXPECT_EQ(g.source().base().object_count(), 3u);
  EXPECT_EQ(g.target().base().object_count(), 4u);
  EXPECT_EQ(g.target().base().morphism_count(), 9u);
  EXPECT_FALSE(is_fibering(g).holds);
  EXPECT_TRUE(is_cofibering(g).holds);
  EXPECT_TRUE(is_fibering(opposite(g)).holds);
  EXPECT_FALSE(is_cofibering(opposite(g)).holds);
}

TEST(Catalog, Truncation) {
  const ReedyCategory d2 = delta_truncated(2);
  const ReedyFunctor whole = truncation_inclusion(d2, 5);
  EXPECT_EQ(whole.source().base().morphism_count(), 31u);
  for (MorphismId f = 0; f < 31; ++f) EXPECT_EQ(whole.on_morphism(f), f);
  const ReedyFunctor low = truncation_inclusion(d2, 1);
  EXPECT_EQ(low.source().base().morphism_count(), delta_count(1, false));
  EXPECT_TRUE(is_fibering(low).holds);
  EXPECT_TRUE(is_cofibering(low).holds);
  EXPECT_EQ(kind_of([&] { truncation_inclusion(d2, -1); }), ErrorKind::PreconditionFailed);
}

TEST(Catalog, KernelExampleAndCollapse) {
  const ReedyFunctor k = kernel_example();
  EXPECT_EQ(k.source().base().object_count(), 5u);
  EXPECT_EQ(k.target().base().object_count(), 2u);
  EXPECT_TRUE(is_fibering(k).holds);
  const ReedyFunctor c = arrow_collapse();
  EXPECT_EQ(c.target().base().object_count(), 1u);
}

TEST(Catalog, RandomIsDeterministic) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ReedyFunctor a = random_reedy_functor(seed);
    const ReedyFunctor b = random_reedy_functor(seed);
    EXPECT_EQ(category_json(a.source()), category_json(b.source()));
    EXPECT_EQ(category_json(a.target()), category_json(b.target()));
    EXPECT_EQ(functor_json(a.data(), "s", "t"), functor_json(b.data(), "s", "t"));
    EXPECT_EQ(diagram_body_json(random_set_diagram(a.target().base(), seed)),
              diagram_body_json(random_set_diagram(b.target().base(), seed)));
  }
}

TEST(Catalog, RandomRespectsBounds) {
  RandomBounds bounds;
  bounds.max_objects = 5;
  bounds.max_morphisms = 25;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ReedyFunctor g = random_reedy_functor(seed, bounds);
    EXPECT_LE(g.source().base().object_count(), bounds.max_objects) << seed;
    EXPECT_LE(g.target().base().object_count(), bounds.max_objects) << seed;
    EXPECT_LE(g.source().base().morphism_count(), bounds.max_morphisms) << seed;
    EXPECT_LE(g.target().base().morphism_count(), bounds.max_morphisms) << seed;
  }
}

TEST(Catalog, JsonRoundTrip) {
  std::vector<ReedyCategory> cats = {delta_truncated(2), delta_rest_truncated(3).category,
                                     power_reedy(delta_truncated(1), 2), example_square().target()};
  for (std::uint64_t seed = 0; seed < 30; ++seed) cats.push_back(random_reedy_functor(seed).target());
  for (const auto& r : cats) {
    const Json j = category_json(r);
    const CategoryFile back = parse_category(j);
    ASSERT_TRUE(back.reedy.has_value());
    EXPECT_EQ(category_json(*back.reedy), j);
    EXPECT_EQ(dump(category_json(*back.reedy)), dump(j));
  }
}

TEST(Catalog, EmptyCategoryIsReedy) {
  const CategoryFile empty = parse_category(Json::parse(R"({"objects":[],"morphisms":[],"composition":[]})"));
  ASSERT_TRUE(empty.reedy.has_value());
  EXPECT_EQ(empty.reedy->base().object_count(), 0u);
  const CategoryFile plain = parse_category(Json::parse(R"({"objects":[{"id":"a"}],"morphisms":[],"composition":[]})"));
  EXPECT_FALSE(plain.reedy.has_value());
}
