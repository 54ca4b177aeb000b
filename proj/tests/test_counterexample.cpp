#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "suite.hpp"

using namespace finreedy;

namespace {

std::vector<std::string> names(const ReedyFunctor& g, const std::vector<FactorizationLabel>& s) {
  std::vector<std::string> out;
  for (const auto& l : s) out.push_back(label_name(g, l));
  return out;
}

/// Brute-force S: every pair (ν, μ) with ν a non-identity inverse map out of
/// α in the source and μ: Gγ -> β inverse or identity in the target.
std::size_t brute_S_size(const ReedyFunctor& g, ObjectId alpha, ObjectId beta) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::size_t n = 0;
  for (MorphismId nu = 0; nu < src.morphism_count(); ++nu) {
    if (src.src(nu) != alpha || src.is_identity(nu) || !g.source().in_inverse(nu)) continue;
    for (MorphismId mu = 0; mu < tgt.morphism_count(); ++mu) {
      if (tgt.src(mu) == g.on_object(src.dst(nu)) && tgt.dst(mu) == beta && g.target().in_inverse(mu)) ++n;
    }
  }
  return n;
}

/// Brute-force number of classes of S: graph search over the generating
/// relation (ν, μ'∘Gτ) ~ (τν, μ').
std::size_t brute_T_size(const ReedyFunctor& g, const std::vector<FactorizationLabel>& s) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::vector<std::vector<std::size_t>> adj(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (MorphismId tau = 0; tau < src.morphism_count(); ++tau) {
        if (!g.source().in_inverse(tau) || src.src(tau) != src.dst(s[i].nu)) continue;
        if (src.compose(s[i].nu, tau) != s[j].nu) continue;
        if (tgt.compose(g.on_morphism(tau), s[j].mu) != s[i].mu) continue;
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }
  }
  std::vector<bool> seen(s.size(), false);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (seen[i]) continue;
    ++classes;
    std::vector<std::size_t> stack{i};
    seen[i] = true;
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return classes;
}

/// Index map by name: each Hom_inv(Gα, β) element with the T classes over
/// it, each class given as its set of labels.
std::map<std::string, std::set<std::set<std::string>>> fibres(const ReedyFunctor& g, const IndexReport& r) {
  std::vector<std::set<std::string>> classes(r.t.count());
  for (std::size_t i = 0; i < r.s.size(); ++i) classes[r.t.class_of[i]].insert(label_name(g, r.s[i]));
  std::map<std::string, std::set<std::set<std::string>>> out;
  for (MorphismId h : r.homs) out[g.target().base().morphism_name(h)];
  for (std::size_t k = 0; k < classes.size(); ++k) {
    out[g.target().base().morphism_name(r.homs.at(r.index.map[k]))].insert(classes[k]);
  }
  return out;
}

std::vector<suite::NamedFunctor> everything() {
  auto v = suite::with_opposites(suite::catalog_functors());
  for (auto& f : suite::random_functors(1, 150)) v.push_back(f);
  return v;
}

}  // namespace

TEST(Counterexample, SquareS) {
  const ReedyFunctor g = example_square();
  const ObjectId alpha = g.source().base().object("α");
  const ObjectId beta = g.target().base().object("β");
  const auto s = build_S(g, alpha, beta);
  EXPECT_EQ(names(g, s), (std::vector<std::string>{"(p,q)", "(r,s)"}));
  const TPartition t = collapse_T(g, s);
  EXPECT_EQ(t.count(), 2u);
  EXPECT_TRUE(build_S(g, g.source().base().object("γ"), beta).empty());
}

TEST(Counterexample, SquareIndexMap) {
  const ReedyFunctor g = example_square();
  const IndexReport r = match_prod_check(g, g.source().base().object("α"), g.target().base().object("β"));
  EXPECT_TRUE(r.match_prod_ok);
  EXPECT_FALSE(r.injective);
  ASSERT_EQ(r.homs.size(), 1u);
  EXPECT_EQ(g.target().base().morphism_name(r.homs[0]), "qp");
  EXPECT_EQ(r.index.map, (std::vector<std::uint32_t>{0, 0}));
  ASSERT_EQ(r.per_tau.size(), 1u);
  EXPECT_EQ(r.per_tau[0].components, 2u);
}

TEST(Counterexample, SquareWitness) {
  const ReedyFunctor g = example_square();
  const auto w = nonfibrancy_witness(g);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(g.source().base().object_name(w->alpha), "α");
  EXPECT_EQ(g.target().base().object_name(w->beta), "β");
  EXPECT_EQ(g.target().base().morphism_name(w->sigma), "qp");
  EXPECT_EQ(label_name(g, w->first), "(p,q)");
  EXPECT_EQ(label_name(g, w->second), "(r,s)");
}

TEST(Counterexample, NoWitnessForFiberingCatalogEntries) {
  EXPECT_FALSE(nonfibrancy_witness(delta_rest_truncated(3).inclusion).has_value());
  EXPECT_FALSE(nonfibrancy_witness(diagonal_functor(2, 2)).has_value());
  EXPECT_FALSE(nonfibrancy_witness(kernel_example()).has_value());
}

TEST(Counterexample, VacuousAnchors) {
  const ReedyFunctor g = example_square();
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  for (ObjectId a = 0; a < src.object_count(); ++a) {
    for (ObjectId b = 0; b < tgt.object_count(); ++b) {
      const IndexReport r = match_prod_check(g, a, b);
      EXPECT_TRUE(r.match_prod_ok);
      if (r.homs.empty()) {
        EXPECT_EQ(r.t.count(), 0u);
        EXPECT_TRUE(r.injective);
      }
    }
  }
}

TEST(Counterexample, MatchProdHoldsEverywhere) {
  std::size_t anchors = 0;
  for (const auto& [name, g] : everything()) {
    for (ObjectId a = 0; a < g.source().base().object_count(); ++a) {
      for (ObjectId b = 0; b < g.target().base().object_count(); ++b) {
        const IndexReport r = match_prod_check(g, a, b);
        EXPECT_TRUE(r.match_prod_ok) << name;
        std::size_t total = 0;
        for (const auto& t : r.per_tau) total += t.components;
        EXPECT_EQ(r.t.count(), total) << name;
        EXPECT_EQ(r.s.size(), brute_S_size(g, a, b)) << name;
        EXPECT_EQ(r.t.count(), brute_T_size(g, r.s)) << name;
        ++anchors;
      }
    }
  }
  EXPECT_GT(anchors, 1000u);
}

TEST(Counterexample, InjectiveIndexMapsCharacterizeFibering) {
  std::size_t fibering = 0;
  std::size_t not_fibering = 0;
  for (const auto& [name, g] : everything()) {
    bool all_injective = true;
    for (ObjectId a = 0; a < g.source().base().object_count(); ++a) {
      for (ObjectId b = 0; b < g.target().base().object_count(); ++b) {
        all_injective &= index_map(g, a, b).injective;
      }
    }
    const bool holds = is_fibering(g).holds;
    EXPECT_EQ(all_injective, holds) << name;
    EXPECT_EQ(nonfibrancy_witness(g).has_value(), !holds) << name;
    (holds ? fibering : not_fibering) += 1;
  }
  EXPECT_GT(fibering, 20u);
  EXPECT_GT(not_fibering, 10u);
}

TEST(Counterexample, WitnessClassesAreDistinctOverSigma) {
  for (const auto& [name, g] : everything()) {
    const auto w = nonfibrancy_witness(g);
    if (!w) continue;
    const auto& src = g.source().base();
    const auto& tgt = g.target().base();
    EXPECT_NE(w->first, w->second) << name;
    for (const auto& l : {w->first, w->second}) {
      EXPECT_EQ(src.src(l.nu), w->alpha) << name;
      EXPECT_EQ(tgt.dst(l.mu), w->beta) << name;
      EXPECT_EQ(tgt.then(g.on_morphism(l.nu), l.mu), w->sigma) << name;
    }
    const IndexReport r = index_map(g, w->alpha, w->beta);
    const auto s = r.s;
    const auto pos = [&](const FactorizationLabel& l) {
      return static_cast<std::size_t>(std::find(s.begin(), s.end(), l) - s.begin());
    };
    EXPECT_NE(r.t.class_of[pos(w->first)], r.t.class_of[pos(w->second)]) << name;
  }
}

TEST(Counterexample, TIsTheColimitOfTheHomDiagram) {
  for (const auto& [name, g] : everything()) {
    for (ObjectId a = 0; a < g.source().base().object_count(); ++a) {
      for (ObjectId b = 0; b < g.target().base().object_count(); ++b) {
        const SetDiagram x = hom_diagram_over_matching(g, a, b);
        EXPECT_EQ(colimit(x).set.size(), collapse_T(g, build_S(g, a, b)).count()) << name;
      }
    }
  }
}

TEST(Counterexample, ShuffleInvariance) {
  for (const auto& [name, g] : suite::catalog_functors()) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ReedyFunctor h = suite::shuffled(g, seed);
      const auto& src = g.source().base();
      const auto& tgt = g.target().base();
      for (ObjectId a = 0; a < src.object_count(); ++a) {
        for (ObjectId b = 0; b < tgt.object_count(); ++b) {
          const IndexReport r = index_map(g, a, b);
          const IndexReport rh = index_map(h, h.source().base().object(src.object_name(a)),
                                           h.target().base().object(tgt.object_name(b)));
          EXPECT_EQ(r.t.count(), rh.t.count()) << name;
          EXPECT_EQ(r.injective, rh.injective) << name;
          EXPECT_EQ(fibres(g, r), fibres(h, rh)) << name;
        }
      }
      const auto w = nonfibrancy_witness(g);
      const auto wh = nonfibrancy_witness(h);
      ASSERT_EQ(w.has_value(), wh.has_value()) << name;
    }
  }
}
