#pragma once

// Index-set form of the non-fibrancy construction: the set S of pairs
// (ν, μ), its quotient T, and the index map T -> Hom_inv(Gα, β).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "quillen.hpp"
#include "reedy.hpp"
#include "setdiag.hpp"
#include "union_find.hpp"

namespace finreedy {

/// S: pairs (ν: α -> γ in the matching category, μ: Gγ -> β inverse or
/// identity), ordered by ν then μ in canonical order.
inline std::vector<FactorizationLabel> build_S(const ReedyFunctor& g, ObjectId alpha, ObjectId beta) {
  const auto& tgt = g.target().base();
  std::vector<FactorizationLabel> s;
  for (MorphismId nu : matching_category(g.source(), alpha).labels) {
    for (MorphismId mu : tgt.hom(tgt.dst(g.on_morphism(nu)), beta)) {
      if (g.target().in_inverse(mu)) s.push_back({nu, mu});
    }
  }
  return s;
}

/// Classes of S under (ν, μ' ∘ Gτ) ~ (τν, μ'). Classes are numbered by their
/// least member.
struct TPartition {
  std::vector<std::uint32_t> class_of;
  std::vector<std::uint32_t> representatives;
  std::size_t count() const noexcept { return representatives.size(); }
};

inline TPartition collapse_T(const ReedyFunctor& g, const std::vector<FactorizationLabel>& s) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::map<MorphismId, std::vector<std::uint32_t>> by_nu;
  for (std::uint32_t i = 0; i < s.size(); ++i) by_nu[s[i].nu].push_back(i);
  UnionFind uf(s.size());
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    const auto [nu, mu] = s[i];
    for (MorphismId tau : src.out(src.dst(nu))) {
      if (!g.source().is_inverse(tau)) continue;
      auto it = by_nu.find(src.then(nu, tau));
      if (it == by_nu.end()) continue;
      const MorphismId gtau = g.on_morphism(tau);
      for (std::uint32_t j : it->second) {
        if (tgt.then(gtau, s[j].mu) == mu) uf.unite(i, j);
      }
    }
  }
  TPartition t;
  std::size_t count = 0;
  t.class_of = uf.classes(&count);
  t.representatives.assign(count, UINT32_MAX);
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    auto& r = t.representatives[t.class_of[i]];
    if (r == UINT32_MAX) r = i;
  }
  return t;
}

/// Per-map summary of the factorization categories over (α, β).
struct TauComponents {
  MorphismId tau = 0;
  std::size_t components = 0;
  /// T class of each component, in component order.
  std::vector<std::uint32_t> classes;
};

struct IndexReport {
  ObjectId alpha = 0;
  ObjectId beta = 0;
  std::vector<FactorizationLabel> s;
  TPartition t;
  std::vector<TauComponents> per_tau;
  /// Index map T -> Hom_inv(Gα, β); codomain ordered as `homs`.
  std::vector<MorphismId> homs;
  SetFunction index;
  bool injective = true;
  /// |T| equals the total number of components, and components correspond
  /// to T classes one to one.
  bool match_prod_ok = true;
};

inline std::string label_name(const ReedyFunctor& g, const FactorizationLabel& l) {
  return "(" + g.source().base().morphism_name(l.nu) + "," + g.target().base().morphism_name(l.mu) + ")";
}

/// Checks that T is, class by class, the disjoint union over inverse
/// τ: Gα -> β of the components of the inverse factorization category.
inline IndexReport match_prod_check(const ReedyFunctor& g, ObjectId alpha, ObjectId beta) {
  const auto& tgt = g.target().base();
  if (alpha >= g.source().base().object_count() || beta >= tgt.object_count()) {
    throw Error(ErrorKind::BadAnchor, "anchor outside the categories");
  }
  IndexReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.s = build_S(g, alpha, beta);
  r.t = collapse_T(g, r.s);
  std::map<std::pair<MorphismId, MorphismId>, std::uint32_t> s_index;
  for (std::uint32_t i = 0; i < r.s.size(); ++i) s_index.emplace(std::make_pair(r.s[i].nu, r.s[i].mu), i);

  for (MorphismId h : tgt.hom(g.on_object(alpha), beta)) {
    if (g.target().in_inverse(h)) r.homs.push_back(h);
  }
  std::vector<std::uint32_t> hits(r.t.count(), 0);
  std::size_t covered = 0;
  for (MorphismId tau : r.homs) {
    FactorizationCategory f = inverse_factorizations(g, alpha, tau);
    Partition p = pi0(f.category);
    TauComponents tc;
    tc.tau = tau;
    tc.components = p.count();
    tc.classes.assign(p.count(), UINT32_MAX);
    for (ObjectId x = 0; x < f.labels.size(); ++x) {
      ++covered;
      const std::uint32_t cls = r.t.class_of.at(s_index.at({f.labels[x].nu, f.labels[x].mu}));
      auto& slot = tc.classes[p.component_of[x]];
      if (slot == UINT32_MAX) {
        slot = cls;
        ++hits[cls];
      } else if (slot != cls) {
        r.match_prod_ok = false;
      }
    }
    r.per_tau.push_back(std::move(tc));
  }
  if (covered != r.s.size()) r.match_prod_ok = false;
  for (auto h : hits) {
    if (h != 1) r.match_prod_ok = false;
  }

  std::vector<std::string> t_names;
  for (auto rep : r.t.representatives) t_names.push_back(label_name(g, r.s[rep]));
  std::vector<std::string> hom_names;
  for (MorphismId h : r.homs) hom_names.push_back(tgt.morphism_name(h));
  std::vector<std::uint32_t> map;
  for (auto rep : r.t.representatives) {
    const MorphismId value = tgt.then(g.on_morphism(r.s[rep].nu), r.s[rep].mu);
    map.push_back(static_cast<std::uint32_t>(
        std::find(r.homs.begin(), r.homs.end(), value) - r.homs.begin()));
  }
  r.index = {FiniteSet(std::move(t_names)), FiniteSet(std::move(hom_names)), std::move(map)};
  r.injective = r.index.is_injective();
  return r;
}

inline IndexReport index_map(const ReedyFunctor& g, ObjectId alpha, ObjectId beta) {
  return match_prod_check(g, alpha, beta);
}

/// The diagram ν ↦ Hom_inv(Gγ, β) over the opposite of the matching
/// category at α; its colimit is T.
inline SetDiagram hom_diagram_over_matching(const ReedyFunctor& g, ObjectId alpha, ObjectId beta) {
  const auto& tgt = g.target().base();
  SliceCategory m = matching_category(g.source(), alpha);
  FiniteCategory shape = opposite(m.category);
  std::vector<std::vector<MorphismId>> homs;
  std::vector<FiniteSet> sets;
  for (MorphismId nu : m.labels) {
    homs.emplace_back();
    std::vector<std::string> names;
    for (MorphismId mu : tgt.hom(tgt.dst(g.on_morphism(nu)), beta)) {
      if (!g.target().in_inverse(mu)) continue;
      homs.back().push_back(mu);
      names.push_back(tgt.morphism_name(mu));
    }
    sets.emplace_back(std::move(names));
  }
  std::vector<std::vector<std::uint32_t>> functions(shape.morphism_count());
  for (MorphismId f = static_cast<MorphismId>(shape.object_count()); f < shape.morphism_count(); ++f) {
    // f^op: τν -> ν, sending μ' to μ' ∘ Gτ.
    const MorphismId gtau = g.on_morphism(m.underlying[f]);
    const auto& from = homs[shape.src(f)];
    const auto& to = homs[shape.dst(f)];
    for (MorphismId mu2 : from) {
      const MorphismId mu = tgt.then(gtau, mu2);
      functions[f].push_back(static_cast<std::uint32_t>(std::find(to.begin(), to.end(), mu) - to.begin()));
    }
  }
  return make_diagram(shape, std::move(sets), std::move(functions));
}

struct NonfibrancyWitness {
  ObjectId alpha = 0;
  ObjectId beta = 0;
  MorphismId sigma = 0;
  FactorizationLabel first;
  FactorizationLabel second;
};

/// First anchor, in (degree of α, α, β) order, whose index map is not
/// injective, with representatives of two distinct classes over the least
/// such σ.
inline std::optional<NonfibrancyWitness> nonfibrancy_witness(const ReedyFunctor& g) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::vector<ObjectId> alphas(src.object_count());
  for (ObjectId a = 0; a < alphas.size(); ++a) alphas[a] = a;
  std::stable_sort(alphas.begin(), alphas.end(), [&](ObjectId x, ObjectId y) {
    return g.source().degree(x) < g.source().degree(y);
  });
  for (ObjectId alpha : alphas) {
    for (ObjectId beta = 0; beta < tgt.object_count(); ++beta) {
      IndexReport r = index_map(g, alpha, beta);
      if (r.injective) continue;
      for (std::uint32_t h = 0; h < r.homs.size(); ++h) {
        std::vector<std::uint32_t> over;
        for (std::uint32_t k = 0; k < r.index.map.size(); ++k) {
          if (r.index.map[k] == h) over.push_back(k);
        }
        if (over.size() < 2) continue;
        return NonfibrancyWitness{alpha, beta, r.homs[h], r.s[r.t.representatives[over[0]]],
                                  r.s[r.t.representatives[over[1]]]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace finreedy
