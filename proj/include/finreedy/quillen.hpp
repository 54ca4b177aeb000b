#pragma once

// Categories of factorizations and the fibering / cofibering decision
// procedure for Reedy functors.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fincat.hpp"
#include "reedy.hpp"
#include "union_find.hpp"

namespace finreedy {

enum class FactorizationSide : std::uint8_t { Inverse, Direct };

inline const char* to_string(FactorizationSide s) {
  return s == FactorizationSide::Inverse ? "inverse" : "direct";
}

/// (ν, μ): ν a non-identity map of the source at α, μ a map of the target.
struct FactorizationLabel {
  MorphismId nu = kNoId;
  MorphismId mu = kNoId;
  bool operator==(const FactorizationLabel&) const = default;
};

struct FactorizationCategory {
  FiniteCategory category;
  std::vector<FactorizationLabel> labels;
  std::vector<MorphismId> underlying;
  FactorizationSide side = FactorizationSide::Inverse;
  ObjectId alpha = 0;
  MorphismId sigma = 0;
};

namespace detail {

struct FactorizationEdge {
  ObjectId from;
  ObjectId to;
  MorphismId tau;
};

/// Objects and non-identity morphisms of a factorization category, before
/// they are assembled into a FiniteCategory.
struct FactorizationSkeleton {
  std::vector<FactorizationLabel> labels;
  std::vector<FactorizationEdge> edges;
};

inline void check_inverse_anchor(const ReedyFunctor& g, ObjectId alpha, MorphismId sigma) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  if (alpha >= src.object_count() || sigma >= tgt.morphism_count()) {
    throw Error(ErrorKind::BadAnchor, "anchor outside the categories");
  }
  if (!g.target().in_inverse(sigma)) {
    throw Error(ErrorKind::BadAnchor, "'" + tgt.morphism_name(sigma) + "' is not in the inverse subcategory");
  }
  if (tgt.src(sigma) != g.on_object(alpha)) {
    throw Error(ErrorKind::BadAnchor, "'" + tgt.morphism_name(sigma) + "' does not start at G(" +
                                          src.object_name(alpha) + ")");
  }
}

inline void check_direct_anchor(const ReedyFunctor& g, ObjectId alpha, MorphismId sigma) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  if (alpha >= src.object_count() || sigma >= tgt.morphism_count()) {
    throw Error(ErrorKind::BadAnchor, "anchor outside the categories");
  }
  if (!g.target().in_direct(sigma)) {
    throw Error(ErrorKind::BadAnchor, "'" + tgt.morphism_name(sigma) + "' is not in the direct subcategory");
  }
  if (tgt.dst(sigma) != g.on_object(alpha)) {
    throw Error(ErrorKind::BadAnchor, "'" + tgt.morphism_name(sigma) + "' does not end at G(" +
                                          src.object_name(alpha) + ")");
  }
}

/// All inverse factorizations at α, grouped by the map σ they factor.
inline std::map<MorphismId, FactorizationSkeleton> inverse_skeletons(const ReedyFunctor& g,
                                                                     ObjectId alpha) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::map<MorphismId, FactorizationSkeleton> out;
  std::map<MorphismId, std::vector<std::pair<MorphismId, ObjectId>>> by_nu;
  std::vector<MorphismId> nus(src.out(alpha).begin(), src.out(alpha).end());
  std::sort(nus.begin(), nus.end());
  for (MorphismId nu : nus) {
    if (!g.source().is_inverse(nu)) continue;
    const MorphismId gnu = g.on_morphism(nu);
    std::vector<MorphismId> mus(tgt.out(tgt.dst(gnu)).begin(), tgt.out(tgt.dst(gnu)).end());
    std::sort(mus.begin(), mus.end());
    for (MorphismId mu : mus) {
      if (!g.target().in_inverse(mu)) continue;
      auto& sk = out[tgt.then(gnu, mu)];
      by_nu[nu].emplace_back(mu, static_cast<ObjectId>(sk.labels.size()));
      sk.labels.push_back({nu, mu});
    }
  }
  for (auto& [sigma, sk] : out) {
    for (ObjectId x = 0; x < sk.labels.size(); ++x) {
      const auto [nu, mu] = sk.labels[x];
      for (MorphismId tau : src.out(src.dst(nu))) {
        if (!g.source().is_inverse(tau)) continue;
        auto it = by_nu.find(src.then(nu, tau));
        if (it == by_nu.end()) continue;
        const MorphismId gtau = g.on_morphism(tau);
        for (auto [mu2, y] : it->second) {
          if (tgt.then(gtau, mu2) == mu) sk.edges.push_back({x, y, tau});
        }
      }
    }
  }
  return out;
}

/// All direct factorizations into α, grouped by the map σ they factor.
inline std::map<MorphismId, FactorizationSkeleton> direct_skeletons(const ReedyFunctor& g,
                                                                    ObjectId alpha) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::map<MorphismId, FactorizationSkeleton> out;
  std::map<MorphismId, std::vector<std::pair<MorphismId, ObjectId>>> by_nu;
  std::vector<MorphismId> nus(src.in(alpha).begin(), src.in(alpha).end());
  std::sort(nus.begin(), nus.end());
  for (MorphismId nu : nus) {
    if (!g.source().is_direct(nu)) continue;
    const MorphismId gnu = g.on_morphism(nu);
    std::vector<MorphismId> mus(tgt.in(tgt.src(gnu)).begin(), tgt.in(tgt.src(gnu)).end());
    std::sort(mus.begin(), mus.end());
    for (MorphismId mu : mus) {
      if (!g.target().in_direct(mu)) continue;
      auto& sk = out[tgt.then(mu, gnu)];
      by_nu[nu].emplace_back(mu, static_cast<ObjectId>(sk.labels.size()));
      sk.labels.push_back({nu, mu});
    }
  }
  for (auto& [sigma, sk] : out) {
    for (ObjectId x = 0; x < sk.labels.size(); ++x) {
      const auto [nu, mu] = sk.labels[x];
      for (MorphismId tau : src.out(src.src(nu))) {
        if (!g.source().is_direct(tau)) continue;
        const MorphismId gtau = g.on_morphism(tau);
        const MorphismId mu2 = tgt.then(mu, gtau);
        for (MorphismId nu2 : src.hom(src.dst(tau), alpha)) {
          if (src.then(tau, nu2) != nu) continue;
          auto it = by_nu.find(nu2);
          if (it == by_nu.end()) continue;
          for (auto [m, y] : it->second) {
            if (m == mu2) sk.edges.push_back({x, y, tau});
          }
        }
      }
    }
  }
  return out;
}

inline FactorizationCategory assemble(const ReedyFunctor& g, const FactorizationSkeleton& sk,
                                      FactorizationSide side, ObjectId alpha, MorphismId sigma) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  DerivedCategoryBuilder b(src);
  FactorizationCategory out;
  out.side = side;
  out.alpha = alpha;
  out.sigma = sigma;
  out.labels = sk.labels;
  for (const auto& [nu, mu] : sk.labels) {
    const ObjectId at = side == FactorizationSide::Inverse ? src.dst(nu) : src.src(nu);
    b.add_object("(" + src.morphism_name(nu) + "," + tgt.morphism_name(mu) + ")", at);
  }
  for (const auto& e : sk.edges) b.add_morphism(e.from, e.to, e.tau);
  out.category = b.build(&out.underlying);
  return out;
}

}  // namespace detail

/// Objects (ν: α -> γ non-identity inverse, μ: Gγ -> β inverse or identity)
/// with μ ∘ Gν = σ; morphisms τ: γ -> γ' inverse with τν = ν', μ' ∘ Gτ = μ.
inline FactorizationCategory inverse_factorizations(const ReedyFunctor& g, ObjectId alpha,
                                                    MorphismId sigma) {
  detail::check_inverse_anchor(g, alpha, sigma);
  auto all = detail::inverse_skeletons(g, alpha);
  auto it = all.find(sigma);
  return detail::assemble(g, it == all.end() ? detail::FactorizationSkeleton{} : it->second,
                          FactorizationSide::Inverse, alpha, sigma);
}

/// Objects (ν: γ -> α non-identity direct, μ: β -> Gγ direct or identity)
/// with Gν ∘ μ = σ; morphisms τ: γ -> γ' direct with ν'τ = ν, Gτ ∘ μ = μ'.
inline FactorizationCategory direct_factorizations(const ReedyFunctor& g, ObjectId alpha,
                                                   MorphismId sigma) {
  detail::check_direct_anchor(g, alpha, sigma);
  auto all = detail::direct_skeletons(g, alpha);
  auto it = all.find(sigma);
  return detail::assemble(g, it == all.end() ? detail::FactorizationSkeleton{} : it->second,
                          FactorizationSide::Direct, alpha, sigma);
}

/// The category of maps out of d in the inverse subcategory, identity
/// included. Objects are labeled by those maps.
inline SliceCategory inverse_under_category(const ReedyCategory& r, ObjectId d) {
  const auto& c = r.base();
  DerivedCategoryBuilder b(c);
  SliceCategory out;
  std::vector<MorphismId> from(c.out(d).begin(), c.out(d).end());
  std::sort(from.begin(), from.end());
  std::map<MorphismId, ObjectId> object_of;
  for (MorphismId f : from) {
    if (!r.in_inverse(f)) continue;
    object_of.emplace(f, b.add_object(c.morphism_name(f), c.dst(f)));
    out.labels.push_back(f);
  }
  for (ObjectId x = 0; x < out.labels.size(); ++x) {
    const MorphismId f = out.labels[x];
    for (MorphismId t : c.out(c.dst(f))) {
      if (r.is_inverse(t)) b.add_morphism(x, object_of.at(c.then(f, t)), t);
    }
  }
  out.category = b.build(&out.underlying);
  return out;
}

namespace detail {

inline MorphismId find_labeled_morphism(const FiniteCategory& c,
                                        const std::vector<MorphismId>& underlying, ObjectId x,
                                        ObjectId y, MorphismId ambient) {
  for (MorphismId m : c.hom(x, y)) {
    if (underlying[m] == ambient) return m;
  }
  throw Error(ErrorKind::NotAFunctor, "induced functor has no image for an ambient map");
}

}  // namespace detail

/// The functor G_*: matching category of the source at α -> `under`, where
/// `under` is a full subcategory of the inverse under-category at Gα that
/// contains every image.
struct MatchingPushforward {
  SliceCategory matching;
  SliceCategory under;
  FunctorData functor;
};

inline MatchingPushforward matching_pushforward(const ReedyFunctor& g, ObjectId alpha,
                                                bool image_only = false) {
  const auto& tgt = g.target().base();
  MatchingPushforward out;
  out.matching = matching_category(g.source(), alpha);
  SliceCategory full = inverse_under_category(g.target(), g.on_object(alpha));
  if (image_only) {
    std::vector<bool> hit(full.labels.size(), false);
    for (MorphismId nu : out.matching.labels) {
      const MorphismId gnu = g.on_morphism(nu);
      for (ObjectId x = 0; x < full.labels.size(); ++x) {
        if (full.labels[x] == gnu) hit[x] = true;
      }
    }
    std::vector<ObjectId> keep;
    for (ObjectId x = 0; x < hit.size(); ++x) {
      if (hit[x]) keep.push_back(x);
    }
    FiniteCategory sub = full_subcategory(full.category, keep);
    out.under.category = sub;
    for (ObjectId x : keep) out.under.labels.push_back(full.labels[x]);
    for (MorphismId m = 0; m < sub.morphism_count(); ++m) {
      out.under.underlying.push_back(full.underlying[full.category.morphism(sub.morphism_name(m))]);
    }
  } else {
    out.under = std::move(full);
  }
  std::map<MorphismId, ObjectId> under_object;
  for (ObjectId x = 0; x < out.under.labels.size(); ++x) under_object.emplace(out.under.labels[x], x);
  const auto& m = out.matching.category;
  std::vector<ObjectId> objects(m.object_count());
  std::vector<MorphismId> morphisms(m.morphism_count());
  for (ObjectId x = 0; x < m.object_count(); ++x) {
    objects[x] = under_object.at(g.on_morphism(out.matching.labels[x]));
  }
  for (MorphismId f = 0; f < m.morphism_count(); ++f) {
    const ObjectId a = objects[m.src(f)];
    const ObjectId b = objects[m.dst(f)];
    const MorphismId image = g.on_morphism(out.matching.underlying[f]);
    morphisms[f] = tgt.is_identity(image)
                       ? out.under.category.identity(a)
                       : detail::find_labeled_morphism(out.under.category, out.under.underlying, a,
                                                       b, image);
  }
  out.functor = validate_functor(m, out.under.category, std::move(objects), std::move(morphisms));
  return out;
}

/// Independent construction of inverse_factorizations(G, α, σ) as the over
/// category of the induced functor of matching categories at σ.
inline CommaCategory factorization_via_comma(const ReedyFunctor& g, ObjectId alpha,
                                             MorphismId sigma) {
  detail::check_inverse_anchor(g, alpha, sigma);
  MatchingPushforward p = matching_pushforward(g, alpha);
  ObjectId anchor = kNoId;
  for (ObjectId x = 0; x < p.under.labels.size(); ++x) {
    if (p.under.labels[x] == sigma) anchor = x;
  }
  return comma_over(p.functor, anchor);
}

/// Full subcategory of the matching category at α on the maps G sends to an
/// identity.
inline SliceCategory g_kernel(const ReedyFunctor& g, ObjectId alpha) {
  SliceCategory m = matching_category(g.source(), alpha);
  std::vector<ObjectId> keep;
  for (ObjectId x = 0; x < m.labels.size(); ++x) {
    if (g.target().base().is_identity(g.on_morphism(m.labels[x]))) keep.push_back(x);
  }
  SliceCategory out;
  out.category = full_subcategory(m.category, keep);
  for (ObjectId x : keep) out.labels.push_back(m.labels[x]);
  for (MorphismId f = 0; f < out.category.morphism_count(); ++f) {
    out.underlying.push_back(m.underlying[m.category.morphism(out.category.morphism_name(f))]);
  }
  return out;
}

struct Witness {
  ObjectId alpha = 0;
  ObjectId beta = 0;
  MorphismId sigma = 0;
  FactorizationSide side = FactorizationSide::Inverse;
  std::size_t components = 0;
  bool empty = true;
  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool holds = true;
  /// Anchors whose factorization category is disconnected.
  std::vector<Witness> witnesses;
  /// Every anchor with at least one map σ, including empty and connected ones.
  std::vector<Witness> anchors;
  std::size_t empty_anchors = 0;
  std::size_t connected_anchors = 0;
};

namespace detail {

inline Verdict decide(const ReedyFunctor& g, FactorizationSide side) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  std::vector<ObjectId> alphas(src.object_count());
  for (ObjectId a = 0; a < alphas.size(); ++a) alphas[a] = a;
  std::stable_sort(alphas.begin(), alphas.end(), [&](ObjectId x, ObjectId y) {
    return g.source().degree(x) < g.source().degree(y);
  });
  Verdict v;
  for (ObjectId alpha : alphas) {
    const ObjectId ga = g.on_object(alpha);
    auto skeletons = side == FactorizationSide::Inverse ? inverse_skeletons(g, alpha)
                                                        : direct_skeletons(g, alpha);
    std::vector<Witness> here;
    auto sigmas = side == FactorizationSide::Inverse ? tgt.out(ga) : tgt.in(ga);
    for (MorphismId sigma : sigmas) {
      const bool in_class = side == FactorizationSide::Inverse ? g.target().in_inverse(sigma)
                                                               : g.target().in_direct(sigma);
      if (!in_class) continue;
      Witness w;
      w.alpha = alpha;
      w.beta = side == FactorizationSide::Inverse ? tgt.dst(sigma) : tgt.src(sigma);
      w.sigma = sigma;
      w.side = side;
      auto it = skeletons.find(sigma);
      if (it != skeletons.end() && !it->second.labels.empty()) {
        UnionFind uf(it->second.labels.size());
        for (const auto& e : it->second.edges) uf.unite(e.from, e.to);
        uf.classes(&w.components);
        w.empty = false;
      }
      here.push_back(w);
    }
    std::sort(here.begin(), here.end(), [](const Witness& x, const Witness& y) {
      return std::tie(x.beta, x.sigma) < std::tie(y.beta, y.sigma);
    });
    for (const auto& w : here) {
      v.anchors.push_back(w);
      if (w.empty) {
        ++v.empty_anchors;
      } else if (w.components == 1) {
        ++v.connected_anchors;
      } else {
        v.witnesses.push_back(w);
      }
    }
  }
  v.holds = v.witnesses.empty();
  return v;
}

}  // namespace detail

/// Every inverse factorization category is empty or connected. Anchors are
/// ordered by (degree of α, α, β, σ) in canonical input order.
inline Verdict is_fibering(const ReedyFunctor& g) {
  return detail::decide(g, FactorizationSide::Inverse);
}

inline Verdict is_cofibering(const ReedyFunctor& g) {
  return detail::decide(g, FactorizationSide::Direct);
}

/// Controlled objects of the matching category at α, as a membership mask
/// over its objects.
inline std::vector<bool> controlled_objects(const ReedyFunctor& g, ObjectId alpha) {
  const auto& tgt = g.target().base();
  SliceCategory m = matching_category(g.source(), alpha);
  const auto& mc = m.category;
  const std::size_t n = m.labels.size();
  std::vector<int> level(n);
  for (ObjectId x = 0; x < n; ++x) {
    level[x] = g.target().degree(tgt.dst(g.on_morphism(m.labels[x])));
  }
  UnionFind equiv(n);
  for (MorphismId f = static_cast<MorphismId>(n); f < mc.morphism_count(); ++f) {
    if (tgt.is_identity(g.on_morphism(m.underlying[f]))) equiv.unite(mc.src(f), mc.dst(f));
  }
  std::vector<bool> controlled(n, false);
  for (ObjectId x = 0; x < n; ++x) {
    controlled[x] = tgt.is_identity(g.on_morphism(m.labels[x]));
  }
  const int top = g.target().degree(g.on_object(alpha));
  for (int lvl = top - 1; lvl >= 0; --lvl) {
    std::vector<bool> class_hit(n, false);
    for (MorphismId f = static_cast<MorphismId>(n); f < mc.morphism_count(); ++f) {
      const ObjectId from = mc.src(f);
      const ObjectId to = mc.dst(f);
      if (level[to] == lvl && level[from] > lvl && controlled[from]) {
        class_hit[equiv.find(to)] = true;
      }
    }
    for (ObjectId x = 0; x < n; ++x) {
      if (level[x] == lvl && class_hit[equiv.find(x)]) controlled[x] = true;
    }
  }
  return controlled;
}

}  // namespace finreedy
