#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fincat.hpp"

namespace finreedy {

namespace detail {

// Colour refinement on objects of both categories at once so colours are
// comparable across them.
inline std::pair<std::vector<int>, std::vector<int>> refine_object_colours(
    const FiniteCategory& c, const FiniteCategory& d) {
  const FiniteCategory* cats[2] = {&c, &d};
  std::vector<int> colour[2];
  for (int side = 0; side < 2; ++side) {
    colour[side].assign(cats[side]->object_count(), 0);
  }
  std::size_t distinct = 1;
  for (int round = 0; round < 64; ++round) {
    std::map<std::vector<std::int64_t>, int> palette;
    std::vector<int> next[2];
    for (int side = 0; side < 2; ++side) {
      const FiniteCategory& cat = *cats[side];
      next[side].resize(cat.object_count());
      for (ObjectId a = 0; a < cat.object_count(); ++a) {
        std::vector<std::int64_t> sig{colour[side][a],
                                      static_cast<std::int64_t>(cat.hom(a, a).size())};
        std::vector<std::pair<int, std::size_t>> outs, ins;
        for (ObjectId b = 0; b < cat.object_count(); ++b) {
          if (b == a) continue;
          if (auto n = cat.hom(a, b).size()) outs.emplace_back(colour[side][b], n);
          if (auto n = cat.hom(b, a).size()) ins.emplace_back(colour[side][b], n);
        }
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        sig.push_back(-1);
        for (auto [col, n] : outs) {
          sig.push_back(col);
          sig.push_back(static_cast<std::int64_t>(n));
        }
        sig.push_back(-2);
        for (auto [col, n] : ins) {
          sig.push_back(col);
          sig.push_back(static_cast<std::int64_t>(n));
        }
        auto [it, inserted] = palette.emplace(std::move(sig), static_cast<int>(palette.size()));
        next[side][a] = it->second;
      }
    }
    colour[0] = std::move(next[0]);
    colour[1] = std::move(next[1]);
    if (palette.size() == distinct) break;
    distinct = palette.size();
  }
  return {colour[0], colour[1]};
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const FiniteCategory& c, const FiniteCategory& d) : c_(c), d_(d) {}

  std::optional<FunctorData> run() {
    if (c_.object_count() != d_.object_count() || c_.morphism_count() != d_.morphism_count()) {
      return std::nullopt;
    }
    std::tie(colour_c_, colour_d_) = refine_object_colours(c_, d_);
    {
      auto a = colour_c_, b = colour_d_;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return std::nullopt;
    }
    obj_.assign(c_.object_count(), kNoId);
    used_obj_.assign(d_.object_count(), false);
    if (!assign_object(0)) return std::nullopt;
    return validate_functor(c_, d_, obj_, mor_);
  }

 private:
  bool tick() {
    if (++steps_ > kBudget) {
      throw Error(ErrorKind::SizeLimit, "isomorphism search exceeded its step budget");
    }
    return true;
  }

  bool assign_object(ObjectId a) {
    tick();
    if (a == c_.object_count()) return assign_morphisms();
    for (ObjectId x = 0; x < d_.object_count(); ++x) {
      if (used_obj_[x] || colour_d_[x] != colour_c_[a]) continue;
      bool ok = true;
      for (ObjectId b = 0; b < a && ok; ++b) {
        ok = c_.hom(a, b).size() == d_.hom(x, obj_[b]).size() &&
             c_.hom(b, a).size() == d_.hom(obj_[b], x).size();
      }
      if (!ok || c_.hom(a, a).size() != d_.hom(x, x).size()) continue;
      obj_[a] = x;
      used_obj_[x] = true;
      if (assign_object(a + 1)) return true;
      used_obj_[x] = false;
      obj_[a] = kNoId;
    }
    return false;
  }

  bool assign_morphisms() {
    mor_.assign(c_.morphism_count(), kNoId);
    used_mor_.assign(d_.morphism_count(), false);
    for (ObjectId a = 0; a < c_.object_count(); ++a) {
      mor_[a] = d_.identity(obj_[a]);
      used_mor_[mor_[a]] = true;
    }
    order_.clear();
    for (MorphismId f = static_cast<MorphismId>(c_.object_count()); f < c_.morphism_count(); ++f) {
      order_.push_back(f);
    }
    return assign_morphism(0);
  }

  bool consistent(MorphismId f) const {
    // Every composable pair with all three parts assigned must be preserved.
    auto check = [&](MorphismId x, MorphismId y) {
      const MorphismId xy = c_.then(x, y);
      if (mor_[x] == kNoId || mor_[y] == kNoId || mor_[xy] == kNoId) return true;
      return d_.then(mor_[x], mor_[y]) == mor_[xy];
    };
    for (MorphismId g : c_.out(c_.dst(f))) {
      if (!check(f, g)) return false;
    }
    for (MorphismId g : c_.in(c_.src(f))) {
      if (!check(g, f)) return false;
    }
    // f as a composite.
    for (MorphismId g : c_.out(c_.src(f))) {
      for (MorphismId h : c_.hom(c_.dst(g), c_.dst(f))) {
        if (c_.then(g, h) == f && !check(g, h)) return false;
      }
    }
    return true;
  }

  bool assign_morphism(std::size_t i) {
    tick();
    if (i == order_.size()) return true;
    const MorphismId f = order_[i];
    for (MorphismId x : d_.hom(obj_[c_.src(f)], obj_[c_.dst(f)])) {
      if (used_mor_[x]) continue;
      mor_[f] = x;
      used_mor_[x] = true;
      if (consistent(f) && assign_morphism(i + 1)) return true;
      used_mor_[x] = false;
      mor_[f] = kNoId;
    }
    return false;
  }

  static constexpr std::size_t kBudget = 20'000'000;

  const FiniteCategory& c_;
  const FiniteCategory& d_;
  std::vector<int> colour_c_, colour_d_;
  std::vector<ObjectId> obj_;
  std::vector<bool> used_obj_;
  std::vector<MorphismId> mor_;
  std::vector<bool> used_mor_;
  std::vector<MorphismId> order_;
  std::size_t steps_ = 0;
};

}  // namespace detail

/// Searches for an isomorphism of categories c -> d by backtracking over
/// object bijections (pruned by colour refinement and hom-set sizes) and then
/// hom-set bijections compatible with composition.
inline std::optional<FunctorData> find_isomorphism(const FiniteCategory& c,
                                                   const FiniteCategory& d) {
  return detail::IsomorphismSearch(c, d).run();
}

}  // namespace finreedy
