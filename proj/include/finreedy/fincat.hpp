#pragma once

// Finite categories given by total composition tables, functors between
// them, comma categories and connected components of nerves.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "union_find.hpp"

namespace finreedy {

using ObjectId = std::uint32_t;
using MorphismId = std::uint32_t;
inline constexpr std::uint32_t kNoId = UINT32_MAX;

/// Separator used for identifiers of product objects and morphisms.
inline constexpr std::string_view kProductSeparator = "×";

inline std::string identity_name(std::string_view object) { return "id:" + std::string(object); }

class CategoryBuilder;

/// An immutable finite category. Object and morphism ids are dense indices in
/// canonical order; the identity of object `a` is morphism `a`, and the
/// non-identity morphisms follow in input order. Copies share storage.
class FiniteCategory {
 public:
  FiniteCategory();

  std::size_t object_count() const noexcept { return impl_->object_names.size(); }
  std::size_t morphism_count() const noexcept { return impl_->morphisms.size(); }

  const std::string& object_name(ObjectId a) const { return impl_->object_names.at(a); }
  const std::string& morphism_name(MorphismId f) const { return impl_->morphisms.at(f).name; }
  ObjectId src(MorphismId f) const { return impl_->morphisms[f].src; }
  ObjectId dst(MorphismId f) const { return impl_->morphisms[f].dst; }

  MorphismId identity(ObjectId a) const noexcept { return a; }
  bool is_identity(MorphismId f) const noexcept { return f < object_count(); }

  std::optional<ObjectId> find_object(std::string_view name) const {
    auto it = impl_->object_index.find(std::string(name));
    if (it == impl_->object_index.end()) return std::nullopt;
    return it->second;
  }

  std::optional<MorphismId> find_morphism(std::string_view name) const {
    auto it = impl_->morphism_index.find(std::string(name));
    if (it == impl_->morphism_index.end()) return std::nullopt;
    return it->second;
  }

  ObjectId object(std::string_view name) const {
    if (auto a = find_object(name)) return *a;
    throw Error(ErrorKind::DanglingReference, "unknown object '" + std::string(name) + "'");
  }

  MorphismId morphism(std::string_view name) const {
    if (auto f = find_morphism(name)) return *f;
    throw Error(ErrorKind::DanglingReference, "unknown morphism '" + std::string(name) + "'");
  }

  /// Morphisms out of `a`, ordered by (dst, id).
  std::span<const MorphismId> out(ObjectId a) const { return impl_->out[a]; }
  /// Morphisms into `b`, ordered by (src, id).
  std::span<const MorphismId> in(ObjectId b) const { return impl_->in[b]; }

  /// Morphisms a -> b in id order.
  std::span<const MorphismId> hom(ObjectId a, ObjectId b) const {
    const auto& list = impl_->out[a];
    auto lo = std::lower_bound(list.begin(), list.end(), b,
                               [this](MorphismId f, ObjectId x) { return dst(f) < x; });
    auto hi = std::upper_bound(lo, list.end(), b,
                               [this](ObjectId x, MorphismId f) { return x < dst(f); });
    return {list.data() + (lo - list.begin()), static_cast<std::size_t>(hi - lo)};
  }

  /// The composite g∘f of f: a -> b followed by g: b -> c.
  MorphismId compose(MorphismId f, MorphismId g) const {
    if (f >= morphism_count() || g >= morphism_count() || dst(f) != src(g)) {
      throw Error(ErrorKind::NotComposable,
                  (f < morphism_count() ? morphism_name(f) : std::string("?")) + " then " +
                      (g < morphism_count() ? morphism_name(g) : std::string("?")));
    }
    return then(f, g);
  }

  /// Unchecked composite; requires dst(f) == src(g).
  MorphismId then(MorphismId f, MorphismId g) const noexcept {
    return impl_->table[impl_->row_offset[f] + impl_->out_position[g]];
  }

  /// True when both categories have identical identifiers, endpoints and
  /// composition tables.
  bool same_structure(const FiniteCategory& other) const {
    if (impl_ == other.impl_) return true;
    return impl_->object_names == other.impl_->object_names &&
           impl_->morphisms == other.impl_->morphisms && impl_->table == other.impl_->table;
  }

 private:
  struct MorphismRecord {
    std::string name;
    ObjectId src = 0;
    ObjectId dst = 0;
    bool operator==(const MorphismRecord&) const = default;
  };

  struct Impl {
    std::vector<std::string> object_names;
    std::vector<MorphismRecord> morphisms;
    std::unordered_map<std::string, ObjectId> object_index;
    std::unordered_map<std::string, MorphismId> morphism_index;
    std::vector<std::vector<MorphismId>> out;
    std::vector<std::vector<MorphismId>> in;
    std::vector<std::uint32_t> out_position;
    std::vector<std::size_t> row_offset;
    std::vector<MorphismId> table;
  };

  explicit FiniteCategory(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const Impl> impl_;

  friend class CategoryBuilder;
};

/// Incremental construction of a FiniteCategory. All objects must be added
/// before the first morphism; identities are created automatically and named
/// "id:<object>".
class CategoryBuilder {
 public:
  ObjectId add_object(std::string name) {
    if (!morphisms_.empty() && morphisms_.size() > names_.size()) {
      throw std::logic_error("CategoryBuilder: objects must precede morphisms");
    }
    if (object_index_.count(name) != 0) {
      throw Error(ErrorKind::DuplicateId, "object '" + name + "'");
    }
    const auto id = static_cast<ObjectId>(names_.size());
    std::string id_name = identity_name(name);
    if (morphism_index_.count(id_name) != 0) {
      throw Error(ErrorKind::DuplicateId, "morphism '" + id_name + "'");
    }
    object_index_.emplace(name, id);
    morphism_index_.emplace(id_name, id);
    names_.push_back(std::move(name));
    morphisms_.push_back({std::move(id_name), id, id});
    return id;
  }

  MorphismId add_morphism(std::string name, ObjectId src, ObjectId dst) {
    if (src >= names_.size() || dst >= names_.size()) {
      throw Error(ErrorKind::DanglingReference, "morphism '" + name + "' has unknown endpoint");
    }
    if (morphism_index_.count(name) != 0) {
      throw Error(ErrorKind::DuplicateId, "morphism '" + name + "'");
    }
    const auto id = static_cast<MorphismId>(morphisms_.size());
    morphism_index_.emplace(name, id);
    morphisms_.push_back({std::move(name), src, dst});
    return id;
  }

  /// Records g∘f = gf.
  void set_composite(MorphismId f, MorphismId g, MorphismId gf) {
    const auto n = morphisms_.size();
    if (f >= n || g >= n || gf >= n) {
      throw Error(ErrorKind::DanglingReference, "composition entry refers to unknown morphism");
    }
    if (morphisms_[f].dst != morphisms_[g].src) {
      throw Error(ErrorKind::NotComposable, morphisms_[f].name + " then " + morphisms_[g].name);
    }
    if (morphisms_[gf].src != morphisms_[f].src || morphisms_[gf].dst != morphisms_[g].dst) {
      throw Error(ErrorKind::ConflictingComposition,
                  morphisms_[g].name + "∘" + morphisms_[f].name + " = " + morphisms_[gf].name +
                      " has the wrong endpoints");
    }
    const bool f_id = f < names_.size();
    const bool g_id = g < names_.size();
    if (f_id || g_id) {
      const MorphismId expected = f_id ? g : f;
      if (gf != expected) {
        throw Error(ErrorKind::ConflictingComposition,
                    morphisms_[g].name + "∘" + morphisms_[f].name + " violates the identity law");
      }
      return;
    }
    auto [it, inserted] = composites_.emplace(key(f, g), gf);
    if (!inserted && it->second != gf) {
      throw Error(ErrorKind::ConflictingComposition,
                  morphisms_[g].name + "∘" + morphisms_[f].name + " given twice");
    }
  }

  std::size_t object_count() const noexcept { return names_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  ObjectId src(MorphismId f) const { return morphisms_.at(f).src; }
  ObjectId dst(MorphismId f) const { return morphisms_.at(f).dst; }
  bool is_identity(MorphismId f) const noexcept { return f < names_.size(); }

  std::optional<ObjectId> find_object(const std::string& name) const {
    auto it = object_index_.find(name);
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<MorphismId> find_morphism(const std::string& name) const {
    auto it = morphism_index_.find(name);
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Fills the table, checks closure and, when requested, associativity.
  FiniteCategory build(bool check_associativity = true) {
    check_morphism_budget(morphisms_.size(), "category");
    auto impl = std::make_shared<FiniteCategory::Impl>();
    impl->object_names = std::move(names_);
    impl->morphisms = std::move(morphisms_);
    impl->object_index = std::move(object_index_);
    impl->morphism_index = std::move(morphism_index_);
    const std::size_t n_obj = impl->object_names.size();
    const std::size_t n_mor = impl->morphisms.size();
    const auto& mors = impl->morphisms;

    impl->out.assign(n_obj, {});
    impl->in.assign(n_obj, {});
    for (MorphismId f = 0; f < n_mor; ++f) {
      impl->out[mors[f].src].push_back(f);
      impl->in[mors[f].dst].push_back(f);
    }
    for (auto& list : impl->out) {
      std::stable_sort(list.begin(), list.end(),
                       [&](MorphismId x, MorphismId y) { return mors[x].dst < mors[y].dst; });
    }
    for (auto& list : impl->in) {
      std::stable_sort(list.begin(), list.end(),
                       [&](MorphismId x, MorphismId y) { return mors[x].src < mors[y].src; });
    }
    impl->out_position.assign(n_mor, 0);
    for (const auto& list : impl->out) {
      for (std::uint32_t i = 0; i < list.size(); ++i) impl->out_position[list[i]] = i;
    }
    impl->row_offset.assign(n_mor, 0);
    std::size_t total = 0;
    for (MorphismId f = 0; f < n_mor; ++f) {
      impl->row_offset[f] = total;
      total += impl->out[mors[f].dst].size();
    }
    impl->table.assign(total, kNoId);
    for (MorphismId f = 0; f < n_mor; ++f) {
      const auto& row = impl->out[mors[f].dst];
      for (std::uint32_t i = 0; i < row.size(); ++i) {
        const MorphismId g = row[i];
        MorphismId gf;
        if (f < n_obj) {
          gf = g;
        } else if (g < n_obj) {
          gf = f;
        } else {
          auto it = composites_.find(key(f, g));
          if (it == composites_.end()) {
            throw Error(ErrorKind::MissingComposition,
                        "no entry for " + mors[g].name + "∘" + mors[f].name);
          }
          gf = it->second;
        }
        impl->table[impl->row_offset[f] + i] = gf;
      }
    }
    composites_.clear();
    FiniteCategory result(std::move(impl));
    if (check_associativity) verify_associativity(result);
    return result;
  }

 private:
  static std::uint64_t key(MorphismId f, MorphismId g) {
    return (static_cast<std::uint64_t>(f) << 32) | g;
  }

  static void verify_associativity(const FiniteCategory& c) {
    for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
      for (MorphismId g : c.out(c.dst(f))) {
        if (c.is_identity(g)) continue;
        const MorphismId gf = c.then(f, g);
        for (MorphismId h : c.out(c.dst(g))) {
          if (c.is_identity(h)) continue;
          if (c.then(gf, h) != c.then(f, c.then(g, h))) {
            throw Error(ErrorKind::BrokenAssociativity,
                        "(" + c.morphism_name(f) + ", " + c.morphism_name(g) + ", " +
                            c.morphism_name(h) + ")");
          }
        }
      }
    }
  }

  std::vector<std::string> names_;
  std::vector<FiniteCategory::MorphismRecord> morphisms_;
  std::unordered_map<std::string, ObjectId> object_index_;
  std::unordered_map<std::string, MorphismId> morphism_index_;
  std::unordered_map<std::uint64_t, MorphismId> composites_;
};

inline FiniteCategory::FiniteCategory() : FiniteCategory(CategoryBuilder{}.build()) {}

/// Category description in the shape of the category file: identities are
/// implicit and only compositions of non-identity pairs are listed.
struct RawCategory {
  struct Morphism {
    std::string id;
    std::string src;
    std::string dst;
  };
  struct Composite {
    std::string first;
    std::string then;
    std::string equals;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<Composite> composition;
};

inline FiniteCategory validate_category(const RawCategory& raw) {
  CategoryBuilder b;
  for (const auto& name : raw.objects) b.add_object(name);
  auto object_of = [&](const std::string& name, const std::string& context) {
    if (auto a = b.find_object(name)) return *a;
    throw Error(ErrorKind::DanglingReference,
                "unknown object '" + name + "' in " + context);
  };
  for (const auto& m : raw.morphisms) {
    b.add_morphism(m.id, object_of(m.src, "morphism '" + m.id + "'"),
                   object_of(m.dst, "morphism '" + m.id + "'"));
  }
  auto morphism_of = [&](const std::string& name) {
    if (auto f = b.find_morphism(name)) return *f;
    throw Error(ErrorKind::DanglingReference, "unknown morphism '" + name + "' in composition");
  };
  for (const auto& c : raw.composition) {
    b.set_composite(morphism_of(c.first), morphism_of(c.then), morphism_of(c.equals));
  }
  return b.build(true);
}

inline RawCategory describe(const FiniteCategory& c) {
  RawCategory raw;
  for (ObjectId a = 0; a < c.object_count(); ++a) raw.objects.push_back(c.object_name(a));
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    raw.morphisms.push_back({c.morphism_name(f), c.object_name(c.src(f)), c.object_name(c.dst(f))});
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    std::vector<MorphismId> row(c.out(c.dst(f)).begin(), c.out(c.dst(f)).end());
    std::sort(row.begin(), row.end());
    for (MorphismId g : row) {
      if (c.is_identity(g)) continue;
      raw.composition.push_back(
          {c.morphism_name(f), c.morphism_name(g), c.morphism_name(c.then(f, g))});
    }
  }
  return raw;
}

inline MorphismId compose(const FiniteCategory& c, MorphismId f, MorphismId g) {
  return c.compose(f, g);
}

/// Same objects and morphism names; f: a -> b becomes b -> a.
inline FiniteCategory opposite(const FiniteCategory& c) {
  CategoryBuilder b;
  for (ObjectId a = 0; a < c.object_count(); ++a) b.add_object(c.object_name(a));
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    b.add_morphism(c.morphism_name(f), c.dst(f), c.src(f));
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    for (MorphismId g : c.out(c.dst(f))) {
      if (c.is_identity(g)) continue;
      b.set_composite(g, f, c.then(f, g));
    }
  }
  return b.build(false);
}

namespace detail {

/// Name of a product component; an identity of an iterated product object is
/// written factor by factor, so that nested products name morphisms alike.
inline std::string component_name(const FiniteCategory& c, MorphismId f) {
  if (!c.is_identity(f)) return c.morphism_name(f);
  const std::string sep(kProductSeparator);
  const std::string& object = c.object_name(c.src(f));
  std::string out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = object.find(sep, start);
    out += identity_name(object.substr(start, end == std::string::npos ? std::string::npos : end - start));
    if (end == std::string::npos) return out;
    out += sep;
    start = end + sep.size();
  }
}

}  // namespace detail

/// Componentwise product. Objects are ordered lexicographically by
/// (left, right); non-identity morphisms likewise by component ids.
/// `components`, when given, receives the (left, right) pair of every
/// product morphism in id order.
inline FiniteCategory product(
    const FiniteCategory& c, const FiniteCategory& d,
    std::vector<std::pair<MorphismId, MorphismId>>* components = nullptr) {
  check_morphism_budget(c.morphism_count() * d.morphism_count(), "product");
  const std::string sep(kProductSeparator);
  CategoryBuilder b;
  const std::size_t nd_obj = d.object_count();
  for (ObjectId x = 0; x < c.object_count(); ++x) {
    for (ObjectId y = 0; y < nd_obj; ++y) b.add_object(c.object_name(x) + sep + d.object_name(y));
  }
  const std::size_t nd = d.morphism_count();
  std::vector<MorphismId> pair_id(c.morphism_count() * nd, kNoId);
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    for (MorphismId g = 0; g < nd; ++g) {
      if (c.is_identity(f) && d.is_identity(g)) {
        pair_id[f * nd + g] = static_cast<MorphismId>(f * nd_obj + g);
        continue;
      }
      pair_id[f * nd + g] = b.add_morphism(
          detail::component_name(c, f) + sep + detail::component_name(d, g),
          static_cast<ObjectId>(c.src(f) * nd_obj + d.src(g)),
          static_cast<ObjectId>(c.dst(f) * nd_obj + d.dst(g)));
    }
  }
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    for (MorphismId g = 0; g < nd; ++g) {
      if (c.is_identity(f) && d.is_identity(g)) continue;
      for (MorphismId f2 : c.out(c.dst(f))) {
        for (MorphismId g2 : d.out(d.dst(g))) {
          if (c.is_identity(f2) && d.is_identity(g2)) continue;
          b.set_composite(pair_id[f * nd + g], pair_id[f2 * nd + g2],
                          pair_id[c.then(f, f2) * nd + d.then(g, g2)]);
        }
      }
    }
  }
  if (components != nullptr) {
    components->assign(b.morphism_count(), {kNoId, kNoId});
    for (MorphismId f = 0; f < c.morphism_count(); ++f) {
      for (MorphismId g = 0; g < nd; ++g) (*components)[pair_id[f * nd + g]] = {f, g};
    }
  }
  return b.build(false);
}

/// Full subcategory on `keep`; retained objects and morphisms keep their
/// relative order in `c`.
inline FiniteCategory full_subcategory(const FiniteCategory& c, const std::vector<ObjectId>& keep) {
  std::vector<ObjectId> new_id(c.object_count(), kNoId);
  for (ObjectId a : keep) {
    if (a >= c.object_count()) throw Error(ErrorKind::DanglingReference, "object index out of range");
    new_id[a] = 0;
  }
  CategoryBuilder b;
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (new_id[a] != kNoId) new_id[a] = b.add_object(c.object_name(a));
  }
  std::vector<MorphismId> new_mor(c.morphism_count(), kNoId);
  for (MorphismId f = 0; f < c.morphism_count(); ++f) {
    if (new_id[c.src(f)] == kNoId || new_id[c.dst(f)] == kNoId) continue;
    new_mor[f] = c.is_identity(f) ? new_id[c.src(f)]
                                  : b.add_morphism(c.morphism_name(f), new_id[c.src(f)],
                                                   new_id[c.dst(f)]);
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    if (new_mor[f] == kNoId) continue;
    for (MorphismId g : c.out(c.dst(f))) {
      if (c.is_identity(g) || new_mor[g] == kNoId) continue;
      b.set_composite(new_mor[f], new_mor[g], new_mor[c.then(f, g)]);
    }
  }
  return b.build(false);
}

inline FiniteCategory full_subcategory(const FiniteCategory& c,
                                       const std::vector<std::string>& names) {
  std::vector<ObjectId> keep;
  for (const auto& n : names) keep.push_back(c.object(n));
  return full_subcategory(c, keep);
}

/// A functor between finite categories, stored as dense object and
/// morphism maps. Only `validate_functor` produces values.
class FunctorData {
 public:
  FunctorData() = default;

  const FiniteCategory& source() const noexcept { return source_; }
  const FiniteCategory& target() const noexcept { return target_; }
  ObjectId on_object(ObjectId a) const { return objects_[a]; }
  MorphismId on_morphism(MorphismId f) const { return morphisms_[f]; }
  std::span<const ObjectId> object_map() const noexcept { return objects_; }
  std::span<const MorphismId> morphism_map() const noexcept { return morphisms_; }

 private:
  FiniteCategory source_;
  FiniteCategory target_;
  std::vector<ObjectId> objects_;
  std::vector<MorphismId> morphisms_;

  friend FunctorData validate_functor(const FiniteCategory&, const FiniteCategory&,
                                      std::vector<ObjectId>, std::vector<MorphismId>);
};

/// `morphisms` may leave identity entries as kNoId; they are filled in.
inline FunctorData validate_functor(const FiniteCategory& c, const FiniteCategory& d,
                                    std::vector<ObjectId> objects,
                                    std::vector<MorphismId> morphisms) {
  if (objects.size() != c.object_count()) {
    throw Error(ErrorKind::NotAFunctor, "object map does not cover the source");
  }
  morphisms.resize(c.morphism_count(), kNoId);
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (objects[a] >= d.object_count()) {
      throw Error(ErrorKind::DanglingReference, "image of object '" + c.object_name(a) + "'");
    }
    if (morphisms[a] != kNoId && morphisms[a] != d.identity(objects[a])) {
      throw Error(ErrorKind::NotAFunctor, "identity of '" + c.object_name(a) +
                                              "' is not sent to an identity");
    }
    morphisms[a] = d.identity(objects[a]);
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    if (morphisms[f] == kNoId) {
      throw Error(ErrorKind::NotAFunctor, "morphism '" + c.morphism_name(f) + "' is unmapped");
    }
    if (morphisms[f] >= d.morphism_count()) {
      throw Error(ErrorKind::DanglingReference, "image of morphism '" + c.morphism_name(f) + "'");
    }
    const MorphismId gf = morphisms[f];
    if (d.src(gf) != objects[c.src(f)] || d.dst(gf) != objects[c.dst(f)]) {
      throw Error(ErrorKind::NotAFunctor, "morphism '" + c.morphism_name(f) +
                                              "' is sent to '" + d.morphism_name(gf) +
                                              "' with mismatched endpoints");
    }
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    for (MorphismId g : c.out(c.dst(f))) {
      if (c.is_identity(g)) continue;
      if (morphisms[c.then(f, g)] != d.then(morphisms[f], morphisms[g])) {
        throw Error(ErrorKind::NotAFunctor, "composition not preserved for (" +
                                                c.morphism_name(f) + ", " + c.morphism_name(g) +
                                                ")");
      }
    }
  }
  FunctorData result;
  result.source_ = c;
  result.target_ = d;
  result.objects_ = std::move(objects);
  result.morphisms_ = std::move(morphisms);
  return result;
}

/// Name-based form matching the functor file: maps cover all objects and
/// all non-identity morphisms.
inline FunctorData validate_functor(const FiniteCategory& c, const FiniteCategory& d,
                                    const std::map<std::string, std::string>& on_objects,
                                    const std::map<std::string, std::string>& on_morphisms) {
  std::vector<ObjectId> objects(c.object_count(), kNoId);
  for (const auto& [from, to] : on_objects) objects[c.object(from)] = d.object(to);
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (objects[a] == kNoId) {
      throw Error(ErrorKind::NotAFunctor, "object '" + c.object_name(a) + "' is unmapped");
    }
  }
  std::vector<MorphismId> morphisms(c.morphism_count(), kNoId);
  for (const auto& [from, to] : on_morphisms) morphisms[c.morphism(from)] = d.morphism(to);
  return validate_functor(c, d, std::move(objects), std::move(morphisms));
}

inline FunctorData identity_functor(const FiniteCategory& c) {
  std::vector<ObjectId> objects(c.object_count());
  std::vector<MorphismId> morphisms(c.morphism_count());
  for (ObjectId a = 0; a < c.object_count(); ++a) objects[a] = a;
  for (MorphismId f = 0; f < c.morphism_count(); ++f) morphisms[f] = f;
  return validate_functor(c, c, std::move(objects), std::move(morphisms));
}

/// The composite `second ∘ first`.
inline FunctorData compose_functors(const FunctorData& first, const FunctorData& second) {
  if (!first.target().same_structure(second.source())) {
    throw Error(ErrorKind::ShapeMismatch, "functors are not composable");
  }
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a : first.object_map()) objects.push_back(second.on_object(a));
  for (MorphismId f : first.morphism_map()) morphisms.push_back(second.on_morphism(f));
  return validate_functor(first.source(), second.target(), std::move(objects),
                          std::move(morphisms));
}

inline FunctorData opposite(const FunctorData& g) {
  return validate_functor(opposite(g.source()), opposite(g.target()),
                          std::vector<ObjectId>(g.object_map().begin(), g.object_map().end()),
                          std::vector<MorphismId>(g.morphism_map().begin(), g.morphism_map().end()));
}

/// Inclusion of `sub` into `c`, matching identifiers by name.
inline FunctorData inclusion_by_name(const FiniteCategory& sub, const FiniteCategory& c) {
  std::vector<ObjectId> objects;
  std::vector<MorphismId> morphisms;
  for (ObjectId a = 0; a < sub.object_count(); ++a) objects.push_back(c.object(sub.object_name(a)));
  for (MorphismId f = 0; f < sub.morphism_count(); ++f) {
    morphisms.push_back(sub.is_identity(f) ? kNoId : c.morphism(sub.morphism_name(f)));
  }
  return validate_functor(sub, c, std::move(objects), std::move(morphisms));
}

/// A category built over an ambient one, each object carrying a label and
/// each morphism remembering the ambient morphism it comes from.
template <class Label>
struct LabeledCategory {
  FiniteCategory category;
  std::vector<Label> labels;
  std::vector<MorphismId> underlying;
};

/// Builds categories whose morphisms x -> y are ambient morphisms subject to
/// some compatibility; composition is inherited from the ambient category.
/// The triple (src, dst, ambient morphism) must identify a morphism.
class DerivedCategoryBuilder {
 public:
  explicit DerivedCategoryBuilder(FiniteCategory ambient) : ambient_(std::move(ambient)) {}

  ObjectId add_object(std::string name, ObjectId ambient_object) {
    objects_.push_back({std::move(name), ambient_object});
    return static_cast<ObjectId>(objects_.size() - 1);
  }

  void add_morphism(ObjectId src, ObjectId dst, MorphismId ambient) {
    morphisms_.push_back({src, dst, ambient});
  }

  std::size_t object_count() const noexcept { return objects_.size(); }

  FiniteCategory build(std::vector<MorphismId>* underlying = nullptr) {
    check_morphism_budget(objects_.size() + morphisms_.size(), "derived category");
    CategoryBuilder b;
    for (const auto& o : objects_) b.add_object(o.name);
    std::map<std::tuple<ObjectId, ObjectId, MorphismId>, MorphismId> index;
    std::vector<MorphismId> ambient_of(objects_.size());
    for (ObjectId x = 0; x < objects_.size(); ++x) {
      const MorphismId id = ambient_.identity(objects_[x].ambient);
      index.emplace(std::make_tuple(x, x, id), x);
      ambient_of[x] = id;
    }
    for (const auto& m : morphisms_) {
      const MorphismId id = b.add_morphism(ambient_.morphism_name(m.ambient) + ":" +
                                               objects_[m.src].name + "->" + objects_[m.dst].name,
                                           m.src, m.dst);
      index.emplace(std::make_tuple(m.src, m.dst, m.ambient), id);
      ambient_of.push_back(m.ambient);
    }
    std::vector<std::vector<MorphismId>> out(objects_.size());
    for (MorphismId f = static_cast<MorphismId>(objects_.size()); f < ambient_of.size(); ++f) {
      out[b.src(f)].push_back(f);
    }
    for (MorphismId f = static_cast<MorphismId>(objects_.size()); f < ambient_of.size(); ++f) {
      for (MorphismId g : out[b.dst(f)]) {
        const MorphismId composite = ambient_.compose(ambient_of[f], ambient_of[g]);
        auto it = index.find(std::make_tuple(b.src(f), b.dst(g), composite));
        if (it == index.end()) {
          throw Error(ErrorKind::MissingComposition,
                      "derived category is not closed under composition at " +
                          ambient_.morphism_name(ambient_of[g]) + "∘" +
                          ambient_.morphism_name(ambient_of[f]));
        }
        b.set_composite(f, g, it->second);
      }
    }
    if (underlying != nullptr) *underlying = ambient_of;
    return b.build(false);
  }

 private:
  struct PendingObject {
    std::string name;
    ObjectId ambient;
  };
  struct PendingMorphism {
    ObjectId src;
    ObjectId dst;
    MorphismId ambient;
  };

  FiniteCategory ambient_;
  std::vector<PendingObject> objects_;
  std::vector<PendingMorphism> morphisms_;
};

/// An object (a, f) of a comma category: `a` in the functor's source and
/// `f` a morphism of the target between G a and the anchor.
struct CommaObject {
  ObjectId object = 0;
  MorphismId arrow = 0;
  bool operator==(const CommaObject&) const = default;
};

using CommaCategory = LabeledCategory<CommaObject>;

/// G/d: objects (a, f: G a -> d); morphisms u: a -> a' with f' ∘ G u = f.
inline CommaCategory comma_over(const FunctorData& g, ObjectId d) {
  const auto& src = g.source();
  const auto& tgt = g.target();
  DerivedCategoryBuilder b(src);
  CommaCategory out;
  std::vector<std::vector<ObjectId>> by_object(src.object_count());
  for (ObjectId a = 0; a < src.object_count(); ++a) {
    for (MorphismId f : tgt.hom(g.on_object(a), d)) {
      by_object[a].push_back(
          b.add_object("(" + src.object_name(a) + "," + tgt.morphism_name(f) + ")", a));
      out.labels.push_back({a, f});
    }
  }
  for (ObjectId x = 0; x < out.labels.size(); ++x) {
    const auto [a, f] = out.labels[x];
    for (MorphismId u : src.out(a)) {
      if (src.is_identity(u)) continue;
      const MorphismId gu = g.on_morphism(u);
      for (ObjectId y : by_object[src.dst(u)]) {
        if (tgt.then(gu, out.labels[y].arrow) == f) b.add_morphism(x, y, u);
      }
    }
  }
  out.category = b.build(&out.underlying);
  return out;
}

/// d/G: objects (a, f: d -> G a); morphisms u: a -> a' with G u ∘ f = f'.
inline CommaCategory comma_under(const FunctorData& g, ObjectId d) {
  const auto& src = g.source();
  const auto& tgt = g.target();
  DerivedCategoryBuilder b(src);
  CommaCategory out;
  std::map<std::pair<ObjectId, MorphismId>, ObjectId> index;
  for (ObjectId a = 0; a < src.object_count(); ++a) {
    for (MorphismId f : tgt.hom(d, g.on_object(a))) {
      index.emplace(std::make_pair(a, f),
                    b.add_object("(" + src.object_name(a) + "," + tgt.morphism_name(f) + ")", a));
      out.labels.push_back({a, f});
    }
  }
  for (ObjectId x = 0; x < out.labels.size(); ++x) {
    const auto [a, f] = out.labels[x];
    for (MorphismId u : src.out(a)) {
      if (src.is_identity(u)) continue;
      auto it = index.find({src.dst(u), tgt.then(f, g.on_morphism(u))});
      if (it != index.end()) b.add_morphism(x, it->second, u);
    }
  }
  out.category = b.build(&out.underlying);
  return out;
}

/// Connected components of the nerve, i.e. of the underlying undirected
/// multigraph. Components are numbered by their least object.
struct Partition {
  std::vector<std::uint32_t> component_of;
  std::vector<ObjectId> representatives;

  std::size_t count() const noexcept { return representatives.size(); }
  bool empty() const noexcept { return component_of.empty(); }
  bool connected() const noexcept { return representatives.size() == 1; }
};

inline Partition pi0(const FiniteCategory& c) {
  UnionFind uf(c.object_count());
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    uf.unite(c.src(f), c.dst(f));
  }
  Partition p;
  std::size_t count = 0;
  p.component_of = uf.classes(&count);
  p.representatives.assign(count, kNoId);
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    auto& rep = p.representatives[p.component_of[a]];
    if (rep == kNoId) rep = a;
  }
  return p;
}

}  // namespace finreedy
