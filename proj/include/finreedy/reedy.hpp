#pragma once

// Reedy structures on finite categories: validation, unique factorization,
// truncation, opposites, products, latching and matching categories, and
// Reedy functors.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fincat.hpp"

namespace finreedy {

enum class MorphismClass : std::uint8_t { Identity, Direct, Inverse, General };

inline const char* to_string(MorphismClass c) {
  switch (c) {
    case MorphismClass::Identity: return "identity";
    case MorphismClass::Direct: return "direct";
    case MorphismClass::Inverse: return "inverse";
    case MorphismClass::General: return "general";
  }
  return "general";
}

inline std::optional<MorphismClass> parse_morphism_class(std::string_view s) {
  if (s == "direct") return MorphismClass::Direct;
  if (s == "inverse") return MorphismClass::Inverse;
  if (s == "general") return MorphismClass::General;
  return std::nullopt;
}

/// g = direct_part ∘ inverse_part.
struct Factorization {
  MorphismId inverse_part = kNoId;
  MorphismId direct_part = kNoId;
  bool operator==(const Factorization&) const = default;
};

class ReedyCategory {
 public:
  ReedyCategory() : impl_(std::make_shared<Impl>()) {}

  const FiniteCategory& base() const noexcept { return impl_->base; }
  int degree(ObjectId a) const { return impl_->degree[a]; }
  std::span<const int> degrees() const noexcept { return impl_->degree; }
  MorphismClass morphism_class(MorphismId f) const { return impl_->classes[f]; }
  std::span<const MorphismClass> classes() const noexcept { return impl_->classes; }

  /// Non-identity direct morphism.
  bool is_direct(MorphismId f) const { return impl_->classes[f] == MorphismClass::Direct; }
  /// Non-identity inverse morphism.
  bool is_inverse(MorphismId f) const { return impl_->classes[f] == MorphismClass::Inverse; }
  /// Member of the direct subcategory (identities included).
  bool in_direct(MorphismId f) const {
    return impl_->classes[f] == MorphismClass::Direct ||
           impl_->classes[f] == MorphismClass::Identity;
  }
  bool in_inverse(MorphismId f) const {
    return impl_->classes[f] == MorphismClass::Inverse ||
           impl_->classes[f] == MorphismClass::Identity;
  }

  Factorization factor(MorphismId g) const { return impl_->factorization.at(g); }

  int max_degree() const {
    int m = -1;
    for (int d : impl_->degree) m = std::max(m, d);
    return m;
  }

 private:
  struct Impl {
    FiniteCategory base;
    std::vector<int> degree;
    std::vector<MorphismClass> classes;
    std::vector<Factorization> factorization;
  };

  std::shared_ptr<const Impl> impl_;

  friend ReedyCategory validate_reedy(const FiniteCategory&, std::vector<int>,
                                      std::vector<MorphismClass>);
};

/// Checks degree monotonicity, closure of both subcategories and unique
/// factorization by exhaustive search. Identity entries of `classes` are
/// ignored.
inline ReedyCategory validate_reedy(const FiniteCategory& c, std::vector<int> degree,
                                    std::vector<MorphismClass> classes) {
  if (degree.size() != c.object_count()) {
    throw Error(ErrorKind::DegreeViolation, "degree function does not cover every object");
  }
  if (classes.size() != c.morphism_count()) {
    throw Error(ErrorKind::NotClosed, "classification does not cover every morphism");
  }
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    if (degree[a] < 0) {
      throw Error(ErrorKind::DegreeViolation, "object '" + c.object_name(a) + "' has negative degree");
    }
    classes[a] = MorphismClass::Identity;
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    const int ds = degree[c.src(f)];
    const int dt = degree[c.dst(f)];
    switch (classes[f]) {
      case MorphismClass::Identity:
        throw Error(ErrorKind::DegreeViolation,
                    "non-identity '" + c.morphism_name(f) + "' classed as identity");
      case MorphismClass::Direct:
        if (!(ds < dt)) {
          throw Error(ErrorKind::DegreeViolation, "'" + c.morphism_name(f) + "' (direct) does not raise degree");
        }
        break;
      case MorphismClass::Inverse:
        if (!(ds > dt)) {
          throw Error(ErrorKind::DegreeViolation, "'" + c.morphism_name(f) + "' (inverse) does not lower degree");
        }
        break;
      case MorphismClass::General:
        break;
    }
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    if (classes[f] != MorphismClass::Direct && classes[f] != MorphismClass::Inverse) continue;
    for (MorphismId g : c.out(c.dst(f))) {
      if (classes[g] != classes[f]) continue;
      if (classes[c.then(f, g)] != classes[f]) {
        throw Error(ErrorKind::NotClosed, std::string(to_string(classes[f])) + " subcategory at (" +
                                              c.morphism_name(f) + ", " + c.morphism_name(g) + ")");
      }
    }
  }
  auto in_inv = [&](MorphismId f) {
    return classes[f] == MorphismClass::Inverse || classes[f] == MorphismClass::Identity;
  };
  auto in_dir = [&](MorphismId f) {
    return classes[f] == MorphismClass::Direct || classes[f] == MorphismClass::Identity;
  };
  std::vector<Factorization> factorization(c.morphism_count());
  for (MorphismId g = 0; g < c.morphism_count(); ++g) {
    Factorization found;
    for (MorphismId i : c.out(c.src(g))) {
      if (!in_inv(i)) continue;
      for (MorphismId d : c.hom(c.dst(i), c.dst(g))) {
        if (!in_dir(d) || c.then(i, d) != g) continue;
        if (found.inverse_part != kNoId) {
          throw Error(ErrorKind::FactorizationAmbiguous,
                      "'" + c.morphism_name(g) + "' = " + c.morphism_name(found.direct_part) + "∘" +
                          c.morphism_name(found.inverse_part) + " = " + c.morphism_name(d) + "∘" +
                          c.morphism_name(i));
        }
        found = {i, d};
      }
    }
    if (found.inverse_part == kNoId) {
      throw Error(ErrorKind::FactorizationMissing, "'" + c.morphism_name(g) + "'");
    }
    factorization[g] = found;
  }
  auto impl = std::make_shared<ReedyCategory::Impl>();
  impl->base = c;
  impl->degree = std::move(degree);
  impl->classes = std::move(classes);
  impl->factorization = std::move(factorization);
  ReedyCategory r;
  r.impl_ = std::move(impl);
  return r;
}

/// Set-based form: `direct` and `inverse` list the non-identity morphisms of
/// the two subcategories; everything else is general.
inline ReedyCategory validate_reedy(const FiniteCategory& c, std::vector<int> degree,
                                    const std::vector<MorphismId>& direct,
                                    const std::vector<MorphismId>& inverse) {
  std::vector<MorphismClass> classes(c.morphism_count(), MorphismClass::General);
  for (MorphismId f : direct) {
    if (f >= c.morphism_count()) throw Error(ErrorKind::DanglingReference, "direct morphism index");
    classes[f] = MorphismClass::Direct;
  }
  for (MorphismId f : inverse) {
    if (f >= c.morphism_count()) throw Error(ErrorKind::DanglingReference, "inverse morphism index");
    if (classes[f] == MorphismClass::Direct) {
      throw Error(ErrorKind::DegreeViolation,
                  "'" + c.morphism_name(f) + "' is both direct and inverse");
    }
    classes[f] = MorphismClass::Inverse;
  }
  return validate_reedy(c, std::move(degree), std::move(classes));
}

inline Factorization factor(const ReedyCategory& r, MorphismId g) { return r.factor(g); }

inline ReedyCategory opposite_reedy(const ReedyCategory& r) {
  std::vector<MorphismClass> classes(r.classes().begin(), r.classes().end());
  for (auto& c : classes) {
    if (c == MorphismClass::Direct) {
      c = MorphismClass::Inverse;
    } else if (c == MorphismClass::Inverse) {
      c = MorphismClass::Direct;
    }
  }
  return validate_reedy(opposite(r.base()), {r.degrees().begin(), r.degrees().end()},
                        std::move(classes));
}

/// Degree is the sum of component degrees; a pair is direct (inverse) when
/// both components lie in the direct (inverse) subcategory.
inline ReedyCategory product_reedy(
    const ReedyCategory& r1, const ReedyCategory& r2,
    std::vector<std::pair<MorphismId, MorphismId>>* components = nullptr) {
  std::vector<std::pair<MorphismId, MorphismId>> parts;
  FiniteCategory base = product(r1.base(), r2.base(), &parts);
  if (components != nullptr) *components = parts;
  std::vector<int> degree;
  for (ObjectId a = 0; a < r1.base().object_count(); ++a) {
    for (ObjectId b = 0; b < r2.base().object_count(); ++b) {
      degree.push_back(r1.degree(a) + r2.degree(b));
    }
  }
  std::vector<MorphismClass> classes(base.morphism_count(), MorphismClass::General);
  for (MorphismId f = 0; f < base.morphism_count(); ++f) {
    const auto [x, y] = parts[f];
    if (base.is_identity(f)) {
      classes[f] = MorphismClass::Identity;
    } else if (r1.in_direct(x) && r2.in_direct(y)) {
      classes[f] = MorphismClass::Direct;
    } else if (r1.in_inverse(x) && r2.in_inverse(y)) {
      classes[f] = MorphismClass::Inverse;
    }
  }
  return validate_reedy(base, std::move(degree), std::move(classes));
}

/// Objects are morphisms of the ambient Reedy category (σ: γ -> α for the
/// latching category, σ: α -> γ for the matching category).
using SliceCategory = LabeledCategory<MorphismId>;

inline SliceCategory latching_category(const ReedyCategory& r, ObjectId alpha) {
  const auto& c = r.base();
  DerivedCategoryBuilder b(c);
  SliceCategory out;
  std::vector<MorphismId> into(c.in(alpha).begin(), c.in(alpha).end());
  std::sort(into.begin(), into.end());
  std::unordered_map<MorphismId, ObjectId> object_of;
  for (MorphismId s : into) {
    if (!r.is_direct(s)) continue;
    object_of.emplace(s, b.add_object(c.morphism_name(s), c.src(s)));
    out.labels.push_back(s);
  }
  for (ObjectId x = 0; x < out.labels.size(); ++x) {
    const MorphismId s = out.labels[x];
    for (MorphismId t : c.out(c.src(s))) {
      if (!r.is_direct(t)) continue;
      for (MorphismId s2 : c.hom(c.dst(t), alpha)) {
        auto it = object_of.find(s2);
        if (it != object_of.end() && c.then(t, s2) == s) b.add_morphism(x, it->second, t);
      }
    }
  }
  out.category = b.build(&out.underlying);
  return out;
}

inline SliceCategory matching_category(const ReedyCategory& r, ObjectId alpha) {
  const auto& c = r.base();
  DerivedCategoryBuilder b(c);
  SliceCategory out;
  std::vector<MorphismId> from(c.out(alpha).begin(), c.out(alpha).end());
  std::sort(from.begin(), from.end());
  std::unordered_map<MorphismId, ObjectId> object_of;
  for (MorphismId s : from) {
    if (!r.is_inverse(s)) continue;
    object_of.emplace(s, b.add_object(c.morphism_name(s), c.dst(s)));
    out.labels.push_back(s);
  }
  for (ObjectId x = 0; x < out.labels.size(); ++x) {
    const MorphismId s = out.labels[x];
    for (MorphismId t : c.out(c.dst(s))) {
      if (!r.is_inverse(t)) continue;
      b.add_morphism(x, object_of.at(c.then(s, t)), t);
    }
  }
  out.category = b.build(&out.underlying);
  return out;
}

/// A functor between Reedy categories sending direct maps into the direct
/// subcategory and inverse maps into the inverse subcategory. Non-identity
/// maps may go to identities.
class ReedyFunctor {
 public:
  ReedyFunctor() = default;

  const FunctorData& data() const noexcept { return data_; }
  const ReedyCategory& source() const noexcept { return source_; }
  const ReedyCategory& target() const noexcept { return target_; }
  ObjectId on_object(ObjectId a) const { return data_.on_object(a); }
  MorphismId on_morphism(MorphismId f) const { return data_.on_morphism(f); }

 private:
  FunctorData data_;
  ReedyCategory source_;
  ReedyCategory target_;

  friend ReedyFunctor validate_reedy_functor(const FunctorData&, const ReedyCategory&,
                                             const ReedyCategory&);
};

inline ReedyFunctor validate_reedy_functor(const FunctorData& f, const ReedyCategory& src,
                                           const ReedyCategory& tgt) {
  if (!f.source().same_structure(src.base()) || !f.target().same_structure(tgt.base())) {
    throw Error(ErrorKind::ShapeMismatch, "functor endpoints differ from the Reedy categories");
  }
  const auto& c = src.base();
  for (MorphismId m = static_cast<MorphismId>(c.object_count()); m < c.morphism_count(); ++m) {
    const MorphismId image = f.on_morphism(m);
    if (src.is_direct(m) && !tgt.in_direct(image)) {
      throw Error(ErrorKind::NotReedy, "'" + c.morphism_name(m) + "' is direct but its image '" +
                                           tgt.base().morphism_name(image) + "' is not");
    }
    if (src.is_inverse(m) && !tgt.in_inverse(image)) {
      throw Error(ErrorKind::NotReedy, "'" + c.morphism_name(m) + "' is inverse but its image '" +
                                           tgt.base().morphism_name(image) + "' is not");
    }
  }
  ReedyFunctor g;
  g.data_ = f;
  g.source_ = src;
  g.target_ = tgt;
  return g;
}

inline ReedyFunctor identity_reedy_functor(const ReedyCategory& r) {
  return validate_reedy_functor(identity_functor(r.base()), r, r);
}

inline ReedyFunctor opposite(const ReedyFunctor& g) {
  return validate_reedy_functor(opposite(g.data()), opposite_reedy(g.source()),
                                opposite_reedy(g.target()));
}

/// `second ∘ first`.
inline ReedyFunctor compose_functors(const ReedyFunctor& first, const ReedyFunctor& second) {
  return validate_reedy_functor(compose_functors(first.data(), second.data()), first.source(),
                                second.target());
}

/// Restricts a Reedy structure to a subcategory whose identifiers are those
/// of `r`.
inline ReedyCategory restrict_reedy(const ReedyCategory& r, const FiniteCategory& sub) {
  const auto& c = r.base();
  std::vector<int> degree;
  std::vector<MorphismClass> classes;
  for (ObjectId a = 0; a < sub.object_count(); ++a) {
    degree.push_back(r.degree(c.object(sub.object_name(a))));
  }
  for (MorphismId f = 0; f < sub.morphism_count(); ++f) {
    classes.push_back(sub.is_identity(f) ? MorphismClass::Identity
                                         : r.morphism_class(c.morphism(sub.morphism_name(f))));
  }
  return validate_reedy(sub, std::move(degree), std::move(classes));
}

struct Truncation {
  ReedyCategory category;
  ReedyFunctor inclusion;
};

/// The full subcategory on objects of degree at most n, with its inclusion.
inline Truncation truncate(const ReedyCategory& r, int n) {
  std::vector<ObjectId> keep;
  for (ObjectId a = 0; a < r.base().object_count(); ++a) {
    if (r.degree(a) <= n) keep.push_back(a);
  }
  ReedyCategory sub = restrict_reedy(r, full_subcategory(r.base(), keep));
  FunctorData inc = inclusion_by_name(sub.base(), r.base());
  return {sub, validate_reedy_functor(inc, sub, r)};
}

}  // namespace finreedy
