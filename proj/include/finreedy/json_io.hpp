#pragma once

// Reading and writing category, functor and diagram files.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "fincat.hpp"
#include "reedy.hpp"
#include "setdiag.hpp"

namespace finreedy {

using Json = nlohmann::ordered_json;

/// A category file, with its Reedy structure when every object has a degree.
struct CategoryFile {
  FiniteCategory category;
  /// Present when every object has a degree, so always for an empty category.
  std::optional<ReedyCategory> reedy;
};

struct FunctorFile {
  CategoryFile source;
  CategoryFile target;
  FunctorData functor;
  std::optional<ReedyFunctor> reedy;
  std::filesystem::path source_path;
  std::filesystem::path target_path;
};

struct DiagramFile {
  CategoryFile category;
  SetDiagram diagram;
  std::filesystem::path category_path;
};

namespace detail {

inline Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path.string() + ": cannot open");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, where + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) throw Error(ErrorKind::Parse, where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::map<std::string, std::string> string_map(const Json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, where + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::Parse, where + ": value for '" + k + "' must be a string");
    out.emplace(k, v.get<std::string>());
  }
  return out;
}

template <class F>
auto located(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    const std::string what = e.what();
    const std::string prefix = std::string(to_string(e.kind())) + ": ";
    throw Error(e.kind(), path.string() + ": " +
                              (what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what));
  }
}

}  // namespace detail

inline CategoryFile parse_category(const Json& j, const std::string& where = "category") {
  RawCategory raw;
  std::vector<std::optional<int>> degrees;
  const Json& objects = detail::field(j, "objects", where);
  if (!objects.is_array()) throw Error(ErrorKind::Parse, where + ": \"objects\" must be an array");
  for (const auto& o : objects) {
    raw.objects.push_back(detail::string_field(o, "id", where + " object"));
    if (o.contains("degree")) {
      if (!o.at("degree").is_number_integer()) {
        throw Error(ErrorKind::Parse, where + ": degree of '" + raw.objects.back() + "' must be an integer");
      }
      degrees.push_back(o.at("degree").get<int>());
    } else {
      degrees.emplace_back();
    }
  }
  std::vector<std::optional<std::string>> class_names;
  const Json empty = Json::array();
  const Json& morphisms = j.contains("morphisms") ? j.at("morphisms") : empty;
  if (!morphisms.is_array()) throw Error(ErrorKind::Parse, where + ": \"morphisms\" must be an array");
  for (const auto& m : morphisms) {
    raw.morphisms.push_back({detail::string_field(m, "id", where + " morphism"),
                             detail::string_field(m, "src", where + " morphism"),
                             detail::string_field(m, "dst", where + " morphism")});
    if (m.contains("class")) {
      class_names.push_back(detail::string_field(m, "class", where + " morphism"));
    } else {
      class_names.emplace_back();
    }
  }
  const Json& composition = j.contains("composition") ? j.at("composition") : empty;
  if (!composition.is_array()) throw Error(ErrorKind::Parse, where + ": \"composition\" must be an array");
  for (const auto& c : composition) {
    raw.composition.push_back({detail::string_field(c, "first", where + " composition"),
                               detail::string_field(c, "then", where + " composition"),
                               detail::string_field(c, "equals", where + " composition")});
  }
  CategoryFile out;
  out.category = validate_category(raw);
  const auto with_degree = std::count_if(degrees.begin(), degrees.end(), [](const auto& d) { return d.has_value(); });
  if (with_degree == 0 && !degrees.empty()) return out;
  if (static_cast<std::size_t>(with_degree) != degrees.size()) {
    throw Error(ErrorKind::DegreeViolation, "some objects have no degree");
  }
  std::vector<int> degree;
  for (const auto& d : degrees) degree.push_back(*d);
  const auto& c = out.category;
  std::vector<MorphismClass> classes(c.morphism_count(), MorphismClass::Identity);
  for (std::size_t i = 0; i < class_names.size(); ++i) {
    const MorphismId f = static_cast<MorphismId>(c.object_count() + i);
    if (!class_names[i]) {
      throw Error(ErrorKind::Parse, "morphism '" + c.morphism_name(f) + "' has no class");
    }
    auto cls = parse_morphism_class(*class_names[i]);
    if (!cls) throw Error(ErrorKind::Parse, "morphism '" + c.morphism_name(f) + "' has class '" + *class_names[i] + "'");
    classes[f] = *cls;
  }
  out.reedy = validate_reedy(c, std::move(degree), std::move(classes));
  return out;
}

inline CategoryFile load_category(const std::filesystem::path& path) {
  return detail::located(path, [&] { return parse_category(detail::read_json(path)); });
}

inline Json category_json(const FiniteCategory& c, const ReedyCategory* r = nullptr) {
  RawCategory raw = describe(c);
  Json j;
  j["objects"] = Json::array();
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    Json o;
    o["id"] = c.object_name(a);
    if (r != nullptr) o["degree"] = r->degree(a);
    j["objects"].push_back(std::move(o));
  }
  j["morphisms"] = Json::array();
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    Json m;
    m["id"] = c.morphism_name(f);
    m["src"] = c.object_name(c.src(f));
    m["dst"] = c.object_name(c.dst(f));
    if (r != nullptr) m["class"] = to_string(r->morphism_class(f));
    j["morphisms"].push_back(std::move(m));
  }
  j["composition"] = Json::array();
  for (const auto& e : raw.composition) {
    j["composition"].push_back({{"first", e.first}, {"then", e.then}, {"equals", e.equals}});
  }
  return j;
}

inline Json category_json(const ReedyCategory& r) { return category_json(r.base(), &r); }

inline Json functor_json(const FunctorData& g, const std::string& source_path,
                         const std::string& target_path) {
  Json j;
  j["source"] = source_path;
  j["target"] = target_path;
  j["on_objects"] = Json::object();
  j["on_morphisms"] = Json::object();
  const auto& c = g.source();
  const auto& d = g.target();
  for (ObjectId a = 0; a < c.object_count(); ++a) {
    j["on_objects"][c.object_name(a)] = d.object_name(g.on_object(a));
  }
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    j["on_morphisms"][c.morphism_name(f)] = d.morphism_name(g.on_morphism(f));
  }
  return j;
}

inline FunctorFile load_functor(const std::filesystem::path& path) {
  const Json j = detail::located(path, [&] { return detail::read_json(path); });
  FunctorFile out;
  const auto dir = path.parent_path();
  out.source_path = dir / detail::located(path, [&] { return detail::string_field(j, "source", "functor"); });
  out.target_path = dir / detail::located(path, [&] { return detail::string_field(j, "target", "functor"); });
  out.source = load_category(out.source_path);
  out.target = load_category(out.target_path);
  out.functor = detail::located(path, [&] {
    const auto objects = detail::string_map(detail::field(j, "on_objects", "functor"), "on_objects");
    const Json empty = Json::object();
    const auto morphisms = detail::string_map(j.contains("on_morphisms") ? j.at("on_morphisms") : empty, "on_morphisms");
    return validate_functor(out.source.category, out.target.category, objects, morphisms);
  });
  if (out.source.reedy && out.target.reedy) {
    out.reedy = detail::located(path, [&] {
      return validate_reedy_functor(out.functor, *out.source.reedy, *out.target.reedy);
    });
  }
  return out;
}

inline Json diagram_body_json(const SetDiagram& x) {
  const auto& c = x.shape();
  Json j;
  j["sets"] = Json::object();
  for (ObjectId a = 0; a < c.object_count(); ++a) j["sets"][c.object_name(a)] = x.set(a).elements();
  j["functions"] = Json::object();
  for (MorphismId f = static_cast<MorphismId>(c.object_count()); f < c.morphism_count(); ++f) {
    Json row = Json::object();
    for (std::uint32_t i = 0; i < x.set(c.src(f)).size(); ++i) {
      row[x.set(c.src(f)).element(i)] = x.set(c.dst(f)).element(x.apply(f, i));
    }
    j["functions"][c.morphism_name(f)] = std::move(row);
  }
  return j;
}

inline Json diagram_json(const SetDiagram& x, const std::string& category_path) {
  Json j;
  j["category"] = category_path;
  Json body = diagram_body_json(x);
  j["sets"] = std::move(body["sets"]);
  j["functions"] = std::move(body["functions"]);
  return j;
}

inline SetDiagram parse_diagram_body(const FiniteCategory& shape, const Json& j) {
  RawDiagram raw;
  const Json& sets = detail::field(j, "sets", "diagram");
  if (!sets.is_object()) throw Error(ErrorKind::Parse, "diagram: \"sets\" must be an object");
  for (const auto& [obj, elems] : sets.items()) {
    if (!elems.is_array()) throw Error(ErrorKind::Parse, "diagram: set of '" + obj + "' must be an array");
    auto& v = raw.sets[obj];
    for (const auto& e : elems) {
      if (!e.is_string()) throw Error(ErrorKind::Parse, "diagram: elements must be strings");
      v.push_back(e.get<std::string>());
    }
  }
  if (j.contains("functions")) {
    const Json& fns = j.at("functions");
    if (!fns.is_object()) throw Error(ErrorKind::Parse, "diagram: \"functions\" must be an object");
    for (const auto& [mor, table] : fns.items()) {
      raw.functions[mor] = detail::string_map(table, "function '" + mor + "'");
    }
  }
  return validate_diagram(shape, raw);
}

inline DiagramFile load_diagram(const std::filesystem::path& path) {
  const Json j = detail::located(path, [&] { return detail::read_json(path); });
  DiagramFile out;
  out.category_path =
      path.parent_path() / detail::located(path, [&] { return detail::string_field(j, "category", "diagram"); });
  out.category = load_category(out.category_path);
  out.diagram = detail::located(path, [&] { return parse_diagram_body(out.category.category, j); });
  return out;
}

/// Writes `j` with two-space indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, path.string() + ": cannot write");
  out << text;
}

}  // namespace finreedy
