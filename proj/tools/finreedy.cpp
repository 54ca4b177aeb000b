#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <finreedy/finreedy.hpp>

namespace fs = std::filesystem;
using namespace finreedy;

namespace {

enum Exit : int { kOk = 0, kFails = 1, kInvalid = 2 };

struct AnalyzeOptions {
  std::string path;
  std::string mode = "both";
  std::string format = "text";
  bool witness = false;
  bool all_anchors = false;
};

struct MatchprodOptions {
  std::string path;
  std::string alpha;
  std::string beta;
};

struct LimitsOptions {
  std::string path;
  std::string op = "limit";
  std::string alpha;
  std::string functor;
  std::string side = "left";
  int degree = 0;
};

struct CofinalOptions {
  std::string path;
  std::string side = "left";
};

struct CatalogOptions {
  std::string name;
  std::string out;
  int max_degree = -1;
  int degree = 1;
  int n = 2;
  int m = 2;
  int factors = 2;
  std::vector<std::size_t> vary{1};
  int basepoint = 0;
  std::uint64_t seed = 0;
  bool opposite = false;
};

const ReedyFunctor& require_reedy(const FunctorFile& f, const std::string& path) {
  if (!f.reedy) {
    throw Error(ErrorKind::NotReedy, path + ": source and target need degrees and classes");
  }
  return *f.reedy;
}

int cmd_validate(const std::string& path) {
  const Json j = detail::located(path, [&] { return detail::read_json(path); });
  if (j.is_object() && j.contains("on_objects")) {
    FunctorFile f = load_functor(path);
    std::cout << "functor: " << f.source.category.object_count() << " -> "
              << f.target.category.object_count() << " objects, "
              << f.source.category.morphism_count() << " -> " << f.target.category.morphism_count()
              << " morphisms" << (f.reedy ? ", reedy" : "") << "\n";
  } else if (j.is_object() && j.contains("sets")) {
    DiagramFile d = load_diagram(path);
    std::size_t elements = 0;
    for (ObjectId a = 0; a < d.diagram.shape().object_count(); ++a) elements += d.diagram.set(a).size();
    std::cout << "diagram: " << d.diagram.shape().object_count() << " objects, " << elements
              << " elements\n";
  } else {
    CategoryFile c = detail::located(path, [&] { return parse_category(j); });
    std::cout << "category: " << c.category.object_count() << " objects, "
              << c.category.morphism_count() << " morphisms" << (c.reedy ? ", reedy" : "") << "\n";
  }
  return kOk;
}

int cmd_analyze(const AnalyzeOptions& o) {
  FunctorFile f = load_functor(o.path);
  const ReedyFunctor g = require_reedy(f, o.path);
  const Verdict fib = is_fibering(g);
  const Verdict cof = is_cofibering(g);
  const bool want_fib = o.mode != "cofibering";
  const bool want_cof = o.mode != "fibering";
  if (o.format == "json") {
    std::cout << dump(verdict_json(g, fib, cof, {true, o.all_anchors}));
  } else {
    const VerdictOptions opts{o.witness, o.all_anchors};
    if (want_fib) std::cout << verdict_text(g, "fibering", fib, opts);
    if (want_cof) std::cout << verdict_text(g, "cofibering", cof, opts);
  }
  const bool ok = (!want_fib || fib.holds) && (!want_cof || cof.holds);
  return ok ? kOk : kFails;
}

int cmd_matchprod(const MatchprodOptions& o) {
  FunctorFile f = load_functor(o.path);
  const ReedyFunctor g = require_reedy(f, o.path);
  auto alpha = g.source().base().find_object(o.alpha);
  auto beta = g.target().base().find_object(o.beta);
  if (!alpha) throw Error(ErrorKind::BadAnchor, "unknown source object '" + o.alpha + "'");
  if (!beta) throw Error(ErrorKind::BadAnchor, "unknown target object '" + o.beta + "'");
  const IndexReport r = match_prod_check(g, *alpha, *beta);
  std::cout << dump(index_report_json(g, r));
  return r.match_prod_ok ? kOk : kFails;
}

ObjectId object_named(const FiniteCategory& c, const std::string& name) {
  if (name.empty()) throw Error(ErrorKind::Parse, "--alpha is required for this operation");
  return c.object(name);
}

Json diagram_result(const char* op, const SetDiagram& x) {
  Json j;
  j["op"] = op;
  Json body = diagram_body_json(x);
  j["sets"] = std::move(body["sets"]);
  j["functions"] = std::move(body["functions"]);
  return j;
}

const ReedyCategory& reedy_shape(const DiagramFile& d) {
  if (!d.category.reedy) {
    throw Error(ErrorKind::NotReedy, d.category_path.string() + ": category has no degrees");
  }
  return *d.category.reedy;
}

int cmd_limits(const LimitsOptions& o) {
  DiagramFile d = load_diagram(o.path);
  const SetDiagram& x = d.diagram;
  Json out;
  if (o.op == "limit") {
    out = limit_json(x, limit(x));
  } else if (o.op == "colimit") {
    out = colimit_json(x, colimit(x));
  } else if (o.op == "matching") {
    const ReedyCategory& r = reedy_shape(d);
    const ObjectId alpha = object_named(r.base(), o.alpha);
    MatchingObject m = matching_object(r, x, alpha);
    out["op"] = "matching";
    out["alpha"] = o.alpha;
    out["elements"] = m.limit.set.elements();
    out["map"] = function_json(m.map);
  } else if (o.op == "latching") {
    const ReedyCategory& r = reedy_shape(d);
    const ObjectId alpha = object_named(r.base(), o.alpha);
    LatchingObject l = latching_object(r, x, alpha);
    out["op"] = "latching";
    out["alpha"] = o.alpha;
    out["elements"] = l.colimit.set.elements();
    out["map"] = function_json(l.map);
  } else if (o.op == "kan") {
    if (o.functor.empty()) throw Error(ErrorKind::Parse, "--functor is required for kan");
    FunctorFile f = load_functor(o.functor);
    if (!f.functor.source().same_structure(x.shape())) {
      throw Error(ErrorKind::ShapeMismatch, "diagram category differs from the functor's source");
    }
    const SetDiagram k = o.side == "right" ? right_kan(f.functor, x) : left_kan(f.functor, x);
    out = diagram_result("kan", k);
    out["side"] = o.side;
  } else if (o.op == "skeleton" || o.op == "coskeleton") {
    const ReedyCategory& r = reedy_shape(d);
    const SetDiagram k = o.op == "skeleton" ? skeleton(r, o.degree, x) : coskeleton(r, o.degree, x);
    out = diagram_result(o.op.c_str(), k);
    out["degree"] = o.degree;
  }
  std::cout << dump(out);
  return kOk;
}

int cmd_cofinal(const CofinalOptions& o) {
  FunctorFile f = load_functor(o.path);
  const CofinalityVerdict v = o.side == "right" ? is_right_cofinal(f.functor) : is_left_cofinal(f.functor);
  std::cout << o.side << " cofinal: " << (v.holds ? "true" : "false");
  if (v.failing) {
    std::cout << " (object " << f.functor.target().object_name(*v.failing) << ": "
              << (v.components == 0 ? std::string("empty") : std::to_string(v.components) + " components")
              << ")";
  }
  std::cout << "\n";
  return v.holds ? kOk : kFails;
}

int default_degree(const CatalogOptions& o, int fallback) { return o.max_degree < 0 ? fallback : o.max_degree; }

int write_functor(const CatalogOptions& o, const ReedyFunctor& g) {
  if (o.out.empty()) throw Error(ErrorKind::Parse, "functor entries need --out DIR");
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "source.json", dump(category_json(g.source())));
  write_file(dir / "target.json", dump(category_json(g.target())));
  write_file(dir / "functor.json", dump(functor_json(g.data(), "source.json", "target.json")));
  return kOk;
}

int write_category(const CatalogOptions& o, const ReedyCategory& r) {
  const std::string text = dump(category_json(r));
  if (o.out.empty()) {
    std::cout << text;
    return kOk;
  }
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_file(dir / "category.json", text);
  return kOk;
}

int cmd_catalog(const CatalogOptions& o) {
  std::optional<ReedyCategory> category;
  std::optional<ReedyFunctor> functor;
  if (o.name == "delta") {
    category = delta_truncated(default_degree(o, 2));
  } else if (o.name == "power") {
    category = power_reedy(delta_truncated(default_degree(o, o.n)), o.m);
  } else if (o.name == "delta-rest") {
    functor = delta_rest_truncated(default_degree(o, 3)).inclusion;
  } else if (o.name == "example-square") {
    functor = example_square();
  } else if (o.name == "kernel-example") {
    functor = kernel_example();
  } else if (o.name == "arrow-collapse") {
    functor = arrow_collapse();
  } else if (o.name == "diagonal") {
    functor = diagonal_functor(o.n, o.m);
  } else if (o.name == "truncation") {
    functor = truncation_inclusion(delta_truncated(default_degree(o, 2)), o.degree);
  } else if (o.name == "slice") {
    const ReedyCategory delta = delta_truncated(o.n);
    if (o.factors < 1) throw Error(ErrorKind::PreconditionFailed, "--factors must be at least 1");
    std::vector<std::size_t> k;
    for (std::size_t i : o.vary) {
      if (i < 1) throw Error(ErrorKind::DanglingReference, "slice coordinates start at 1");
      k.push_back(i - 1);
    }
    std::map<std::size_t, ObjectId> basepoints;
    for (std::size_t i = 0; i < static_cast<std::size_t>(o.factors); ++i) {
      basepoints.emplace(i, delta.base().object(delta_object_name(o.basepoint)));
    }
    functor = slice_inclusion(std::vector<ReedyCategory>(o.factors, delta), k, basepoints);
  } else if (o.name == "random") {
    functor = random_reedy_functor(o.seed);
  } else {
    throw Error(ErrorKind::Parse, "unknown catalog entry '" + o.name + "'");
  }
  if (category) return write_category(o, o.opposite ? opposite_reedy(*category) : *category);
  return write_functor(o, o.opposite ? opposite(*functor) : *functor);
}

void apply_env_limit() {
  const char* env = std::getenv("REEDY_LIMIT");
  if (env == nullptr || *env == '\0') return;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(env, &used);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    size_guard().max_morphisms = v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Parse, std::string("REEDY_LIMIT is not a number: '") + env + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Reedy category analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::size_t> limit;
  app.add_option("--limit", limit, "Maximum number of morphisms in any category");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Validate a category, functor or diagram file");
  validate->add_option("path", validate_path)->required()->check(CLI::ExistingFile);

  AnalyzeOptions analyze_opts;
  auto* analyze = app.add_subcommand("analyze", "Decide fibering and cofibering");
  analyze->add_option("functor", analyze_opts.path)->required()->check(CLI::ExistingFile);
  analyze->add_option("--mode", analyze_opts.mode)->check(CLI::IsMember({"fibering", "cofibering", "both"}));
  analyze->add_option("--format", analyze_opts.format)->check(CLI::IsMember({"text", "json"}));
  analyze->add_flag("--witness", analyze_opts.witness, "List disconnected anchors");
  analyze->add_flag("--all-anchors", analyze_opts.all_anchors, "List every anchor");

  MatchprodOptions matchprod_opts;
  auto* matchprod = app.add_subcommand("matchprod", "Index-set report at an anchor");
  matchprod->add_option("functor", matchprod_opts.path)->required()->check(CLI::ExistingFile);
  matchprod->add_option("--alpha", matchprod_opts.alpha)->required();
  matchprod->add_option("--beta", matchprod_opts.beta)->required();

  LimitsOptions limits_opts;
  auto* limits = app.add_subcommand("limits", "Limits, colimits and Kan extensions of a set diagram");
  limits->add_option("diagram", limits_opts.path)->required()->check(CLI::ExistingFile);
  limits->add_option("--op", limits_opts.op)
      ->check(CLI::IsMember({"limit", "colimit", "matching", "latching", "kan", "skeleton", "coskeleton"}));
  limits->add_option("--alpha", limits_opts.alpha);
  limits->add_option("--functor", limits_opts.functor)->check(CLI::ExistingFile);
  limits->add_option("--side", limits_opts.side)->check(CLI::IsMember({"left", "right"}));
  limits->add_option("--degree", limits_opts.degree)->check(CLI::NonNegativeNumber);

  CofinalOptions cofinal_opts;
  auto* cofinal = app.add_subcommand("cofinal", "Check left or right cofinality");
  cofinal->add_option("functor", cofinal_opts.path)->required()->check(CLI::ExistingFile);
  cofinal->add_option("--side", cofinal_opts.side)->check(CLI::IsMember({"left", "right"}));

  CatalogOptions catalog_opts;
  auto* catalog = app.add_subcommand("catalog", "Export a built-in category or functor");
  catalog->add_option("name", catalog_opts.name)->required();
  catalog->add_option("--out", catalog_opts.out, "Output directory");
  catalog->add_option("--max-degree", catalog_opts.max_degree)->check(CLI::NonNegativeNumber);
  catalog->add_option("--degree", catalog_opts.degree)->check(CLI::NonNegativeNumber);
  catalog->add_option("--n", catalog_opts.n)->check(CLI::NonNegativeNumber);
  catalog->add_option("--m", catalog_opts.m)->check(CLI::PositiveNumber);
  catalog->add_option("--factors", catalog_opts.factors)->check(CLI::PositiveNumber);
  catalog->add_option("--vary", catalog_opts.vary, "Varying coordinates, counted from 1");
  catalog->add_option("--basepoint", catalog_opts.basepoint)->check(CLI::NonNegativeNumber);
  catalog->add_option("--seed", catalog_opts.seed);
  catalog->add_flag("--opposite", catalog_opts.opposite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    apply_env_limit();
    if (limit) size_guard().max_morphisms = *limit;
    if (*validate) return cmd_validate(validate_path);
    if (*analyze) return cmd_analyze(analyze_opts);
    if (*matchprod) return cmd_matchprod(matchprod_opts);
    if (*limits) return cmd_limits(limits_opts);
    if (*cofinal) return cmd_cofinal(cofinal_opts);
    if (*catalog) return cmd_catalog(catalog_opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
