#pragma once

// Machine-readable and text renderings of verdicts and computed results.

#include <string>
#include <vector>

#include "counterexample.hpp"
#include "json_io.hpp"
#include "quillen.hpp"
#include "setdiag.hpp"

namespace finreedy {

inline Json witness_json(const ReedyFunctor& g, const Witness& w) {
  const auto& src = g.source().base();
  const auto& tgt = g.target().base();
  Json j;
  j["alpha"] = src.object_name(w.alpha);
  j["beta"] = tgt.object_name(w.beta);
  j["sigma"] = tgt.morphism_name(w.sigma);
  j["side"] = to_string(w.side);
  j["components"] = w.components;
  j["empty"] = w.empty;
  return j;
}

struct VerdictOptions {
  bool witnesses = true;
  /// List every anchor, not only the disconnected ones.
  bool all_anchors = false;
};

inline Json verdict_json(const ReedyFunctor& g, const Verdict& fibering, const Verdict& cofibering,
                         const VerdictOptions& options = {}) {
  Json j;
  j["fibering"] = fibering.holds;
  j["cofibering"] = cofibering.holds;
  j["witnesses"] = Json::array();
  if (options.witnesses || options.all_anchors) {
    for (const Verdict* v : {&fibering, &cofibering}) {
      for (const auto& w : options.all_anchors ? v->anchors : v->witnesses) {
        j["witnesses"].push_back(witness_json(g, w));
      }
    }
  }
  return j;
}

inline std::string verdict_text(const ReedyFunctor& g, const char* name, const Verdict& v,
                                const VerdictOptions& options = {}) {
  std::string s = std::string(name) + ": " + (v.holds ? "true" : "false") + " (anchors " +
                  std::to_string(v.anchors.size()) + ", empty " + std::to_string(v.empty_anchors) +
                  ", connected " + std::to_string(v.connected_anchors) + ", disconnected " +
                  std::to_string(v.witnesses.size()) + ")\n";
  if (options.witnesses || options.all_anchors) {
    const auto& src = g.source().base();
    const auto& tgt = g.target().base();
    for (const auto& w : options.all_anchors ? v.anchors : v.witnesses) {
      s += "  " + std::string(to_string(w.side)) + " alpha=" + src.object_name(w.alpha) +
           " beta=" + tgt.object_name(w.beta) + " sigma=" + tgt.morphism_name(w.sigma) + " ";
      s += w.empty ? std::string("empty") : "components=" + std::to_string(w.components);
      s += "\n";
    }
  }
  return s;
}

inline Json index_report_json(const ReedyFunctor& g, const IndexReport& r) {
  const auto& tgt = g.target().base();
  Json j;
  j["alpha"] = g.source().base().object_name(r.alpha);
  j["beta"] = tgt.object_name(r.beta);
  j["S"] = Json::array();
  for (const auto& l : r.s) j["S"].push_back(label_name(g, l));
  j["T"] = Json::array();
  for (std::uint32_t k = 0; k < r.t.count(); ++k) {
    Json cls;
    cls["representative"] = label_name(g, r.s[r.t.representatives[k]]);
    cls["members"] = Json::array();
    for (std::uint32_t i = 0; i < r.s.size(); ++i) {
      if (r.t.class_of[i] == k) cls["members"].push_back(label_name(g, r.s[i]));
    }
    cls["index"] = r.index.codomain.element(r.index.map[k]);
    j["T"].push_back(std::move(cls));
  }
  j["per_tau"] = Json::array();
  for (const auto& tc : r.per_tau) {
    Json t;
    t["tau"] = tgt.morphism_name(tc.tau);
    t["components"] = tc.components;
    t["classes"] = Json::array();
    for (auto cls : tc.classes) t["classes"].push_back(label_name(g, r.s[r.t.representatives[cls]]));
    j["per_tau"].push_back(std::move(t));
  }
  j["injective"] = r.injective;
  j["pass"] = r.match_prod_ok;
  return j;
}

inline Json function_json(const SetFunction& f) {
  Json j = Json::object();
  for (std::uint32_t i = 0; i < f.map.size(); ++i) j[f.domain.element(i)] = f.codomain.element(f.map[i]);
  return j;
}

inline Json limit_json(const SetDiagram& x, const LimitResult& l) {
  Json j;
  j["op"] = "limit";
  j["elements"] = l.set.elements();
  j["maps"] = Json::object();
  for (ObjectId a = 0; a < x.shape().object_count(); ++a) {
    j["maps"][x.shape().object_name(a)] = function_json(l.projections[a]);
  }
  return j;
}

inline Json colimit_json(const SetDiagram& x, const ColimitResult& c) {
  Json j;
  j["op"] = "colimit";
  j["elements"] = c.set.elements();
  j["maps"] = Json::object();
  for (ObjectId a = 0; a < x.shape().object_count(); ++a) {
    j["maps"][x.shape().object_name(a)] = function_json(c.injections[a]);
  }
  return j;
}

}  // namespace finreedy
