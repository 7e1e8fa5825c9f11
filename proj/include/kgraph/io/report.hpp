#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kgraph/actions.hpp"
#include "kgraph/analysis/cstar.hpp"
#include "kgraph/analysis/polytree.hpp"
#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/analysis/stability.hpp"
#include "kgraph/analysis/stabilize.hpp"
#include "kgraph/rules.hpp"

namespace kgraph::report {

using Json = nlohmann::ordered_json;

inline Json edge_list(const ColoredGraph& g, const std::vector<EdgeId>& es) {
  Json a = Json::array();
  for (EdgeId e : es) a.push_back(g.edge(e).name);
  return a;
}

inline Json path(const ColoredGraph& g, const Path& p) { return to_string(g, p); }

// {"x": "y", ...} for an edge map between two graphs.
inline Json edge_map(const ColoredGraph& from, const ColoredGraph& to, const EdgeMap& m) {
  Json o = Json::object();
  for (EdgeId e = 0; e < m.size(); ++e) o[from.edge(e).name] = to.edge(m[e]).name;
  return o;
}

inline Json square(const ColoredGraph& g, const Square& s) { return square_string(g, s); }

inline Json rule_verdict(const RuleSet& r, const RuleVerdict& v) {
  Json o;
  o["valid"] = v.valid;
  if (v.witness) {
    const ColoredGraph& g = r.graph;
    Json w;
    w["path"] = edge_list(g, {v.witness->path.begin(), v.witness->path.end()});
    w["via_first"] = edge_list(g, v.witness->via_first);
    w["via_second"] = edge_list(g, v.witness->via_second);
    o["witness"] = w;
  }
  return o;
}

// Validation with structural errors folded in.
inline Json validate(const RuleSet& r, bool* ok = nullptr) {
  Json o;
  try {
    auto v = validate_rule(r);
    o = rule_verdict(r, v);
    if (ok) *ok = v.valid;
  } catch (const MalformedRule& e) {
    o["valid"] = false;
    o["malformed"] = e.what();
    if (ok) *ok = false;
  }
  return o;
}

inline Json quasi_product(const QuasiProductVerdict& v) {
  Json o;
  o["quasi_product"] = v.instance.has_value();
  if (v.instance) {
    const auto& qp = *v.instance;
    o["lambda_root"] = qp.gamma().graph().vertex_name(qp.lambda_root);
    o["gamma_root"] = qp.lambda().graph().vertex_name(qp.gamma_root);
    o["lambda_iso"] = edge_map(qp.lambda_layers()[qp.lambda_root].graph(), qp.lambda().graph(), qp.lambda_iso.edge);
    o["gamma_iso"] = edge_map(qp.gamma_layers()[qp.gamma_root].graph(), qp.gamma().graph(), qp.gamma_iso.edge);
  } else {
    o["failed_condition"] = v.failed_condition;
    o["reason"] = v.reason;
  }
  return o;
}

inline Json action_map(const ColoredGraph& acting, const ColoredGraph& acted, const EdgeActionMap& m) {
  Json o;
  o["acting"] = acting.edge(m.acting).name;
  o["image"] = edge_map(acted, acted, m.image);
  o["injective"] = m.injective;
  if (m.collision) {
    auto [x, y, z] = *m.collision;
    o["collision"] = {acted.edge(x).name, acted.edge(y).name, acted.edge(z).name};
  }
  o["composition_checked"] = m.composition_checked;
  if (m.composition_failure) o["composition_failure"] = *m.composition_failure;
  return o;
}

inline Json stability(const QuasiProductInstance& qp, const StabilityReport& r) {
  Json o;
  o["side"] = side_name(r.side);
  o["stable"] = r.stable;
  if (r.violation) o["violation"] = square(qp.host().graph(), *r.violation);
  if (r.rule_coherent) o["rule_coherent"] = *r.rule_coherent;
  if (r.incoherent_layer) {
    const ColoredGraph& layers_over = r.side == Side::gamma ? qp.lambda().graph() : qp.gamma().graph();
    o["incoherent_layer"] = layers_over.vertex_name(*r.incoherent_layer);
  }
  const ColoredGraph& acting = r.side == Side::gamma ? qp.gamma().graph() : qp.lambda().graph();
  const ColoredGraph& acted = r.side == Side::gamma ? qp.lambda().graph() : qp.gamma().graph();
  Json maps = Json::array();
  for (const auto& m : r.maps) maps.push_back(action_map(acting, acted, m));
  o[r.side == Side::gamma ? "right_actions" : "left_actions"] = maps;
  return o;
}

inline Json bipath(const ColoredGraph& g, const BiPath& p) { return to_string(g, p); }

inline Json relaxed(const QuasiProductInstance& qp, const RelaxedStabilityReport& r) {
  const ColoredGraph& acting = r.side == Side::gamma ? qp.lambda().graph() : qp.gamma().graph();
  const ColoredGraph& acted = r.side == Side::gamma ? qp.gamma().graph() : qp.lambda().graph();
  Json o;
  o["side"] = side_name(r.side);
  o["verdict"] = verdict_name(r.verdict);
  o["root"] = acting.vertex_name(r.root);
  Json maps = Json::object();
  for (EdgeId x = 0; x < r.edge_maps.size(); ++x) {
    Json m;
    m["map"] = edge_map(acted, acted, r.edge_maps[x]);
    m["bijective"] = static_cast<bool>(r.bijective[x]);
    maps[acting.edge(x).name] = m;
  }
  o["edge_actions"] = maps;
  if (r.non_bijective) o["non_bijective"] = acting.edge(*r.non_bijective).name;
  Json hs = Json::array();
  for (const auto& h : r.holonomies) {
    Json x;
    x["edge"] = acting.edge(h.edge).name;
    x["cycle"] = bipath(acting, h.cycle);
    x["permutation"] = edge_map(acted, acted, h.permutation);
    x["identity"] = h.identity;
    hs.push_back(x);
  }
  o["holonomies"] = hs;
  if (r.obstruction) o["obstruction"] = hs[*r.obstruction];
  if (!r.transports.empty()) {
    Json t = Json::object();
    for (VertexId v = 0; v < r.transports.size(); ++v) t[acting.vertex_name(v)] = edge_map(acted, acted, r.transports[v]);
    o["transports"] = t;
  }
  o["path_checked"] = r.path_checked;
  if (r.path_failure) o["path_failure"] = *r.path_failure;
  return o;
}

inline Json stabilization(const QuasiProductInstance& qp, const StabilizationResult& s) {
  const ColoredGraph& hg = qp.host().graph();
  Json o;
  o["side"] = side_name(s.side);
  o["root"] = (s.side == Side::gamma ? qp.lambda().graph() : qp.gamma().graph()).vertex_name(s.root);
  o["verified"] = s.verified();
  o["rule_valid"] = s.rule_valid;
  o["edge_stable"] = s.edge_stable;
  o["theta_preserves_squares"] = s.theta_preserves_squares;
  Json moved = Json::object();
  for (EdgeId e = 0; e < s.theta.size(); ++e)
    if (s.theta[e] != e) moved[hg.edge(e).name] = hg.edge(s.theta[e]).name;
  o["theta_moved"] = moved;
  o["theta"] = edge_map(hg, hg, s.theta);
  if (!s.failures.empty()) o["failures"] = s.failures;
  return o;
}

inline Json decision(const QuasiProductInstance& qp, const ProductDecision& d) {
  Json o;
  o["answer"] = answer_name(d.answer);
  if (d.iso) {
    KGraph product = product_kgraph(qp.lambda(), qp.gamma());
    o["iso"] = edge_map(qp.host().graph(), product.graph(), d.iso->edge);
  }
  if (d.obstruction_side) {
    o["obstruction_side"] = side_name(*d.obstruction_side);
    const auto& r = *d.obstruction_side == Side::gamma ? d.gamma_side : d.lambda_side;
    if (r) o["certificate"] = relaxed(qp, *r);
  }
  Json sides;
  if (d.gamma_side) sides["gamma"] = verdict_name(d.gamma_side->verdict);
  if (d.lambda_side) sides["lambda"] = verdict_name(d.lambda_side->verdict);
  o["relaxed_stability"] = sides;
  if (!d.notes.empty()) o["notes"] = d.notes;
  return o;
}

inline Json shortcut(const QuasiProductInstance& qp, const ShortcutDecision& s) {
  Json o;
  o["reason"] = s.reason;
  o["consistent"] = s.consistent;
  if (s.ktree) {
    o["ktree_verified"] = s.ktree->verified;
    if (!s.ktree->reason.empty()) o["ktree_reason"] = s.ktree->reason;
  }
  o["decision"] = decision(qp, s.decision);
  return o;
}

inline Json laws(const LawReport& r) {
  Json o;
  o["holds"] = r.holds();
  o["vacuous"] = r.vacuous();
  Json a = Json::array();
  for (const auto& l : r.laws) {
    Json x;
    x["law"] = l.law;
    x["checked"] = l.checked;
    x["failed"] = l.failed;
    if (!l.examples.empty()) x["examples"] = l.examples;
    a.push_back(x);
  }
  o["laws"] = a;
  return o;
}

inline Json composition(const QuasiProductInstance& qp, const CompositionReport& r, std::size_t limit = 10) {
  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  Json o;
  o["checked"] = r.checked;
  o["failures"] = r.failures.size();
  Json a = Json::array();
  for (std::size_t i = 0; i < r.failures.size() && i < limit; ++i) {
    const auto& f = r.failures[i];
    const ColoredGraph& actor = f.right_action ? gg : lg;
    const ColoredGraph& acted = f.right_action ? lg : gg;
    Json x;
    x["action"] = f.right_action ? "right" : "left";
    x["acting"] = path(actor, f.acting);
    x["first"] = path(acted, f.first);
    x["second"] = path(acted, f.second);
    x["combined"] = path(acted, f.combined);
    x["piecewise"] = path(acted, f.piecewise);
    a.push_back(x);
  }
  o["examples"] = a;
  return o;
}

inline Json crossed_product(const QuasiProductInstance& qp, const CrossedProductReport& r) {
  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  Json o;
  o["kind"] = "crossed-product";
  o["headline"] = r.headline;
  o["cycle_length"] = r.cycle.n;
  o["group_rank"] = r.cycle.k;
  o["gamma_stable"] = r.gamma_stable;
  o["vertex_fixing_automorphisms_trivial"] = r.automorphisms_trivial;
  Json rho = Json::array();
  for (std::size_t i = 0; i < r.rho.size(); ++i)
    for (std::size_t j = 0; j < r.rho[i].size(); ++j) {
      Json x;
      x["i"] = i;
      x["j"] = j + 1;
      x["edge"] = gg.edge(r.cycle.f[i][j]).name;
      x["map"] = edge_map(lg, lg, r.rho[i][j].image);
      x["bijective"] = r.rho[i][j].injective;
      x["composition_checked"] = r.rho[i][j].composition_checked;
      if (r.rho[i][j].composition_failure) x["composition_failure"] = *r.rho[i][j].composition_failure;
      rho.push_back(x);
    }
  o["rho"] = rho;
  Json around = Json::array();
  for (const auto& m : r.around) around.push_back(edge_map(lg, lg, m));
  o["around_cycle"] = around;
  o["unitaries"] = r.unitaries;
  return o;
}

inline Json tensor(const QuasiProductInstance& qp) {
  Json o;
  o["kind"] = "tensor";
  o["headline"] = "C*(Ω) ≅ " + cstar_name(qp.lambda(), "C*(Λ)") + " ⊗ " + cstar_name(qp.gamma(), "C*(Γ)");
  return o;
}

inline Json ck(const CKPresentation& p) {
  Json o;
  o["kind"] = "ck-presentation";
  o["source_free"] = p.warnings.empty();
  o["generators"] = p.generators;
  Json rel = Json::array();
  for (const auto& r : p.relations) rel.push_back(r.kind + ": " + r.text);
  o["relations"] = rel;
  if (!p.warnings.empty()) o["warnings"] = p.warnings;
  return o;
}

// Plain-text rendering of a report tree: one "key: value" line per scalar,
// nested blocks indented by two spaces.
inline void render_text(const Json& j, std::string& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto simple = [](const Json& v) {
    if (!v.is_array()) return !v.is_object();
    for (const auto& x : v)
      if (x.is_array() || x.is_object()) return false;
    return true;
  };
  auto flat = [&](const Json& v) {
    if (!v.is_array()) return scalar(v);
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar(x);
    return "[" + s + "]";
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (simple(*it)) {
        out += pad + it.key() + ": " + flat(*it) + "\n";
      } else {
        out += pad + it.key() + ":\n";
        render_text(*it, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& x : j) {
      if (simple(x)) {
        out += pad + "- " + flat(x) + "\n";
      } else {
        out += pad + "-\n";
        render_text(x, out, indent + 2);
      }
    }
  } else {
    out += pad + scalar(j) + "\n";
  }
}

inline std::string to_text(const Json& j) {
  std::string out;
  render_text(j, out);
  return out;
}

}  // namespace kgraph::report
