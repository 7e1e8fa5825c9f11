#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/analysis/iso.hpp"
#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/analysis/stability.hpp"
#include "kgraph/error.hpp"

namespace kgraph {

struct StabilizationResult {
  Side side = Side::gamma;
  VertexId root = 0;
  RuleSet stabilized;          // same host skeleton, new squares
  EdgeMap theta;               // host edges -> stabilized edges; vertices fixed
  std::vector<EdgeMap> transports;
  bool rule_valid = false;
  bool edge_stable = false;
  bool theta_preserves_squares = false;
  std::vector<std::string> failures;

  bool verified() const { return rule_valid && edge_stable && theta_preserves_squares; }
};

// Rebuilds the host so that `side` becomes stable.  For Side::gamma the new
// mixed squares are
//   (e, r(g)) (s(e), g) ~ (r(e), g) (g <|~ e, s(g)),   g <|~ e = (T[s(e)] g) <| e
// every gamma layer becomes a copy of the root layer, and theta sends the
// gamma edge (v, g) to (v, T[v]^-1 g).  Side::lambda is the mirror image.
// The result is then checked exactly: the new rule is valid, edge-level
// stable on `side`, and theta carries every host square onto a new square.
inline StabilizationResult stabilize(const QuasiProductInstance& qp, Side side, std::size_t bound = 4) {
  auto rs = check_relaxed_stable(qp, side, bound);
  if (rs.verdict == Verdict::certified_no)
    throw PreconditionError(std::string("stabilize: the ") + side_name(side) +
                            " side is not relaxed stable");
  const ColoredGraph& hg = qp.host().graph();
  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  const BoxEmbedding& m = qp.embedding();

  StabilizationResult out;
  out.side = side;
  out.root = rs.root;
  out.transports = rs.transports;
  out.stabilized.graph = hg;
  SquareTable& t = out.stabilized.squares;
  std::vector<EdgeMap> inv;
  for (const auto& T : rs.transports) inv.push_back(*invert_map(T));

  for (const Square& s : qp.host().squares().squares()) {
    bool a_lhs = m.edge_origin[s.a].from_lhs, b_lhs = m.edge_origin[s.b].from_lhs;
    if (a_lhs != b_lhs) continue;
    if (side == Side::gamma ? a_lhs : !a_lhs) t.add(s);  // layers that are kept
  }
  if (side == Side::gamma) {
    for (VertexId v = 0; v < lg.vertex_count(); ++v)
      for (const Square& s : qp.gamma_layers()[out.root].squares().squares())
        t.add(m.host_rhs_edge(v, s.a), m.host_rhs_edge(v, s.b), m.host_rhs_edge(v, s.c),
              m.host_rhs_edge(v, s.d));
    for (EdgeId e = 0; e < lg.edge_count(); ++e)
      for (EdgeId g = 0; g < gg.edge_count(); ++g) {
        EdgeId e2 = qp.right(e, rs.transports[lg.src(e)][g]);
        t.add(m.host_lhs_edge(e, gg.dst(g)), m.host_rhs_edge(lg.src(e), g),
              m.host_rhs_edge(lg.dst(e), g), m.host_lhs_edge(e2, gg.src(g)));
      }
  } else {
    for (VertexId w = 0; w < gg.vertex_count(); ++w)
      for (const Square& s : qp.lambda_layers()[out.root].squares().squares())
        t.add(m.host_lhs_edge(s.a, w), m.host_lhs_edge(s.b, w), m.host_lhs_edge(s.c, w),
              m.host_lhs_edge(s.d, w));
    for (EdgeId e = 0; e < lg.edge_count(); ++e)
      for (EdgeId g = 0; g < gg.edge_count(); ++g) {
        EdgeId g2 = qp.left(rs.transports[gg.dst(g)][e], g);
        t.add(m.host_lhs_edge(e, gg.dst(g)), m.host_rhs_edge(lg.src(e), g),
              m.host_rhs_edge(lg.dst(e), g2), m.host_lhs_edge(e, gg.src(g)));
      }
  }

  out.theta.resize(hg.edge_count());
  for (EdgeId h = 0; h < hg.edge_count(); ++h) {
    const EdgeOrigin& o = m.edge_origin[h];
    if (side == Side::gamma)
      out.theta[h] = o.from_lhs ? h : m.host_rhs_edge(o.other, inv[o.other][o.factor_edge]);
    else
      out.theta[h] = o.from_lhs ? m.host_lhs_edge(inv[o.other][o.factor_edge], o.other) : h;
  }

  // Exact verification.
  std::optional<KGraph> tilde;
  try {
    auto v = validate_rule(out.stabilized);
    out.rule_valid = v.valid;
    if (!v.valid) out.failures.push_back("stabilized rule fails the cube condition");
    else tilde.emplace(out.stabilized);
  } catch (const MalformedRule& e) {
    out.failures.push_back(std::string("stabilized rule is malformed: ") + e.what());
  }
  if (tilde) {
    QuasiProductInstance q2(*tilde, qp.lambda(), qp.gamma(), m);
    out.edge_stable = check_stable(q2, side, 0).stable;
    if (!out.edge_stable) out.failures.push_back("stabilized rule is not edge-level stable");
    KGraphIso th{identity_iso(hg).vertex, out.theta};
    std::string why;
    out.theta_preserves_squares = is_isomorphism(qp.host(), *tilde, th, &why);
    if (!out.theta_preserves_squares) out.failures.push_back("theta: " + why);
  }
  return out;
}

enum class Answer { yes, no, unknown };

inline const char* answer_name(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

struct ProductDecision {
  Answer answer = Answer::unknown;
  std::optional<KGraphIso> iso;  // host -> product rule on box_product(lambda, gamma)
  std::optional<RelaxedStabilityReport> gamma_side, lambda_side;
  std::optional<Side> obstruction_side;
  std::vector<std::string> notes;
};

// The product k-graph lambda x gamma on box_product(lambda, gamma).
inline KGraph product_kgraph(const KGraph& lambda, const KGraph& gamma) {
  return KGraph(product_rule(lambda, gamma));
}

// Decides whether a quasi-product is isomorphic to the product of its
// factors.  Yes only with an isomorphism verified square by square; no only
// with an edge-level relaxed-stability obstruction on one side.
inline ProductDecision decide_product(const QuasiProductInstance& qp, std::size_t bound = 4,
                                      std::size_t oracle_budget = 0) {
  if (!is_connected(qp.lambda().graph()) || !is_connected(qp.gamma().graph()))
    throw PreconditionError("decide_product needs connected factor skeletons");
  ProductDecision out;
  out.gamma_side = check_relaxed_stable(qp, Side::gamma, bound);
  out.lambda_side = check_relaxed_stable(qp, Side::lambda, bound);
  for (Side s : {Side::gamma, Side::lambda}) {
    auto& r = s == Side::gamma ? out.gamma_side : out.lambda_side;
    if (r->verdict == Verdict::certified_no) {
      out.answer = Answer::no;
      out.obstruction_side = s;
      return out;
    }
  }

  KGraph product = product_kgraph(qp.lambda(), qp.gamma());
  auto fallback = [&](std::string why) {
    out.notes.push_back(std::move(why));
    out.answer = Answer::unknown;
    if (oracle_budget == 0) return;
    try {
      auto r = brute_force_iso(qp.host(), product, oracle_budget);
      out.notes.push_back(r.iso ? "oracle found an isomorphism" : "oracle found no isomorphism");
    } catch (const BudgetExceeded&) {
      out.notes.push_back("oracle ran out of budget");
    }
  };

  const BoxEmbedding& m = qp.embedding();
  auto first = stabilize(qp, Side::gamma, bound);
  if (!first.verified()) {
    fallback("gamma-side stabilization failed verification");
    return out;
  }
  QuasiProductInstance q1(KGraph(first.stabilized), qp.lambda(), qp.gamma(), m);
  q1.lambda_root = qp.lambda_root;
  q1.gamma_root = qp.gamma_root;
  q1.lambda_iso = qp.lambda_iso;
  q1.gamma_iso = qp.gamma_iso;
  auto rs = check_relaxed_stable(q1, Side::lambda, bound);
  if (rs.verdict == Verdict::certified_no) {
    // The stabilized host is isomorphic to the input, so this refutes a
    // product structure as well.
    out.answer = Answer::no;
    out.obstruction_side = Side::lambda;
    out.lambda_side = rs;
    out.notes.push_back("obstruction found after gamma-side stabilization");
    return out;
  }
  auto second = stabilize(q1, Side::lambda, bound);
  if (!second.verified()) {
    fallback("lambda-side stabilization failed verification");
    return out;
  }

  // Relabel every layer by the witnesses lambda_layers[w0] ~ lambda and
  // gamma_layers[x0] ~ gamma.
  const ColoredGraph& hg = qp.host().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  const auto& s1 = qp.lambda_iso;
  const auto& s2 = qp.gamma_iso;
  KGraphIso iso;
  iso.vertex.resize(hg.vertex_count());
  iso.edge.resize(hg.edge_count());
  for (VertexId h = 0; h < hg.vertex_count(); ++h) {
    auto [x, w] = m.vertex_origin[h];
    iso.vertex[h] = s1.vertex[x] * static_cast<VertexId>(gg.vertex_count()) + s2.vertex[w];
  }
  for (EdgeId h = 0; h < hg.edge_count(); ++h) {
    EdgeId t = second.theta[first.theta[h]];
    const EdgeOrigin& o = m.edge_origin[t];
    iso.edge[h] = o.from_lhs
                      ? static_cast<EdgeId>(s1.edge[o.factor_edge] * gg.vertex_count() + s2.vertex[o.other])
                      : static_cast<EdgeId>(qp.lambda().graph().edge_count() * gg.vertex_count() +
                                            s1.vertex[o.other] * gg.edge_count() + s2.edge[o.factor_edge]);
  }
  std::string why;
  if (!is_isomorphism(qp.host(), product, iso, &why)) {
    fallback("composite isomorphism failed verification: " + why);
    return out;
  }
  out.gamma_side->verdict = Verdict::certified_yes;
  out.lambda_side->verdict = Verdict::certified_yes;
  out.answer = Answer::yes;
  out.iso = std::move(iso);
  return out;
}

struct KTreeCertificate {
  bool verified = false;
  std::vector<PolytreeResult> factors;
  std::optional<KGraphIso> iso;  // gamma -> product of the factors
  std::string reason;
};

// Checks that gamma is the product of the given rank-1 polytrees.
inline KTreeCertificate verify_ktree(const KGraph& gamma, const std::vector<ColoredGraph>& factors,
                                     std::size_t budget = Budget::kDefault) {
  KTreeCertificate out;
  if (factors.empty() || static_cast<int>(factors.size()) != gamma.rank()) {
    out.reason = "need one candidate factor per color";
    return out;
  }
  for (const auto& f : factors) {
    out.factors.push_back(is_polytree(f));
    if (!out.factors.back().polytree) {
      out.reason = "a candidate factor is not a polytree";
      return out;
    }
  }
  // Product of all but the last factor, then identify gamma's skeleton with
  // (that product) [] (last factor).
  KGraph head(RuleSet{factors[0], {}});
  for (std::size_t i = 1; i + 1 < factors.size(); ++i)
    head = product_kgraph(head, KGraph(RuleSet{factors[i], {}}));
  Budget bud(budget);
  if (factors.size() == 1) {
    auto r = brute_force_iso(gamma, head, bud);
    if (!r.iso) {
      out.reason = "gamma is not isomorphic to the candidate factor";
      return out;
    }
    out.verified = true;
    out.iso = r.iso;
    return out;
  }
  const ColoredGraph& last = factors.back();
  KGraph prod = product_kgraph(head, KGraph(RuleSet{last, {}}));
  auto emb = match_box_skeleton(gamma.graph(), head.graph(), last, &bud);
  if (!emb) {
    out.reason = "gamma's skeleton is not the product of the candidate factors";
    return out;
  }
  const auto nv = static_cast<EdgeId>(last.vertex_count());
  KGraphIso iso;
  iso.vertex.resize(gamma.graph().vertex_count());
  iso.edge.resize(gamma.graph().edge_count());
  for (VertexId h = 0; h < iso.vertex.size(); ++h) {
    auto [x, w] = emb->vertex_origin[h];
    iso.vertex[h] = x * nv + w;
  }
  for (EdgeId h = 0; h < iso.edge.size(); ++h) {
    const EdgeOrigin& o = emb->edge_origin[h];
    iso.edge[h] = o.from_lhs ? o.factor_edge * nv + o.other
                             : static_cast<EdgeId>(head.graph().edge_count()) * nv +
                                   o.other * static_cast<EdgeId>(last.edge_count()) + o.factor_edge;
  }
  if (!is_isomorphism(gamma, prod, iso)) {
    // Another skeleton identification may still carry the product rule.
    auto r = brute_force_iso(gamma, prod, bud);
    if (!r.iso) {
      out.reason = "gamma's rule is not the product rule";
      return out;
    }
    iso = *r.iso;
  }
  out.verified = true;
  out.iso = std::move(iso);
  return out;
}

}  // namespace kgraph
