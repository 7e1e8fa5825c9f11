#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/error.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

// Edge permutations are vectors indexed by edge id.
using EdgeMap = std::vector<EdgeId>;

inline EdgeMap identity_map(std::size_t n) {
  EdgeMap m(n);
  std::iota(m.begin(), m.end(), EdgeId{0});
  return m;
}

// (a o b)(x) = a(b(x))
inline EdgeMap compose_maps(const EdgeMap& a, const EdgeMap& b) {
  EdgeMap m(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) m[i] = a[b[i]];
  return m;
}

inline std::optional<EdgeMap> invert_map(const EdgeMap& a) {
  EdgeMap inv(a.size(), 0);
  std::vector<bool> hit(a.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= a.size() || hit[a[i]]) return std::nullopt;
    hit[a[i]] = true;
    inv[a[i]] = static_cast<EdgeId>(i);
  }
  return inv;
}

inline Path map_path(const ColoredGraph& g, const EdgeMap& m, const Path& p) {
  if (p.empty()) return p;
  std::vector<EdgeId> e;
  for (EdgeId x : p.edges()) e.push_back(m[x]);
  return Path::of(g, std::move(e));
}

// Edge-level action of one acting edge on the other factor's edges.
struct EdgeActionMap {
  EdgeId acting = 0;
  EdgeMap image;
  bool injective = true;
  std::optional<std::tuple<EdgeId, EdgeId, EdgeId>> collision;  // x, y -> z
  std::size_t composition_checked = 0;
  std::optional<std::string> composition_failure;
};

struct StabilityReport {
  Side side = Side::gamma;
  bool stable = true;
  std::optional<Square> violation;  // host square with a nontrivial action
  std::optional<bool> rule_coherent;
  std::optional<VertexId> incoherent_layer;
  // Side::gamma: q <| for every gamma edge q, acting on lambda edges.
  // Side::lambda: e |> for every lambda edge e, acting on gamma edges.
  std::vector<EdgeActionMap> maps;
};

// Acting factor for a stability side: the factor whose edges are supposed
// to act trivially.
inline const KGraph& acting_factor(const QuasiProductInstance& qp, Side s) {
  return s == Side::gamma ? qp.lambda() : qp.gamma();
}
inline const KGraph& acted_factor(const QuasiProductInstance& qp, Side s) {
  return s == Side::gamma ? qp.gamma() : qp.lambda();
}

inline StabilityReport check_stable(const QuasiProductInstance& qp, Side side, std::size_t bound = 4) {
  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  StabilityReport out;
  out.side = side;
  for (EdgeId e = 0; e < lg.edge_count() && out.stable; ++e) {
    for (EdgeId g = 0; g < gg.edge_count(); ++g) {
      bool trivial = side == Side::gamma ? qp.left(e, g) == g : qp.right(e, g) == e;
      if (!trivial) {
        out.stable = false;
        out.violation = qp.mixed_square(e, g);
        break;
      }
    }
  }

  // With a connected acting factor every layer of a stable side is forced
  // to carry the same rule.
  if (out.stable && is_connected(acting_factor(qp, side).graph())) {
    const auto& layers = side == Side::gamma ? qp.gamma_layers() : qp.lambda_layers();
    out.rule_coherent = true;
    for (VertexId v = 1; v < layers.size(); ++v) {
      if (!(layers[v].squares() == layers[0].squares())) {
        out.rule_coherent = false;
        out.incoherent_layer = v;
        break;
      }
    }
  }

  const MatchedPair& mp = qp.pair();
  if (side == Side::gamma) {
    const auto ps = enumerate_paths(lg, bound);
    for (EdgeId q = 0; q < gg.edge_count(); ++q) {
      EdgeActionMap m;
      m.acting = q;
      for (EdgeId e = 0; e < lg.edge_count(); ++e) m.image.push_back(qp.right(e, q));
      std::map<EdgeId, EdgeId> seen;
      for (EdgeId e = 0; e < lg.edge_count() && m.injective; ++e) {
        auto [it, fresh] = seen.emplace(m.image[e], e);
        if (!fresh) {
          m.injective = false;
          m.collision = std::make_tuple(it->second, e, m.image[e]);
        }
      }
      const Path qp1 = Path::of(gg, {q});
      for (const Path& p : ps) {
        ++m.composition_checked;
        Path got = mp.act_right(p, qp1);
        if (got != map_path(lg, m.image, p) && !m.composition_failure)
          m.composition_failure = "q<|(p) for p = " + to_string(lg, p) + " is " + to_string(lg, got);
      }
      out.maps.push_back(std::move(m));
    }
  } else {
    const auto qs = enumerate_paths(gg, bound);
    for (EdgeId e = 0; e < lg.edge_count(); ++e) {
      EdgeActionMap m;
      m.acting = e;
      for (EdgeId g = 0; g < gg.edge_count(); ++g) m.image.push_back(qp.left(e, g));
      std::map<EdgeId, EdgeId> seen;
      for (EdgeId g = 0; g < gg.edge_count() && m.injective; ++g) {
        auto [it, fresh] = seen.emplace(m.image[g], g);
        if (!fresh) {
          m.injective = false;
          m.collision = std::make_tuple(it->second, g, m.image[g]);
        }
      }
      const Path pe = Path::of(lg, {e});
      for (const Path& q : qs) {
        ++m.composition_checked;
        Path got = mp.act_left(pe, q);
        if (got != map_path(gg, m.image, q) && !m.composition_failure)
          m.composition_failure = "p|>(q) for q = " + to_string(gg, q) + " is " + to_string(gg, got);
      }
      out.maps.push_back(std::move(m));
    }
  }
  return out;
}

enum class Verdict { certified_yes, bounded_yes, certified_no, unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::certified_yes: return "certified-yes";
    case Verdict::bounded_yes: return "bounded-yes";
    case Verdict::certified_no: return "certified-no";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

struct Holonomy {
  EdgeId edge = 0;  // non-tree edge of the acting skeleton
  BiPath cycle;
  EdgeMap permutation;
  bool identity = true;
};

struct RelaxedStabilityReport {
  Side side = Side::gamma;
  Verdict verdict = Verdict::bounded_yes;
  VertexId root = 0;
  // Edge-level action F(x) of each acting edge, as a map on the acted-on
  // factor's edges, and whether it is a bijection.
  std::vector<EdgeMap> edge_maps;
  std::vector<bool> bijective;
  std::optional<EdgeId> non_bijective;
  std::vector<Holonomy> holonomies;
  std::optional<std::size_t> obstruction;  // index into holonomies
  // Transport from the root layer to each vertex of the acting skeleton.
  std::vector<EdgeMap> transports;
  SpanningForest forest;
  std::size_t path_checked = 0;
  std::optional<std::string> path_failure;
};

// Relaxed stability.  Side::gamma: the lambda edges act on gamma edges by
// e |>, transported along a BFS tree of the bidirected lambda skeleton
// rooted at qp.gamma_root.  Side::lambda: the gamma edges act on lambda
// edges by g <|, with the tree rooted at qp.lambda_root.  Certified no when
// some edge action is not a bijection or some fundamental cycle has
// nontrivial holonomy; otherwise the bounded path-level check runs.
inline RelaxedStabilityReport check_relaxed_stable(const QuasiProductInstance& qp, Side side,
                                                   std::size_t bound = 4) {
  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& gg = qp.gamma().graph();
  const ColoredGraph& acting = side == Side::gamma ? lg : gg;
  const ColoredGraph& acted = side == Side::gamma ? gg : lg;
  if (!is_connected(acting))
    throw PreconditionError(std::string("relaxed stability needs a connected ") +
                            (side == Side::gamma ? "lambda" : "gamma") + " skeleton");

  RelaxedStabilityReport out;
  out.side = side;
  out.root = side == Side::gamma ? qp.gamma_root : qp.lambda_root;

  // F(x): traversing x+ (from s(x) to r(x)) moves layers s(x) -> r(x).
  // Side::gamma: F(e) = e|> .  Side::lambda: g<| goes r(g) -> s(g), so F(g)
  // is its inverse.
  std::vector<EdgeMap> forward;
  for (EdgeId x = 0; x < acting.edge_count(); ++x) {
    EdgeMap m;
    for (EdgeId y = 0; y < acted.edge_count(); ++y)
      m.push_back(side == Side::gamma ? qp.left(x, y) : qp.right(y, x));
    auto inv = invert_map(m);
    out.edge_maps.push_back(m);
    out.bijective.push_back(inv.has_value());
    if (!inv && !out.non_bijective) out.non_bijective = x;
    forward.push_back(side == Side::gamma || !inv ? m : *inv);
  }
  out.forest = cycle_basis(acting, out.root);
  if (out.non_bijective) {
    out.verdict = Verdict::certified_no;
    return out;
  }
  auto step_map = [&](BiEdge b) { return b.forward ? forward[b.edge] : *invert_map(forward[b.edge]); };

  out.transports.assign(acting.vertex_count(), identity_map(acted.edge_count()));
  for (VertexId v : out.forest.order)
    if (out.forest.via[v])
      out.transports[v] = compose_maps(step_map(*out.forest.via[v]), out.transports[out.forest.parent[v]]);

  for (const FundamentalCycle& c : out.forest.cycles) {
    Holonomy h{c.edge, c.closed, identity_map(acted.edge_count()), true};
    for (BiEdge b : c.closed.steps) h.permutation = compose_maps(step_map(b), h.permutation);
    h.identity = h.permutation == identity_map(acted.edge_count());
    if (!h.identity && !out.obstruction) out.obstruction = out.holonomies.size();
    out.holonomies.push_back(std::move(h));
  }
  if (out.obstruction) {
    out.verdict = Verdict::certified_no;
    return out;
  }

  // Bounded check: the action of a path depends only on its endpoints and
  // acts edgewise by the transport T[end] o T[start]^-1.
  const MatchedPair& mp = qp.pair();
  const auto ps = enumerate_paths(lg, bound);
  const auto qs = enumerate_paths(gg, bound);
  for (const Path& p : ps) {
    for (const Path& q : qs) {
      ++out.path_checked;
      Path got, want;
      if (side == Side::gamma) {
        got = mp.act_left(p, q);
        want = map_path(gg, compose_maps(out.transports[p.range()], *invert_map(out.transports[p.source()])), q);
      } else {
        got = mp.act_right(p, q);
        want = map_path(lg, compose_maps(out.transports[q.source()], *invert_map(out.transports[q.range()])), p);
      }
      if (got != want && !out.path_failure)
        out.path_failure = "p = " + to_string(lg, p) + ", q = " + to_string(gg, q) + ": got " +
                           to_string(side == Side::gamma ? gg : lg, got) + ", transport predicts " +
                           to_string(side == Side::gamma ? gg : lg, want);
    }
  }
  out.verdict = out.path_failure ? Verdict::unknown : Verdict::bounded_yes;
  return out;
}

}  // namespace kgraph
