#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph::fuzz {

using Rng = std::mt19937_64;

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Copy of g with vertices v0, v1, ... and edges e0, e1, ...
inline ColoredGraph renamed(const ColoredGraph& g, const std::string& vp = "v", const std::string& ep = "e") {
  ColoredGraph out(g.rank());
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.add_vertex(vp + std::to_string(v));
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.add_edge(ep + std::to_string(e), g.src(e), g.dst(e), g.color(e));
  return out;
}

// Random rank-1 digraph; connected graphs start from a random spanning tree
// with random orientations.
inline ColoredGraph random_digraph(Rng& rng, std::size_t vertices, std::size_t edges, bool connected) {
  ColoredGraph g(1);
  for (std::size_t v = 0; v < vertices; ++v) g.add_vertex("v" + std::to_string(v));
  std::size_t n = 0;
  auto add = [&](VertexId a, VertexId b) { g.add_edge("e" + std::to_string(n++), a, b, 1); };
  if (connected)
    for (VertexId v = 1; v < vertices; ++v) {
      auto u = static_cast<VertexId>(uniform(rng, 0, v - 1));
      uniform(rng, 0, 1) ? add(u, v) : add(v, u);
    }
  while (n < edges)
    add(static_cast<VertexId>(uniform(rng, 0, vertices - 1)), static_cast<VertexId>(uniform(rng, 0, vertices - 1)));
  return g;
}

// Random oriented tree (a polytree) on the given number of vertices.
inline ColoredGraph random_tree(Rng& rng, std::size_t vertices) {
  return random_digraph(rng, vertices, vertices - 1, true);
}

// Rank-2 skeleton: a two-color bouquet or the box product of two digraphs.
inline ColoredGraph random_rank2(Rng& rng, std::size_t max_edges) {
  if (uniform(rng, 0, 1) == 0 || max_edges < 4) {
    ColoredGraph g(2);
    g.add_vertex("v0");
    std::size_t a = uniform(rng, 1, std::max<std::size_t>(1, std::min<std::size_t>(3, max_edges - 1)));
    std::size_t b = uniform(rng, 1, std::max<std::size_t>(1, std::min<std::size_t>(3, max_edges - a)));
    std::size_t n = 0;
    for (std::size_t i = 0; i < a; ++i) g.add_edge("e" + std::to_string(n++), 0, 0, 1);
    for (std::size_t i = 0; i < b; ++i) g.add_edge("e" + std::to_string(n++), 0, 0, 2);
    return g;
  }
  auto x = random_digraph(rng, uniform(rng, 1, 2), uniform(rng, 1, 2), true);
  auto y = random_digraph(rng, uniform(rng, 1, 2), uniform(rng, 1, 2), true);
  return renamed(box_product(x, y).graph);
}

inline ColoredGraph random_factor(Rng& rng, int rank, std::size_t max_edges) {
  if (rank == 1) {
    std::size_t v = uniform(rng, 1, 3);
    return random_digraph(rng, v, uniform(rng, v - 1 == 0 ? 1 : v - 1, std::max<std::size_t>(v, 3)), true);
  }
  return random_rank2(rng, max_edges);
}

// Uniformly random bijection per color pair and endpoint bucket between
// the ascending two-colored paths and the descending ones.  Absent when
// some bucket has unequal sides (no rule exists on this skeleton).
inline std::optional<SquareTable> random_squares(Rng& rng, const ColoredGraph& g) {
  using Key = std::tuple<Color, Color, VertexId, VertexId>;
  std::map<Key, std::vector<std::pair<EdgeId, EdgeId>>> up, down;
  for (EdgeId a = 0; a < g.edge_count(); ++a)
    for (EdgeId b : g.in_edges(g.src(a))) {
      Color ca = g.color(a), cb = g.color(b);
      if (ca < cb) up[{ca, cb, g.dst(a), g.src(b)}].push_back({a, b});
      if (ca > cb) down[{cb, ca, g.dst(a), g.src(b)}].push_back({a, b});
    }
  SquareTable t;
  for (auto& [k, keys] : up) {
    auto it = down.find(k);
    if (it == down.end() || it->second.size() != keys.size()) return std::nullopt;
    auto vals = it->second;
    std::shuffle(vals.begin(), vals.end(), rng);
    for (std::size_t i = 0; i < keys.size(); ++i) t.add(keys[i].first, keys[i].second, vals[i].first, vals[i].second);
  }
  for (auto& [k, vals] : down)
    if (!up.count(k)) return std::nullopt;
  return t;
}

// Rejection sampling until the cube condition holds.
inline std::optional<RuleSet> random_valid_rule(Rng& rng, const ColoredGraph& g, std::size_t tries = 200) {
  for (std::size_t i = 0; i < tries; ++i) {
    auto t = random_squares(rng, g);
    if (!t) return std::nullopt;
    RuleSet r{g, std::move(*t)};
    if (validate_rule(r).valid) return r;
  }
  return std::nullopt;
}

// A valid host on a box product skeleton together with its factors.
struct BoxCase {
  ColoredGraph lambda_skeleton, gamma_skeleton;
  BoxEmbedding embedding;
  RuleSet host;
};

// The rule the host induces on the lambda layer at gamma vertex w (or the
// gamma layer at lambda vertex x), over the factor skeleton.
inline RuleSet layer_rule(const BoxCase& c, bool lambda_side, VertexId at) {
  RuleSet r{lambda_side ? c.lambda_skeleton : c.gamma_skeleton, {}};
  const auto& m = c.embedding;
  for (const Square& s : c.host.squares.squares()) {
    const auto& oa = m.edge_origin[s.a];
    const auto& ob = m.edge_origin[s.b];
    if (oa.from_lhs != lambda_side || ob.from_lhs != lambda_side || oa.other != at) continue;
    r.squares.add(oa.factor_edge, ob.factor_edge, m.edge_origin[s.c].factor_edge, m.edge_origin[s.d].factor_edge);
  }
  return r;
}

// Quasi-product with lambda the layer at gamma vertex 0 and gamma the layer
// at lambda vertex 0, so conditions (ii) and (iii) hold by construction.
inline QuasiProductInstance quasi_product(const BoxCase& c) {
  KGraph host(c.host);
  KGraph lambda(layer_rule(c, true, 0));
  KGraph gamma(layer_rule(c, false, 0));
  QuasiProductOptions opt;
  opt.embedding = c.embedding;
  opt.lambda_root = 0;
  opt.gamma_root = 0;
  auto v = verify_quasi_product(host, lambda, gamma, opt);
  if (!v.instance) throw Error("fuzz: generated host is not a quasi-product: " + v.reason);
  return std::move(*v.instance);
}

inline std::optional<BoxCase> make_case(Rng& rng, const ColoredGraph& lambda, const ColoredGraph& gamma) {
  auto bp = box_product(lambda, gamma);
  auto rule = random_valid_rule(rng, bp.graph);
  if (!rule) return std::nullopt;
  return BoxCase{lambda, gamma, bp.embedding, std::move(*rule)};
}

// Small valid rule on a random box skeleton: at most `max_edges` host edges
// and `max_colors` colors, both factors with at least one edge.
inline BoxCase random_box_case(Rng& rng, std::size_t max_edges = 8, int max_colors = 3) {
  for (;;) {
    int k1 = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(std::max(1, max_colors - 1))));
    int k2 = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(std::max(1, max_colors - k1))));
    auto l = random_factor(rng, k1, max_edges);
    auto g = random_factor(rng, k2, max_edges);
    std::size_t edges = l.edge_count() * g.vertex_count() + l.vertex_count() * g.edge_count();
    if (edges > max_edges || l.edge_count() == 0 || g.edge_count() == 0) continue;
    if (auto c = make_case(rng, l, g)) return std::move(*c);
  }
}

// Connected lambda (rank 1, or a rank-2 bouquet) over a random polytree
// gamma with at most `max_gamma_vertices` vertices.
inline BoxCase random_polytree_case(Rng& rng, std::size_t max_gamma_vertices = 6) {
  for (;;) {
    ColoredGraph l = uniform(rng, 0, 2) == 0 ? random_rank2(rng, 3)
                                             : random_digraph(rng, uniform(rng, 1, 3), uniform(rng, 1, 4), true);
    auto g = random_tree(rng, uniform(rng, 2, max_gamma_vertices));
    if (auto c = make_case(rng, l, g)) return std::move(*c);
  }
}

}  // namespace kgraph::fuzz
