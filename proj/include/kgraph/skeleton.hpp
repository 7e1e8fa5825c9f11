#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/error.hpp"

namespace kgraph {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
using Color = int;  // 1..rank

struct Edge {
  std::string name;
  VertexId src = 0;
  VertexId dst = 0;
  Color color = 1;
};

// Finite directed multigraph whose edges carry one of `rank` colors.
// Vertices and edges are identified by dense indices in insertion order;
// names are only used for lookup and printing.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(int rank) : rank_(rank) {
    if (rank < 1) throw PreconditionError("rank must be positive");
  }

  int rank() const { return rank_; }
  std::size_t vertex_count() const { return vertex_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  VertexId add_vertex(const std::string& name) {
    if (vertex_index_.count(name)) throw InputError("duplicate vertex id '" + name + "'");
    auto v = static_cast<VertexId>(vertex_names_.size());
    vertex_names_.push_back(name);
    vertex_index_.emplace(name, v);
    out_.emplace_back();
    in_.emplace_back();
    return v;
  }

  EdgeId add_edge(const std::string& name, VertexId src, VertexId dst, Color color) {
    if (edge_index_.count(name)) throw InputError("duplicate edge id '" + name + "'");
    if (src >= vertex_count() || dst >= vertex_count())
      throw InputError("edge '" + name + "' has an unknown endpoint");
    if (color < 1 || color > rank_)
      throw InputError("edge '" + name + "' has color " + std::to_string(color) +
                       " outside 1.." + std::to_string(rank_));
    auto e = static_cast<EdgeId>(edges_.size());
    edges_.push_back({name, src, dst, color});
    edge_index_.emplace(name, e);
    out_[src].push_back(e);
    in_[dst].push_back(e);
    return e;
  }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }
  const std::vector<std::string>& vertex_names() const { return vertex_names_; }

  VertexId src(EdgeId e) const { return edges_[e].src; }
  VertexId dst(EdgeId e) const { return edges_[e].dst; }
  Color color(EdgeId e) const { return edges_[e].color; }

  // Edges leaving / entering a vertex, ascending.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_[v]; }
  const std::vector<EdgeId>& in_edges(VertexId v) const { return in_[v]; }

  std::optional<VertexId> find_vertex(const std::string& name) const {
    auto it = vertex_index_.find(name);
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<EdgeId> find_edge(const std::string& name) const {
    auto it = edge_index_.find(name);
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
  }

  // Number of edges of color c from u to v.
  std::size_t multiplicity(VertexId u, VertexId v, Color c) const {
    std::size_t n = 0;
    for (EdgeId e : out_[u])
      if (edges_[e].dst == v && edges_[e].color == c) ++n;
    return n;
  }

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    if (a.rank_ != b.rank_ || a.vertex_names_ != b.vertex_names_) return false;
    if (a.edges_.size() != b.edges_.size()) return false;
    for (std::size_t i = 0; i < a.edges_.size(); ++i) {
      const Edge& x = a.edges_[i];
      const Edge& y = b.edges_[i];
      if (x.name != y.name || x.src != y.src || x.dst != y.dst || x.color != y.color) return false;
    }
    return true;
  }

 private:
  int rank_ = 1;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, EdgeId> edge_index_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

// A path e1 e2 ... en with s(e_i) = r(e_{i+1}); it runs from s(en) to r(e1).
// The empty path at a vertex is the identity there.
class Path {
 public:
  Path() = default;

  static Path at(VertexId v) {
    Path p;
    p.source_ = p.range_ = v;
    return p;
  }

  static Path of(const ColoredGraph& g, std::vector<EdgeId> edges) {
    if (edges.empty()) throw PreconditionError("Path::of needs at least one edge");
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      if (g.src(edges[i]) != g.dst(edges[i + 1]))
        throw PreconditionError("edges " + g.edge(edges[i]).name + " and " +
                                g.edge(edges[i + 1]).name + " are not composable");
    }
    Path p;
    p.range_ = g.dst(edges.front());
    p.source_ = g.src(edges.back());
    p.edges_ = std::move(edges);
    return p;
  }

  // Builds from edges, falling back to the identity at v when empty.
  static Path of_or_at(const ColoredGraph& g, std::vector<EdgeId> edges, VertexId v) {
    return edges.empty() ? at(v) : of(g, std::move(edges));
  }

  const std::vector<EdgeId>& edges() const { return edges_; }
  VertexId source() const { return source_; }
  VertexId range() const { return range_; }
  std::size_t length() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  std::vector<Color> colors(const ColoredGraph& g) const {
    std::vector<Color> c;
    c.reserve(edges_.size());
    for (EdgeId e : edges_) c.push_back(g.color(e));
    return c;
  }

  std::vector<int> degree(const ColoredGraph& g) const {
    std::vector<int> d(static_cast<std::size_t>(g.rank()), 0);
    for (EdgeId e : edges_) ++d[static_cast<std::size_t>(g.color(e) - 1)];
    return d;
  }

  // this . other, i.e. `other` is traversed first.
  Path then_before(const ColoredGraph& g, const Path& other) const {
    if (source_ != other.range_) throw PreconditionError("paths are not composable");
    if (empty()) return other;
    if (other.empty()) return *this;
    std::vector<EdgeId> e = edges_;
    e.insert(e.end(), other.edges_.begin(), other.edges_.end());
    return of(g, std::move(e));
  }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.edges_.size() <=> b.edges_.size(); c != 0) return c;
    if (auto c = a.edges_ <=> b.edges_; c != 0) return c;
    if (auto c = a.range_ <=> b.range_; c != 0) return c;
    return a.source_ <=> b.source_;
  }

 private:
  std::vector<EdgeId> edges_;
  VertexId source_ = 0;
  VertexId range_ = 0;
};

inline std::vector<std::string> edge_names(const ColoredGraph& g, const Path& p) {
  std::vector<std::string> out;
  for (EdgeId e : p.edges()) out.push_back(g.edge(e).name);
  return out;
}

inline std::string to_string(const ColoredGraph& g, const Path& p) {
  if (p.empty()) return "id[" + g.vertex_name(p.range()) + "]";
  std::string s;
  for (EdgeId e : p.edges()) {
    if (!s.empty()) s += ' ';
    s += g.edge(e).name;
  }
  return s;
}

// All paths of length 1..max_length, shortest first, then lexicographic.
inline std::vector<Path> enumerate_paths(const ColoredGraph& g, std::size_t max_length) {
  std::vector<Path> out;
  std::vector<std::vector<EdgeId>> layer;
  for (EdgeId e = 0; e < g.edge_count(); ++e) layer.push_back({e});
  for (std::size_t len = 1; len <= max_length && !layer.empty(); ++len) {
    std::vector<std::vector<EdgeId>> next;
    for (auto& es : layer) {
      out.push_back(Path::of(g, es));
      if (len == max_length) continue;
      for (EdgeId f : g.in_edges(g.src(es.back()))) {
        auto longer = es;
        longer.push_back(f);
        next.push_back(std::move(longer));
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bidirected graph.  e+ runs from s(e) to r(e), e- from r(e) to s(e).

struct BiEdge {
  EdgeId edge = 0;
  bool forward = true;
  friend bool operator==(const BiEdge&, const BiEdge&) = default;
};

inline VertexId bi_start(const ColoredGraph& g, BiEdge b) {
  return b.forward ? g.src(b.edge) : g.dst(b.edge);
}
inline VertexId bi_end(const ColoredGraph& g, BiEdge b) {
  return b.forward ? g.dst(b.edge) : g.src(b.edge);
}

// Steps listed in traversal order from `start`.
struct BiPath {
  VertexId start = 0;
  std::vector<BiEdge> steps;
  friend bool operator==(const BiPath&, const BiPath&) = default;
};

inline VertexId bi_end(const ColoredGraph& g, const BiPath& p) {
  return p.steps.empty() ? p.start : bi_end(g, p.steps.back());
}

inline std::string to_string(const ColoredGraph& g, const BiPath& p) {
  if (p.steps.empty()) return "id[" + g.vertex_name(p.start) + "]";
  std::string s;
  for (BiEdge b : p.steps) {
    if (!s.empty()) s += ' ';
    s += g.edge(b.edge).name + (b.forward ? "+" : "-");
  }
  return s;
}

inline BiPath reversed(const ColoredGraph& g, const BiPath& p) {
  BiPath r{bi_end(g, p), {}};
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it) r.steps.push_back({it->edge, !it->forward});
  return r;
}

struct FundamentalCycle {
  EdgeId edge = 0;  // the non-tree edge closing the cycle
  BiPath closed;    // starts and ends at closed.start = s(edge)
};

struct SpanningForest {
  std::vector<VertexId> roots;
  std::vector<VertexId> order;                   // BFS discovery order
  std::vector<std::optional<BiEdge>> via;        // step from parent into v
  std::vector<VertexId> parent;
  std::vector<std::size_t> depth;
  std::vector<bool> tree_edge;
  std::vector<FundamentalCycle> cycles;

  // Tree path from the root of v's component to v.
  BiPath from_root(VertexId v) const {
    std::vector<BiEdge> up;
    VertexId cur = v;
    while (via[cur]) {
      up.push_back(*via[cur]);
      cur = parent[cur];
    }
    std::reverse(up.begin(), up.end());
    return {cur, std::move(up)};
  }
};

inline std::vector<std::vector<EdgeId>> incident_edges(const ColoredGraph& g) {
  std::vector<std::vector<EdgeId>> inc(g.vertex_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    inc[g.src(e)].push_back(e);
    if (g.dst(e) != g.src(e)) inc[g.dst(e)].push_back(e);
  }
  return inc;
}

// BFS spanning forest of the bidirected graph.  Incident edges are scanned
// in ascending id, e+ before e-; the component of `root` comes first and
// every other component is rooted at its lowest vertex.
inline SpanningForest cycle_basis(const ColoredGraph& g, VertexId root = 0) {
  const std::size_t n = g.vertex_count();
  SpanningForest f;
  f.via.assign(n, std::nullopt);
  f.parent.assign(n, 0);
  f.depth.assign(n, 0);
  f.tree_edge.assign(g.edge_count(), false);
  if (n == 0) return f;
  if (root >= n) throw PreconditionError("cycle_basis: root out of range");

  auto inc = incident_edges(g);
  std::vector<bool> seen(n, false);
  auto grow = [&](VertexId r) {
    f.roots.push_back(r);
    seen[r] = true;
    f.parent[r] = r;
    std::queue<VertexId> q;
    q.push(r);
    while (!q.empty()) {
      VertexId cur = q.front();
      q.pop();
      f.order.push_back(cur);
      for (EdgeId e : inc[cur]) {
        std::optional<BiEdge> step;
        if (g.src(e) == cur && !seen[g.dst(e)])
          step = BiEdge{e, true};
        else if (g.dst(e) == cur && !seen[g.src(e)])
          step = BiEdge{e, false};
        if (!step) continue;
        VertexId next = bi_end(g, *step);
        seen[next] = true;
        f.via[next] = step;
        f.parent[next] = cur;
        f.depth[next] = f.depth[cur] + 1;
        f.tree_edge[e] = true;
        q.push(next);
      }
    }
  };
  grow(root);
  for (VertexId v = 0; v < n; ++v)
    if (!seen[v]) grow(v);

  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (f.tree_edge[e]) continue;
    // e+ from s(e) to r(e), then back to s(e) through the tree.
    VertexId a = g.dst(e);
    VertexId b = g.src(e);
    std::vector<BiEdge> up_from_a, down_to_b;
    while (f.depth[a] > f.depth[b]) {
      up_from_a.push_back({f.via[a]->edge, !f.via[a]->forward});
      a = f.parent[a];
    }
    while (f.depth[b] > f.depth[a]) {
      down_to_b.push_back(*f.via[b]);
      b = f.parent[b];
    }
    while (a != b) {
      up_from_a.push_back({f.via[a]->edge, !f.via[a]->forward});
      a = f.parent[a];
      down_to_b.push_back(*f.via[b]);
      b = f.parent[b];
    }
    FundamentalCycle c{e, {g.src(e), {BiEdge{e, true}}}};
    c.closed.steps.insert(c.closed.steps.end(), up_from_a.begin(), up_from_a.end());
    c.closed.steps.insert(c.closed.steps.end(), down_to_b.rbegin(), down_to_b.rend());
    f.cycles.push_back(std::move(c));
  }
  return f;
}

inline bool is_connected(const ColoredGraph& g) {
  if (g.vertex_count() == 0) return true;
  return cycle_basis(g, 0).roots.size() == 1;
}

struct PolytreeResult {
  bool polytree = true;
  // Two distinct bidirected paths with the same endpoints.
  std::optional<std::pair<BiPath, BiPath>> witness;
};

// A 1-graph is a polytree when its underlying undirected multigraph is a
// forest: no loops, no parallel or antiparallel pairs, no cycles.
inline PolytreeResult is_polytree(const ColoredGraph& g) {
  if (g.rank() != 1) throw PreconditionError("is_polytree: graph must have rank 1");
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> comp(n);
  std::iota(comp.begin(), comp.end(), VertexId{0});
  std::function<VertexId(VertexId)> find = [&](VertexId v) {
    return comp[v] == v ? v : comp[v] = find(comp[v]);
  };
  std::vector<std::vector<BiEdge>> tree(n);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    VertexId s = g.src(e), r = g.dst(e);
    if (find(s) != find(r)) {
      comp[find(s)] = find(r);
      tree[s].push_back({e, true});
      tree[r].push_back({e, false});
      continue;
    }
    // Tree path from s to r.
    std::vector<std::optional<BiEdge>> via(n);
    std::vector<bool> seen(n, false);
    std::queue<VertexId> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      VertexId cur = q.front();
      q.pop();
      for (BiEdge b : tree[cur]) {
        VertexId nx = bi_end(g, b);
        if (seen[nx]) continue;
        seen[nx] = true;
        via[nx] = b;
        q.push(nx);
      }
    }
    BiPath other{s, {}};
    for (VertexId cur = r; cur != s; cur = bi_start(g, *via[cur])) other.steps.push_back(*via[cur]);
    std::reverse(other.steps.begin(), other.steps.end());
    return {false, std::make_pair(BiPath{s, {BiEdge{e, true}}}, other)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Cartesian (box) product skeletons.

struct EdgeOrigin {
  bool from_lhs = true;   // lhs edge e at rhs vertex `other`, or rhs edge g at lhs vertex `other`
  EdgeId factor_edge = 0;
  VertexId other = 0;
};

struct BoxEmbedding {
  std::size_t lhs_vertices = 0, rhs_vertices = 0, lhs_edges = 0, rhs_edges = 0;
  std::vector<VertexId> vertex;   // [x * |rhs V| + w]
  std::vector<EdgeId> lhs_edge;   // [e * |rhs V| + w]
  std::vector<EdgeId> rhs_edge;   // [x * |rhs E| + g]
  std::vector<std::pair<VertexId, VertexId>> vertex_origin;  // host vertex -> (x, w)
  std::vector<EdgeOrigin> edge_origin;                        // host edge -> origin

  VertexId host_vertex(VertexId x, VertexId w) const { return vertex[x * rhs_vertices + w]; }
  EdgeId host_lhs_edge(EdgeId e, VertexId w) const { return lhs_edge[e * rhs_vertices + w]; }
  EdgeId host_rhs_edge(VertexId x, EdgeId g) const { return rhs_edge[x * rhs_edges + g]; }

  void fill_inverse(std::size_t host_vertices, std::size_t host_edges) {
    vertex_origin.assign(host_vertices, {0, 0});
    edge_origin.assign(host_edges, {});
    for (VertexId x = 0; x < lhs_vertices; ++x)
      for (VertexId w = 0; w < rhs_vertices; ++w) vertex_origin[host_vertex(x, w)] = {x, w};
    for (EdgeId e = 0; e < lhs_edges; ++e)
      for (VertexId w = 0; w < rhs_vertices; ++w) edge_origin[host_lhs_edge(e, w)] = {true, e, w};
    for (VertexId x = 0; x < lhs_vertices; ++x)
      for (EdgeId g = 0; g < rhs_edges; ++g) edge_origin[host_rhs_edge(x, g)] = {false, g, x};
  }
};

struct BoxProduct {
  ColoredGraph graph;
  BoxEmbedding embedding;
};

inline std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

// Vertices (x, w); edges (e, w) with lhs colors and (x, g) with rhs colors
// shifted past the lhs rank.
inline BoxProduct box_product(const ColoredGraph& lhs, const ColoredGraph& rhs) {
  BoxProduct out{ColoredGraph(lhs.rank() + rhs.rank()), {}};
  BoxEmbedding& m = out.embedding;
  m.lhs_vertices = lhs.vertex_count();
  m.rhs_vertices = rhs.vertex_count();
  m.lhs_edges = lhs.edge_count();
  m.rhs_edges = rhs.edge_count();
  for (VertexId x = 0; x < lhs.vertex_count(); ++x)
    for (VertexId w = 0; w < rhs.vertex_count(); ++w)
      m.vertex.push_back(out.graph.add_vertex(pair_name(lhs.vertex_name(x), rhs.vertex_name(w))));
  for (EdgeId e = 0; e < lhs.edge_count(); ++e)
    for (VertexId w = 0; w < rhs.vertex_count(); ++w)
      m.lhs_edge.push_back(out.graph.add_edge(pair_name(lhs.edge(e).name, rhs.vertex_name(w)),
                                              m.host_vertex(lhs.src(e), w),
                                              m.host_vertex(lhs.dst(e), w), lhs.color(e)));
  for (VertexId x = 0; x < lhs.vertex_count(); ++x)
    for (EdgeId g = 0; g < rhs.edge_count(); ++g)
      m.rhs_edge.push_back(out.graph.add_edge(pair_name(lhs.vertex_name(x), rhs.edge(g).name),
                                              m.host_vertex(x, rhs.src(g)),
                                              m.host_vertex(x, rhs.dst(g)),
                                              rhs.color(g) + lhs.rank()));
  m.fill_inverse(out.graph.vertex_count(), out.graph.edge_count());
  return out;
}

namespace detail {

// count[(c-1) * n * n + u * n + v] = number of color-c edges u -> v
inline std::vector<std::size_t> multiplicity_table(const ColoredGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> t(static_cast<std::size_t>(g.rank()) * n * n, 0);
  for (const Edge& e : g.edges()) ++t[static_cast<std::size_t>(e.color - 1) * n * n + e.src * n + e.dst];
  return t;
}

inline std::vector<std::size_t> degree_profile(const ColoredGraph& g, VertexId v) {
  std::vector<std::size_t> p(2 * static_cast<std::size_t>(g.rank()), 0);
  for (EdgeId e : g.out_edges(v)) ++p[2 * static_cast<std::size_t>(g.color(e) - 1)];
  for (EdgeId e : g.in_edges(v)) ++p[2 * static_cast<std::size_t>(g.color(e) - 1) + 1];
  return p;
}

}  // namespace detail

// Finds an identification of `host` with lhs [] rhs: the first lhs.rank()
// host colors must form one copy of lhs per rhs vertex and the remaining
// colors one copy of rhs per lhs vertex.  Parallel edges are paired in
// ascending id order.
inline std::optional<BoxEmbedding> match_box_skeleton(const ColoredGraph& host,
                                                      const ColoredGraph& lhs,
                                                      const ColoredGraph& rhs,
                                                      Budget* budget = nullptr) {
  const int k1 = lhs.rank();
  if (host.rank() != k1 + rhs.rank()) return std::nullopt;
  const std::size_t nl = lhs.vertex_count(), nr = rhs.vertex_count(), nh = host.vertex_count();
  if (nh != nl * nr) return std::nullopt;
  if (host.edge_count() != lhs.edge_count() * nr + rhs.edge_count() * nl) return std::nullopt;

  const auto th = detail::multiplicity_table(host);
  const auto tl = detail::multiplicity_table(lhs);
  const auto tr = detail::multiplicity_table(rhs);
  auto host_count = [&](Color c, VertexId a, VertexId b) {
    return th[static_cast<std::size_t>(c - 1) * nh * nh + a * nh + b];
  };
  auto expected = [&](Color c, VertexId x, VertexId w, VertexId x2, VertexId w2) -> std::size_t {
    if (c <= k1) return w == w2 ? tl[static_cast<std::size_t>(c - 1) * nl * nl + x * nl + x2] : 0;
    return x == x2 ? tr[static_cast<std::size_t>(c - k1 - 1) * nr * nr + w * nr + w2] : 0;
  };

  std::vector<std::vector<std::size_t>> host_profile(nh);
  for (VertexId h = 0; h < nh; ++h) host_profile[h] = detail::degree_profile(host, h);
  std::vector<std::vector<std::size_t>> pair_profile(nl * nr);
  for (VertexId x = 0; x < nl; ++x) {
    auto pl = detail::degree_profile(lhs, x);
    for (VertexId w = 0; w < nr; ++w) {
      auto pr = detail::degree_profile(rhs, w);
      auto& p = pair_profile[x * nr + w];
      p = pl;
      p.insert(p.end(), pr.begin(), pr.end());
    }
  }

  std::vector<VertexId> assign(nl * nr, 0);
  std::vector<bool> used(nh, false);
  const int k = host.rank();

  std::function<bool(std::size_t)> place = [&](std::size_t idx) -> bool {
    if (idx == nl * nr) return true;
    const VertexId x = static_cast<VertexId>(idx / nr), w = static_cast<VertexId>(idx % nr);
    for (VertexId h = 0; h < nh; ++h) {
      if (used[h] || host_profile[h] != pair_profile[idx]) continue;
      if (budget) budget->charge("match_box_skeleton");
      bool ok = true;
      for (std::size_t j = 0; j <= idx && ok; ++j) {
        const VertexId x2 = static_cast<VertexId>(j / nr), w2 = static_cast<VertexId>(j % nr);
        const VertexId h2 = j == idx ? h : assign[j];
        for (Color c = 1; c <= k && ok; ++c) {
          ok = host_count(c, h, h2) == expected(c, x, w, x2, w2) &&
               host_count(c, h2, h) == expected(c, x2, w2, x, w);
        }
      }
      if (!ok) continue;
      assign[idx] = h;
      used[h] = true;
      if (place(idx + 1)) return true;
      used[h] = false;
    }
    return false;
  };
  if (!place(0)) return std::nullopt;

  BoxEmbedding m;
  m.lhs_vertices = nl;
  m.rhs_vertices = nr;
  m.lhs_edges = lhs.edge_count();
  m.rhs_edges = rhs.edge_count();
  m.vertex = assign;
  std::vector<bool> taken(host.edge_count(), false);
  auto pick = [&](VertexId a, VertexId b, Color c) {
    for (EdgeId e : host.out_edges(a)) {
      if (!taken[e] && host.dst(e) == b && host.color(e) == c) {
        taken[e] = true;
        return e;
      }
    }
    throw Error("match_box_skeleton: inconsistent edge counts");
  };
  for (EdgeId e = 0; e < lhs.edge_count(); ++e)
    for (VertexId w = 0; w < nr; ++w)
      m.lhs_edge.push_back(pick(m.host_vertex(lhs.src(e), w), m.host_vertex(lhs.dst(e), w), lhs.color(e)));
  for (VertexId x = 0; x < nl; ++x)
    for (EdgeId g = 0; g < rhs.edge_count(); ++g)
      m.rhs_edge.push_back(pick(m.host_vertex(x, rhs.src(g)), m.host_vertex(x, rhs.dst(g)), rhs.color(g) + k1));
  m.fill_inverse(nh, host.edge_count());
  return m;
}

}  // namespace kgraph
