#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/error.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

struct KGraphIso {
  std::vector<VertexId> vertex;  // a -> b
  std::vector<EdgeId> edge;      // a -> b
  friend bool operator==(const KGraphIso&, const KGraphIso&) = default;
};

inline KGraphIso identity_iso(const ColoredGraph& g) {
  KGraphIso f;
  for (VertexId v = 0; v < g.vertex_count(); ++v) f.vertex.push_back(v);
  for (EdgeId e = 0; e < g.edge_count(); ++e) f.edge.push_back(e);
  return f;
}

// Exact check that f is a k-graph isomorphism a -> b: bijective on vertices
// and edges, compatible with source, range and color, and carrying every
// square of a onto a square of b.
inline bool is_isomorphism(const KGraph& a, const KGraph& b, const KGraphIso& f,
                           std::string* why = nullptr) {
  auto fail = [&](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  const ColoredGraph& ga = a.graph();
  const ColoredGraph& gb = b.graph();
  if (ga.rank() != gb.rank()) return fail("ranks differ");
  if (f.vertex.size() != ga.vertex_count() || ga.vertex_count() != gb.vertex_count())
    return fail("vertex counts differ");
  if (f.edge.size() != ga.edge_count() || ga.edge_count() != gb.edge_count())
    return fail("edge counts differ");
  std::vector<bool> hit_v(gb.vertex_count(), false), hit_e(gb.edge_count(), false);
  for (VertexId v : f.vertex) {
    if (v >= gb.vertex_count() || hit_v[v]) return fail("vertex map is not a bijection");
    hit_v[v] = true;
  }
  for (EdgeId e = 0; e < ga.edge_count(); ++e) {
    EdgeId x = f.edge[e];
    if (x >= gb.edge_count() || hit_e[x]) return fail("edge map is not a bijection");
    hit_e[x] = true;
    if (gb.color(x) != ga.color(e) || gb.src(x) != f.vertex[ga.src(e)] || gb.dst(x) != f.vertex[ga.dst(e)])
      return fail("edge " + ga.edge(e).name + " is not mapped compatibly");
  }
  for (const Square& s : a.squares().squares()) {
    auto img = b.swap(f.edge[s.a], f.edge[s.b]);
    if (!img || img->first != f.edge[s.c] || img->second != f.edge[s.d])
      return fail("square " + square_string(ga, s) + " is not preserved");
  }
  return true;
}

struct IsoSearch {
  std::optional<KGraphIso> iso;
  std::size_t nodes = 0;
};

// Backtracking search for a k-graph isomorphism.  Edges of `a` are placed in
// ascending order against candidates in ascending order, so the identity is
// found first when a and b coincide.  Squares are checked as soon as all
// four of their edges are placed.  Throws BudgetExceeded.
inline IsoSearch brute_force_iso(const KGraph& a, const KGraph& b, Budget& budget) {
  const ColoredGraph& ga = a.graph();
  const ColoredGraph& gb = b.graph();
  IsoSearch out;
  if (ga.rank() != gb.rank() || ga.vertex_count() != gb.vertex_count() ||
      ga.edge_count() != gb.edge_count() || a.squares().size() != b.squares().size())
    return out;
  {
    std::vector<std::size_t> ca(static_cast<std::size_t>(ga.rank()), 0), cb = ca;
    for (const Edge& e : ga.edges()) ++ca[static_cast<std::size_t>(e.color - 1)];
    for (const Edge& e : gb.edges()) ++cb[static_cast<std::size_t>(e.color - 1)];
    if (ca != cb) return out;
  }
  std::vector<std::vector<std::size_t>> pa(ga.vertex_count()), pb(gb.vertex_count());
  for (VertexId v = 0; v < ga.vertex_count(); ++v) pa[v] = detail::degree_profile(ga, v);
  for (VertexId v = 0; v < gb.vertex_count(); ++v) pb[v] = detail::degree_profile(gb, v);

  // Squares indexed by their highest edge.
  std::vector<std::vector<Square>> closing(ga.edge_count());
  for (const Square& s : a.squares().squares())
    closing[std::max({s.a, s.b, s.c, s.d})].push_back(s);

  constexpr VertexId kNone = static_cast<VertexId>(-1);
  std::vector<VertexId> vmap(ga.vertex_count(), kNone);
  std::vector<bool> vused(gb.vertex_count(), false);
  std::vector<EdgeId> emap(ga.edge_count(), 0);
  std::vector<bool> eused(gb.edge_count(), false);

  auto bind = [&](VertexId x, VertexId y, std::vector<VertexId>& fresh) {
    if (vmap[x] != kNone) return vmap[x] == y;
    if (vused[y] || pa[x] != pb[y]) return false;
    vmap[x] = y;
    vused[y] = true;
    fresh.push_back(x);
    return true;
  };
  auto unbind = [&](std::vector<VertexId>& fresh) {
    for (VertexId x : fresh) {
      vused[vmap[x]] = false;
      vmap[x] = kNone;
    }
    fresh.clear();
  };

  std::function<bool(EdgeId)> place = [&](EdgeId e) -> bool {
    if (e == ga.edge_count()) return true;
    for (EdgeId f = 0; f < gb.edge_count(); ++f) {
      if (eused[f] || gb.color(f) != ga.color(e)) continue;
      budget.charge("brute_force_iso");
      ++out.nodes;
      std::vector<VertexId> fresh;
      if (!bind(ga.src(e), gb.src(f), fresh) || !bind(ga.dst(e), gb.dst(f), fresh)) {
        unbind(fresh);
        continue;
      }
      emap[e] = f;
      eused[f] = true;
      bool ok = true;
      for (const Square& s : closing[e]) {
        auto img = b.swap(emap[s.a], emap[s.b]);
        if (!img || img->first != emap[s.c] || img->second != emap[s.d]) {
          ok = false;
          break;
        }
      }
      if (ok && place(e + 1)) return true;
      eused[f] = false;
      unbind(fresh);
    }
    return false;
  };
  if (!place(0)) return out;

  // Isolated vertices.
  for (VertexId x = 0; x < ga.vertex_count(); ++x) {
    if (vmap[x] != kNone) continue;
    for (VertexId y = 0; y < gb.vertex_count(); ++y) {
      if (!vused[y] && pa[x] == pb[y]) {
        vmap[x] = y;
        vused[y] = true;
        break;
      }
    }
    if (vmap[x] == kNone) return out;
  }
  out.iso = KGraphIso{vmap, emap};
  return out;
}

inline IsoSearch brute_force_iso(const KGraph& a, const KGraph& b, std::size_t budget = Budget::kDefault) {
  Budget bud(budget);
  return brute_force_iso(a, b, bud);
}

}  // namespace kgraph
