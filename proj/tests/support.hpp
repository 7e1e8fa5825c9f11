#pragma once

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kgraph/kgraph.hpp"

namespace kgraph::testing {

inline EdgeId edge(const ColoredGraph& g, const std::string& name) {
  auto e = g.find_edge(name);
  if (!e) throw std::runtime_error("test: no edge " + name);
  return *e;
}

inline VertexId vertex(const ColoredGraph& g, const std::string& name) {
  auto v = g.find_vertex(name);
  if (!v) throw std::runtime_error("test: no vertex " + name);
  return *v;
}

inline Path path(const ColoredGraph& g, std::initializer_list<std::string> names) {
  std::vector<EdgeId> es;
  for (const auto& n : names) es.push_back(edge(g, n));
  return Path::of(g, es);
}

inline std::vector<std::string> names(const ColoredGraph& g, const Path& p) { return edge_names(g, p); }

inline QuasiProductInstance fixture_qp(const std::string& name) {
  auto doc = corpus::find(name);
  if (!doc) throw std::runtime_error("test: no fixture " + name);
  auto b = build_instance(*doc);
  QuasiProductOptions opt;
  opt.embedding = b.embedding;
  opt.gamma_root = b.root;
  auto v = verify_quasi_product(KGraph(b.host), KGraph(b.lambda), KGraph(b.gamma), opt);
  if (!v.instance) throw std::runtime_error("test: fixture is not a quasi-product: " + v.reason);
  return std::move(*v.instance);
}

// Equivalence class of a path under the commuting squares, found by
// breadth-first search over single adjacent swaps in either direction.
inline std::set<std::vector<EdgeId>> swap_class(const RuleSet& r, const std::vector<EdgeId>& start) {
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> both;
  for (const Square& s : r.squares.squares()) {
    both[{s.a, s.b}] = {s.c, s.d};
    both[{s.c, s.d}] = {s.a, s.b};
  }
  std::set<std::vector<EdgeId>> seen{start};
  std::vector<std::vector<EdgeId>> todo{start};
  while (!todo.empty()) {
    auto cur = todo.back();
    todo.pop_back();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      auto it = both.find({cur[i], cur[i + 1]});
      if (it == both.end()) continue;
      auto next = cur;
      next[i] = it->second.first;
      next[i + 1] = it->second.second;
      if (seen.insert(next).second) todo.push_back(next);
    }
  }
  return seen;
}

// Number of distinct orderings of a color multiset.
inline std::size_t multinomial(std::vector<Color> colors) {
  std::map<Color, std::size_t> count;
  for (Color c : colors) ++count[c];
  std::size_t out = 1, n = 0;
  for (auto [c, k] : count)
    for (std::size_t i = 1; i <= k; ++i) out = out * ++n / i;
  return out;
}

// The factorization property checked directly: every 3-colored path of
// length 3 has exactly one representative per color order.
inline bool cube_condition_holds(const RuleSet& r) {
  const ColoredGraph& g = r.graph;
  for (EdgeId a = 0; a < g.edge_count(); ++a)
    for (EdgeId b : g.in_edges(g.src(a)))
      for (EdgeId c : g.in_edges(g.src(b))) {
        std::set<Color> cs{g.color(a), g.color(b), g.color(c)};
        if (cs.size() != 3) continue;
        std::set<std::vector<Color>> orders;
        auto cls = swap_class(r, {a, b, c});
        for (const auto& p : cls) orders.insert({g.color(p[0]), g.color(p[1]), g.color(p[2])});
        if (cls.size() != 6 || orders.size() != 6) return false;
      }
  return true;
}

}  // namespace kgraph::testing
