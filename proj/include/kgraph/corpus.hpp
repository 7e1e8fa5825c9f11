#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/io/document.hpp"

namespace kgraph::corpus {

// Builders for the bundled fixtures.  Host edge names follow box_product:
// "(e,w)" for a lambda edge at a gamma vertex, "(x,g)" for a gamma edge at
// a lambda vertex.

inline std::string host(const std::string& a, const std::string& b) { return pair_name(a, b); }

inline SquareSpec sq(std::string a, std::string b, std::string c, std::string d) {
  return {{std::move(a), std::move(b)}, {std::move(c), std::move(d)}};
}

inline GraphSpec graph(int rank, std::vector<std::string> vertices, std::vector<EdgeSpec> edges,
                       std::vector<SquareSpec> squares = {}) {
  return {rank, std::move(vertices), std::move(edges), std::move(squares)};
}

// Mixed squares keyed by their (lambda, gamma) edge pair.
class MixedSquares {
 public:
  MixedSquares(const GraphSpec& lambda, const GraphSpec& gamma) {
    for (const EdgeSpec& e : lambda.edges)
      for (const EdgeSpec& g : gamma.edges)
        squares_[{e.id, g.id}] = {e, g, g.id, e.id};
  }
  // e |> g = g2 and g <| e = e2.
  MixedSquares& set(const std::string& e, const std::string& g, const std::string& g2, const std::string& e2) {
    auto& s = squares_.at({e, g});
    s.left = g2;
    s.right = e2;
    return *this;
  }
  std::vector<SquareSpec> build(const GraphSpec& lambda) const {
    auto edge = [](const GraphSpec& g, const std::string& id) -> const EdgeSpec& {
      for (const auto& e : g.edges)
        if (e.id == id) return e;
      throw PreconditionError("unknown edge " + id);
    };
    std::vector<SquareSpec> out;
    for (const auto& [key, s] : squares_) {
      const EdgeSpec& e2 = edge(lambda, s.right);
      out.push_back(sq(host(s.e.id, s.g.dst), host(s.e.src, s.g.id), host(s.e.dst, s.left),
                       host(e2.id, s.g.src)));
    }
    return out;
  }

 private:
  struct Entry {
    EdgeSpec e, g;
    std::string left, right;
  };
  std::map<std::pair<std::string, std::string>, Entry> squares_;
};

inline InstanceDocument quasi_product(std::string name, std::string description, GraphSpec lambda, GraphSpec gamma,
                                      const MixedSquares& mixed) {
  InstanceDocument doc;
  doc.name = std::move(name);
  doc.description = std::move(description);
  doc.mixed_squares = mixed.build(lambda);
  doc.lambda = std::move(lambda);
  doc.gamma = std::move(gamma);
  canonicalize(doc);
  return doc;
}

// Three-loop bouquet and the one-vertex two-color cycle.
inline GraphSpec bouquet3() {
  return graph(1, {"u"}, {{"f1", "u", "u", 1}, {"f2", "u", "u", 1}, {"f3", "u", "u", 1}});
}
inline GraphSpec cycle_1_2() {
  return graph(2, {"x"}, {{"e", "x", "x", 1}, {"g", "x", "x", 2}}, {sq("e", "g", "g", "e")});
}

// Bouquet rules: variant 1 is the product, 2 swaps f1 and f2 under both e
// and g, 3 swaps f2, f3 under e and f1, f2 under g.
inline InstanceDocument bouq(int variant) {
  auto l = bouquet3();
  auto g = cycle_1_2();
  MixedSquares m(l, g);
  if (variant == 2) {
    m.set("f1", "e", "e", "f2").set("f2", "e", "e", "f1");
    m.set("f1", "g", "g", "f2").set("f2", "g", "g", "f1");
  } else if (variant == 3) {
    m.set("f2", "e", "e", "f3").set("f3", "e", "e", "f2");
    m.set("f1", "g", "g", "f2").set("f2", "g", "g", "f1");
  }
  return quasi_product("bouq_sim" + std::to_string(variant),
                       "Three-loop bouquet with a one-vertex two-color cycle, rule " + std::to_string(variant), l, g, m);
}

inline InstanceDocument rho_non_comp() {
  auto l = graph(1, {"u", "v"}, {{"e", "u", "u", 1}, {"f", "u", "v", 1}, {"g", "u", "v", 1}, {"h", "u", "u", 1}});
  auto g = graph(1, {"x", "y"}, {{"b", "x", "y", 1}, {"c", "x", "y", 1}, {"d", "x", "x", 1}});
  MixedSquares m(l, g);
  m.set("f", "b", "c", "g").set("f", "c", "b", "f");
  m.set("g", "c", "c", "f");  // forced: (v,b)(f,x) is already taken
  m.set("h", "b", "c", "e").set("e", "b", "c", "h");
  m.set("h", "c", "b", "h").set("e", "c", "b", "e");
  return quasi_product("rho_non_comp", "Right action of b does not respect composition", l, g, m);
}

inline InstanceDocument rho_non_isom() {
  auto l = graph(1, {"u", "v"}, {{"e", "v", "v", 1}, {"f", "u", "v", 1}, {"g", "u", "v", 1}, {"h", "u", "u", 1}});
  auto g = graph(1, {"x", "y"}, {{"a", "y", "y", 1}, {"b", "x", "y", 1}, {"c", "x", "y", 1}, {"d", "x", "x", 1}});
  MixedSquares m(l, g);
  m.set("g", "b", "b", "g").set("f", "b", "c", "g");
  m.set("g", "c", "c", "f").set("f", "c", "b", "f");
  return quasi_product("rho_non_isom", "Right action of b is not injective on edges", l, g, m);
}

// Path w0 <- w1 <- ... <- w_{n-1} (e_i from w_{i+1} to w_i) with a
// one-vertex two-loop factor; odd edges swap f and g.
inline InstanceDocument path_loops(int n = 8) {
  std::vector<std::string> vs;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i) vs.push_back("w" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i)
    es.push_back({"e" + std::to_string(i), "w" + std::to_string(i + 1), "w" + std::to_string(i), 1});
  auto l = graph(1, vs, es);
  auto g = graph(1, {"v"}, {{"f", "v", "v", 1}, {"g", "v", "v", 1}});
  MixedSquares m(l, g);
  for (int i = 1; i + 1 < n; i += 2) {
    const std::string e = "e" + std::to_string(i);
    m.set(e, "f", "g", e).set(e, "g", "f", e);
  }
  auto doc = quasi_product("path_loops_trunc" + std::to_string(n),
                           "Path with two loops, odd edges exchange the loops", l, g, m);
  doc.root = "w2";
  return doc;
}

// Dashed 4-cycle u -> v <- t -> w <- u with two loops f, g.  Edge wt swaps
// the loops; variant 1 leaves wu trivial (nontrivial holonomy), variant 2
// swaps under wu as well.
inline InstanceDocument counter(int variant) {
  auto l = graph(1, {"t", "u", "v", "w"},
                 {{"vt", "t", "v", 1}, {"vu", "u", "v", 1}, {"wt", "t", "w", 1}, {"wu", "u", "w", 1}});
  auto g = graph(1, {"x"}, {{"f", "x", "x", 1}, {"g", "x", "x", 1}});
  MixedSquares m(l, g);
  m.set("wt", "f", "g", "wt").set("wt", "g", "f", "wt");
  if (variant == 2) m.set("wu", "f", "g", "wu").set("wu", "g", "f", "wu");
  auto doc = quasi_product("counter_omega" + std::to_string(variant),
                           variant == 1 ? "Undirected 4-cycle with nontrivial holonomy"
                                        : "Undirected 4-cycle with trivial holonomy",
                           l, g, m);
  doc.root = "w";
  return doc;
}

// C_{n,k}: vertices w0..w_{n-1}, edge f<i>_<j> of color j from w_i to w_{i+1}.
inline GraphSpec cycle_graph(int n, int k) {
  GraphSpec g;
  g.rank = k;
  auto w = [&](int i) { return "w" + std::to_string(((i % n) + n) % n); };
  auto f = [&](int i, int j) { return "f" + std::to_string(((i % n) + n) % n) + "_" + std::to_string(j); };
  for (int i = 0; i < n; ++i) g.vertices.push_back(w(i));
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k; ++j) g.edges.push_back({f(i, j), w(i), w(i + 1), j});
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k; ++j)
      for (int l = j + 1; l <= k; ++l) g.squares.push_back(sq(f(i, j), f(i - 1, l), f(i, l), f(i - 1, j)));
  return g;
}

inline InstanceDocument c43() {
  InstanceDocument doc;
  doc.name = "c43";
  doc.description = "Three parallel 4-cycles, one per color";
  doc.kgraph = cycle_graph(4, 3);
  canonicalize(doc);
  return doc;
}

// Path w0 <- w1 <- ... with n vertices, rank 1.
inline GraphSpec line_graph(int n) {
  GraphSpec g;
  for (int i = 0; i < n; ++i) g.vertices.push_back("w" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i)
    g.edges.push_back({"e" + std::to_string(i), "w" + std::to_string(i + 1), "w" + std::to_string(i), 1});
  return g;
}

// n x n grid, the product of two n-vertex lines: vertex p<i>_<j>, edge
// h<i>_<j> of color 1 from p<i+1>_<j> to p<i>_<j> and v<i>_<j> of color 2
// from p<i>_<j+1> to p<i>_<j>.
inline GraphSpec grid(int n) {
  GraphSpec g;
  g.rank = 2;
  auto p = [](int i, int j) { return "p" + std::to_string(i) + "_" + std::to_string(j); };
  auto h = [](int i, int j) { return "h" + std::to_string(i) + "_" + std::to_string(j); };
  auto v = [](int i, int j) { return "v" + std::to_string(i) + "_" + std::to_string(j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.vertices.push_back(p(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) g.edges.push_back({h(i, j), p(i + 1, j), p(i, j), 1});
      if (j + 1 < n) g.edges.push_back({v(i, j), p(i, j + 1), p(i, j), 2});
    }
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) g.squares.push_back(sq(h(i, j), v(i + 1, j), v(i, j), h(i, j + 1)));
  return g;
}

// Two-loop bouquet over a 3 x 3 grid.  The loops are exchanged along every
// grid edge touching p1_1, a twist that cancels around each grid square.
inline InstanceDocument lattice_grid() {
  auto l = graph(1, {"o"}, {{"a", "o", "o", 1}, {"b", "o", "o", 1}});
  auto g = grid(3);
  MixedSquares m(l, g);
  for (const EdgeSpec& q : g.edges) {
    if (q.src != "p1_1" && q.dst != "p1_1") continue;
    m.set("a", q.id, q.id, "b").set("b", q.id, q.id, "a");
  }
  auto doc = quasi_product("lattice_grid", "Two-loop bouquet over a 3 x 3 grid with a flat twist", l, g, m);
  doc.tree_factors = {line_graph(3), line_graph(3)};
  canonicalize(doc);
  return doc;
}

inline std::vector<InstanceDocument> all() {
  return {bouq(1), bouq(2), bouq(3), rho_non_comp(), rho_non_isom(), path_loops(8), counter(1), counter(2),
          c43(), lattice_grid()};
}

inline std::optional<InstanceDocument> find(const std::string& name) {
  for (auto& d : all())
    if (d.name == name) return d;
  return std::nullopt;
}

}  // namespace kgraph::corpus
