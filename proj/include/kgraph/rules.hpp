#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "kgraph/error.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

// a.b ~ c.d with color(a) < color(b); c has b's color and d has a's.
struct Square {
  EdgeId a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Square&, const Square&) = default;
};

// One-directional table of commuting squares, keyed by the side whose
// colors ascend.
class SquareTable {
 public:
  void add(EdgeId a, EdgeId b, EdgeId c, EdgeId d) {
    auto [it, fresh] = table_.emplace(std::make_pair(a, b), std::make_pair(c, d));
    if (!fresh) throw InputError("duplicate square key");
  }
  void add(const Square& s) { add(s.a, s.b, s.c, s.d); }

  std::optional<std::pair<EdgeId, EdgeId>> lookup(EdgeId a, EdgeId b) const {
    auto it = table_.find({a, b});
    if (it == table_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Square> squares() const {
    std::vector<Square> out;
    out.reserve(table_.size());
    for (const auto& [k, v] : table_) out.push_back({k.first, k.second, v.first, v.second});
    return out;
  }

  std::size_t size() const { return table_.size(); }
  friend bool operator==(const SquareTable&, const SquareTable&) = default;

 private:
  std::map<std::pair<EdgeId, EdgeId>, std::pair<EdgeId, EdgeId>> table_;
};

struct RuleSet {
  ColoredGraph graph;
  SquareTable squares;
};

inline std::string square_string(const ColoredGraph& g, const Square& s) {
  return g.edge(s.a).name + " " + g.edge(s.b).name + " ~ " + g.edge(s.c).name + " " +
         g.edge(s.d).name;
}

// Structural defect of a square table: reported as an input error.
class MalformedRule : public InputError {
 public:
  using InputError::InputError;
};

struct CubeWitness {
  std::array<EdgeId, 3> path{};  // colors ascend along the path
  std::vector<EdgeId> via_first;   // swaps at (1,2),(2,3),(1,2)
  std::vector<EdgeId> via_second;  // swaps at (2,3),(1,2),(2,3)
};

struct RuleVerdict {
  bool valid = true;
  std::optional<CubeWitness> witness;
};

namespace detail {

inline std::uint64_t pair_key(EdgeId a, EdgeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// Swap lookup in both directions.
inline std::unordered_map<std::uint64_t, std::uint64_t> swap_index(const SquareTable& t) {
  std::unordered_map<std::uint64_t, std::uint64_t> m;
  for (const Square& s : t.squares()) {
    m[pair_key(s.a, s.b)] = pair_key(s.c, s.d);
    m[pair_key(s.c, s.d)] = pair_key(s.a, s.b);
  }
  return m;
}

inline void check_structure(const RuleSet& r) {
  const ColoredGraph& g = r.graph;
  auto name = [&](EdgeId e) { return g.edge(e).name; };
  std::set<std::pair<EdgeId, EdgeId>> values;
  for (const Square& s : r.squares.squares()) {
    const std::string where = "square " + square_string(g, s) + ": ";
    if (g.color(s.a) >= g.color(s.b))
      throw MalformedRule(where + "key colors must ascend");
    if (g.src(s.a) != g.dst(s.b)) throw MalformedRule(where + "key is not composable");
    if (g.src(s.c) != g.dst(s.d)) throw MalformedRule(where + "value is not composable");
    if (g.color(s.c) != g.color(s.b) || g.color(s.d) != g.color(s.a))
      throw MalformedRule(where + "value colors do not mirror the key");
    if (g.dst(s.c) != g.dst(s.a) || g.src(s.d) != g.src(s.b))
      throw MalformedRule(where + "value endpoints differ from the key");
    if (!values.insert({s.c, s.d}).second)
      throw MalformedRule(where + "value " + name(s.c) + " " + name(s.d) +
                          " is used twice (pair map not bijective)");
  }
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    for (EdgeId b : g.in_edges(g.src(a))) {
      if (g.color(a) < g.color(b) && !r.squares.lookup(a, b))
        throw MalformedRule("missing square for key " + name(a) + " " + name(b));
      if (g.color(a) > g.color(b) && !values.count({a, b}))
        throw MalformedRule("path " + name(a) + " " + name(b) +
                            " is not the image of any square (pair map not bijective)");
    }
  }
}

}  // namespace detail

// Checks that every two-colored composable pair has exactly one partner
// (throws MalformedRule otherwise) and that every three-colored path has a
// closed hexagon of rewrites.
inline RuleVerdict validate_rule(const RuleSet& r) {
  detail::check_structure(r);
  const ColoredGraph& g = r.graph;
  const auto idx = detail::swap_index(r.squares);
  auto swap = [&](std::vector<EdgeId>& p, std::size_t i) {
    auto v = idx.at(detail::pair_key(p[i], p[i + 1]));
    p[i] = static_cast<EdgeId>(v >> 32);
    p[i + 1] = static_cast<EdgeId>(v & 0xffffffffu);
  };
  for (EdgeId a = 0; a < g.edge_count(); ++a) {
    for (EdgeId b : g.in_edges(g.src(a))) {
      if (g.color(b) <= g.color(a)) continue;
      for (EdgeId c : g.in_edges(g.src(b))) {
        if (g.color(c) <= g.color(b)) continue;
        std::vector<EdgeId> x{a, b, c}, y{a, b, c};
        swap(x, 0), swap(x, 1), swap(x, 0);
        swap(y, 1), swap(y, 0), swap(y, 1);
        if (x != y) return {false, CubeWitness{{a, b, c}, x, y}};
      }
    }
  }
  return {};
}

// A validated k-graph: skeleton plus a square table satisfying the
// factorization property.  Morphisms are represented by their canonical
// path, the unique representative whose colors are non-decreasing.
class KGraph {
 public:
  explicit KGraph(RuleSet rule) : rule_(std::move(rule)) {
    auto v = validate_rule(rule_);
    if (!v.valid) {
      const auto& w = *v.witness;
      throw PreconditionError("rule violates the cube condition at " + g().edge(w.path[0]).name +
                              " " + g().edge(w.path[1]).name + " " + g().edge(w.path[2]).name);
    }
    swap_ = detail::swap_index(rule_.squares);
  }

  const ColoredGraph& graph() const { return rule_.graph; }
  const SquareTable& squares() const { return rule_.squares; }
  const RuleSet& rule() const { return rule_; }
  int rank() const { return rule_.graph.rank(); }

  // Partner of the two-colored pair a.b, if any.
  std::optional<std::pair<EdgeId, EdgeId>> swap(EdgeId a, EdgeId b) const {
    auto it = swap_.find(detail::pair_key(a, b));
    if (it == swap_.end()) return std::nullopt;
    return std::make_pair(static_cast<EdgeId>(it->second >> 32),
                          static_cast<EdgeId>(it->second & 0xffffffffu));
  }

  // The unique path equivalent to p whose color sequence is `target`
  // (a permutation of p's colors).
  Path normalize_to_order(const Path& p, const std::vector<Color>& target) const {
    if (p.empty()) {
      if (!target.empty()) throw PreconditionError("target order does not match the path degree");
      return p;
    }
    const auto colors = p.colors(g());
    {
      auto a = colors, b = target;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) throw PreconditionError("target order does not match the path degree");
    }
    // Slot of each position in the target, same-colored edges keep order.
    std::vector<std::size_t> slot(colors.size());
    std::map<Color, std::vector<std::size_t>> where;
    for (std::size_t i = target.size(); i-- > 0;) where[target[i]].push_back(i);
    for (std::size_t i = 0; i < colors.size(); ++i) {
      auto& v = where[colors[i]];
      slot[i] = v.back();
      v.pop_back();
    }
    std::vector<EdgeId> e = p.edges();
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (slot[i] < slot[i + 1]) continue;
        auto s = swap(e[i], e[i + 1]);
        if (!s) throw Error("normalize: missing square for " + g().edge(e[i]).name + " " +
                            g().edge(e[i + 1]).name);
        e[i] = s->first;
        e[i + 1] = s->second;
        std::swap(slot[i], slot[i + 1]);
        moved = true;
      }
    }
    return Path::of(g(), std::move(e));
  }

  Path normalize(const Path& p) const {
    auto c = p.colors(g());
    std::sort(c.begin(), c.end());
    return normalize_to_order(p, c);
  }

  Path compose(const Path& first_factor, const Path& second_factor) const {
    return normalize(first_factor.then_before(g(), second_factor));
  }

  // Splits m = mu . nu with d(mu) = front.
  std::pair<Path, Path> factorize(const Path& m, const std::vector<int>& front) const {
    const auto d = m.degree(g());
    if (front.size() != d.size()) throw PreconditionError("factorize: degree has the wrong rank");
    std::vector<Color> order;
    for (std::size_t c = 0; c < d.size(); ++c) {
      if (front[c] < 0 || front[c] > d[c]) throw PreconditionError("factorize: degree out of range");
      order.insert(order.end(), static_cast<std::size_t>(front[c]), static_cast<Color>(c + 1));
    }
    const std::size_t cut = order.size();
    for (std::size_t c = 0; c < d.size(); ++c)
      order.insert(order.end(), static_cast<std::size_t>(d[c] - front[c]), static_cast<Color>(c + 1));
    auto n = normalize_to_order(m, order);
    const auto& e = n.edges();
    std::vector<EdgeId> mu(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(cut));
    std::vector<EdgeId> nu(e.begin() + static_cast<std::ptrdiff_t>(cut), e.end());
    VertexId mid = cut == 0 ? m.range() : g().src(mu.back());
    return {Path::of_or_at(g(), std::move(mu), m.range()), Path::of_or_at(g(), std::move(nu), mid)};
  }

  // Equivalence class of p under adjacent square swaps, sorted.
  std::vector<Path> rewrite_closure(const Path& p, Budget* budget = nullptr) const {
    std::set<std::vector<EdgeId>> seen{p.edges()};
    std::vector<std::vector<EdgeId>> frontier{p.edges()};
    while (!frontier.empty()) {
      std::vector<std::vector<EdgeId>> next;
      for (const auto& e : frontier) {
        for (std::size_t i = 0; i + 1 < e.size(); ++i) {
          auto s = swap(e[i], e[i + 1]);
          if (!s) continue;
          auto f = e;
          f[i] = s->first;
          f[i + 1] = s->second;
          if (seen.insert(f).second) {
            if (budget) budget->charge("rewrite_closure");
            next.push_back(std::move(f));
          }
        }
      }
      frontier = std::move(next);
    }
    std::vector<Path> out;
    for (const auto& e : seen) out.push_back(Path::of_or_at(g(), e, p.range()));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Canonical paths (identities included) of total degree <= max_degree.
  std::vector<Path> morphisms(std::size_t max_degree) const {
    std::vector<Path> out;
    for (VertexId v = 0; v < g().vertex_count(); ++v) out.push_back(Path::at(v));
    std::vector<std::vector<EdgeId>> layer;
    for (EdgeId e = 0; e < g().edge_count(); ++e) layer.push_back({e});
    for (std::size_t len = 1; len <= max_degree && !layer.empty(); ++len) {
      std::vector<std::vector<EdgeId>> next;
      for (auto& es : layer) {
        out.push_back(Path::of(g(), es));
        if (len == max_degree) continue;
        for (EdgeId f : g().in_edges(g().src(es.back()))) {
          if (g().color(f) < g().color(es.back())) continue;
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

 private:
  const ColoredGraph& g() const { return rule_.graph; }

  RuleSet rule_;
  std::unordered_map<std::uint64_t, std::uint64_t> swap_;
};

// Squares of `r` between edges whose colors both lie in [lo, hi], moved to a
// graph built from those edges with colors shifted down by lo - 1.
struct Restriction {
  RuleSet rule;
  std::vector<EdgeId> to_parent;                 // sub edge -> parent edge
  std::vector<std::optional<EdgeId>> from_parent;  // parent edge -> sub edge
};

inline Restriction restrict_colors(const RuleSet& r, Color lo, Color hi) {
  const ColoredGraph& g = r.graph;
  Restriction out{{ColoredGraph(hi - lo + 1), {}}, {}, {}};
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.rule.graph.add_vertex(g.vertex_name(v));
  out.from_parent.assign(g.edge_count(), std::nullopt);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.color(e) < lo || g.color(e) > hi) continue;
    out.from_parent[e] = out.rule.graph.add_edge(g.edge(e).name, g.src(e), g.dst(e), g.color(e) - lo + 1);
    out.to_parent.push_back(e);
  }
  for (const Square& s : r.squares.squares()) {
    if (out.from_parent[s.a] && out.from_parent[s.b])
      out.rule.squares.add(*out.from_parent[s.a], *out.from_parent[s.b], *out.from_parent[s.c],
                           *out.from_parent[s.d]);
  }
  return out;
}

// The rule with no twisting on the box product: every mixed pair commutes
// and each layer carries a copy of its factor's squares.
inline RuleSet product_rule(const KGraph& lhs, const KGraph& rhs) {
  auto bp = box_product(lhs.graph(), rhs.graph());
  const auto& m = bp.embedding;
  RuleSet r{std::move(bp.graph), {}};
  for (VertexId w = 0; w < rhs.graph().vertex_count(); ++w)
    for (const Square& s : lhs.squares().squares())
      r.squares.add(m.host_lhs_edge(s.a, w), m.host_lhs_edge(s.b, w), m.host_lhs_edge(s.c, w),
                    m.host_lhs_edge(s.d, w));
  for (VertexId x = 0; x < lhs.graph().vertex_count(); ++x)
    for (const Square& s : rhs.squares().squares())
      r.squares.add(m.host_rhs_edge(x, s.a), m.host_rhs_edge(x, s.b), m.host_rhs_edge(x, s.c),
                    m.host_rhs_edge(x, s.d));
  const ColoredGraph& l = lhs.graph();
  const ColoredGraph& g = rhs.graph();
  for (EdgeId e = 0; e < l.edge_count(); ++e)
    for (EdgeId q = 0; q < g.edge_count(); ++q)
      r.squares.add(m.host_lhs_edge(e, g.dst(q)), m.host_rhs_edge(l.src(e), q),
                    m.host_rhs_edge(l.dst(e), q), m.host_lhs_edge(e, g.src(q)));
  return r;
}

}  // namespace kgraph
