#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgraph/error.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

// Colors 1..k1 form the first side, k1+1..k1+k2 the second.
struct ColorSplit {
  int k1 = 1;
  int k2 = 1;
};

// Factor skeletons attached to a host that is a box product.  Enables the
// path-level actions p |> (q) and q <| (p) on factor paths.
struct FactorView {
  ColoredGraph lambda;
  ColoredGraph gamma;
  BoxEmbedding embedding;
};

// Zappa-Szep data of a host k-graph split by color: the sub-k-graphs on
// each side plus the edge-level actions read off the mixed squares.  For
// e on the first side and g on the second with s(e) = r(g), the square
// e.g ~ (e |> g).(e <| g) defines both tables.
class MatchedPair {
 public:
  MatchedPair(KGraph host, ColorSplit split, std::optional<FactorView> factors = std::nullopt)
      : host_(std::move(host)),
        split_(checked(split, host_.rank())),
        omega1_(KGraph(restrict_colors(host_.rule(), 1, split.k1).rule)),
        omega2_(KGraph(restrict_colors(host_.rule(), split.k1 + 1, split.k1 + split.k2).rule)),
        factors_(std::move(factors)) {
    if (factors_ && (factors_->lambda.rank() != split.k1 || factors_->gamma.rank() != split.k2))
      throw PreconditionError("factor ranks do not match the color split");
    auto r1 = restrict_colors(host_.rule(), 1, split.k1);
    auto r2 = restrict_colors(host_.rule(), split.k1 + 1, split.k1 + split.k2);
    to_host1_ = r1.to_parent;
    to_host2_ = r2.to_parent;
    const ColoredGraph& g = host_.graph();
    for (const Square& s : host_.squares().squares()) {
      if (g.color(s.a) <= split.k1 && g.color(s.b) > split.k1) {
        left_[{s.a, s.b}] = s.c;
        right_[{s.a, s.b}] = s.d;
      }
    }
  }

  const KGraph& host() const { return host_; }
  const ColorSplit& split() const { return split_; }
  const KGraph& omega1() const { return omega1_; }
  const KGraph& omega2() const { return omega2_; }
  const std::optional<FactorView>& factors() const { return factors_; }
  bool first_side(EdgeId host_edge) const { return host_.graph().color(host_edge) <= split_.k1; }

  const std::map<std::pair<EdgeId, EdgeId>, EdgeId>& left_table() const { return left_; }
  const std::map<std::pair<EdgeId, EdgeId>, EdgeId>& right_table() const { return right_; }

  // Host paths of the sub-k-graph morphisms (canonical, identities included).
  std::vector<Path> first_morphisms(std::size_t max_degree) const {
    return lift(omega1_, to_host1_, max_degree);
  }
  std::vector<Path> second_morphisms(std::size_t max_degree) const {
    return lift(omega2_, to_host2_, max_degree);
  }

  // (w1 |> w2, w1 <| w2) for host paths w1 (first side) and w2 (second
  // side) with s(w1) = r(w2).  Each part keeps its input's color order.
  std::pair<Path, Path> zappa_szep(const Path& w1, const Path& w2) const {
    const ColoredGraph& g = host_.graph();
    if (w1.source() != w2.range()) throw PreconditionError("zappa_szep: paths are not composable");
    for (EdgeId e : w1.edges())
      if (!first_side(e)) throw PreconditionError("zappa_szep: first path leaves the first side");
    for (EdgeId e : w2.edges())
      if (first_side(e)) throw PreconditionError("zappa_szep: second path leaves the second side");
    auto order = w2.colors(g);
    auto c1 = w1.colors(g);
    order.insert(order.end(), c1.begin(), c1.end());
    Path n = host_.normalize_to_order(w1.then_before(g, w2), order);
    const auto& e = n.edges();
    const auto cut = static_cast<std::ptrdiff_t>(w2.length());
    std::vector<EdgeId> a(e.begin(), e.begin() + cut), b(e.begin() + cut, e.end());
    VertexId mid = a.empty() ? w1.range() : g.src(a.back());
    return {Path::of_or_at(g, std::move(a), w1.range()), Path::of_or_at(g, std::move(b), mid)};
  }

  // Lifts of factor paths: p in the lambda skeleton at gamma vertex w, q in
  // the gamma skeleton at lambda vertex x.
  Path lift_lambda(const Path& p, VertexId w) const {
    const auto& f = view();
    std::vector<EdgeId> e;
    for (EdgeId x : p.edges()) e.push_back(f.embedding.host_lhs_edge(x, w));
    return Path::of_or_at(host_.graph(), std::move(e), f.embedding.host_vertex(p.range(), w));
  }
  Path lift_gamma(VertexId x, const Path& q) const {
    const auto& f = view();
    std::vector<EdgeId> e;
    for (EdgeId g : q.edges()) e.push_back(f.embedding.host_rhs_edge(x, g));
    return Path::of_or_at(host_.graph(), std::move(e), f.embedding.host_vertex(x, q.range()));
  }

  // p |> (q) and q <| (p) for a lambda path p and a gamma path q: the
  // normal form of ([p], r(q)).(s(p), [q]) with the gamma part in front.
  // First component is a gamma path from s(q) to r(q), second a lambda
  // path from s(p) to r(p).
  std::pair<Path, Path> act(const Path& p, const Path& q) const {
    const auto& f = view();
    auto [l, r] = zappa_szep(lift_lambda(p, q.range()), lift_gamma(p.source(), q));
    std::vector<EdgeId> ge, le;
    for (EdgeId e : l.edges()) ge.push_back(f.embedding.edge_origin[e].factor_edge);
    for (EdgeId e : r.edges()) le.push_back(f.embedding.edge_origin[e].factor_edge);
    return {Path::of_or_at(f.gamma, std::move(ge), q.range()),
            Path::of_or_at(f.lambda, std::move(le), p.range())};
  }

  Path act_left(const Path& p, const Path& q) const { return act(p, q).first; }
  Path act_right(const Path& p, const Path& q) const { return act(p, q).second; }

  const FactorView& view() const {
    if (!factors_) throw PreconditionError("matched pair has no box embedding attached");
    return *factors_;
  }

 private:
  static ColorSplit checked(ColorSplit split, int rank) {
    if (split.k1 < 1 || split.k2 < 1 || split.k1 + split.k2 != rank)
      throw PreconditionError("color split does not match the host rank");
    return split;
  }

  std::vector<Path> lift(const KGraph& sub, const std::vector<EdgeId>& to_host,
                         std::size_t max_degree) const {
    std::vector<Path> out;
    for (const Path& m : sub.morphisms(max_degree)) {
      if (m.empty()) {
        out.push_back(m);  // vertices are shared with the host
        continue;
      }
      std::vector<EdgeId> e;
      for (EdgeId x : m.edges()) e.push_back(to_host[x]);
      out.push_back(Path::of(host_.graph(), std::move(e)));
    }
    return out;
  }

  KGraph host_;
  ColorSplit split_;
  KGraph omega1_;
  KGraph omega2_;
  std::optional<FactorView> factors_;
  std::vector<EdgeId> to_host1_, to_host2_;
  std::map<std::pair<EdgeId, EdgeId>, EdgeId> left_, right_;
};

inline Path subpath(const ColoredGraph& g, const Path& p, std::size_t from, std::size_t to) {
  if (from == to) {
    VertexId v = from == 0 ? p.range() : g.src(p.edges()[from - 1]);
    return Path::at(v);
  }
  return Path::of(g, std::vector<EdgeId>(p.edges().begin() + static_cast<std::ptrdiff_t>(from),
                                         p.edges().begin() + static_cast<std::ptrdiff_t>(to)));
}

inline MatchedPair extract_matched_pair(KGraph host, ColorSplit split,
                                        std::optional<FactorView> factors = std::nullopt) {
  return MatchedPair(std::move(host), split, std::move(factors));
}

// Tally for one identity: how many instances were checked, how many
// failed, and a few failing instances spelled out.
struct LawCheck {
  LawCheck() = default;
  explicit LawCheck(std::string name) : law(std::move(name)) {}

  std::string law;
  std::size_t checked = 0;
  std::size_t failed = 0;
  std::vector<std::string> examples;

  template <typename Describe>
  void record(bool ok, Describe&& describe) {
    ++checked;
    if (ok) return;
    ++failed;
    if (examples.size() < 5) examples.push_back(describe());
  }
};

struct LawReport {
  std::vector<LawCheck> laws;

  bool holds() const {
    for (const auto& l : laws)
      if (l.failed) return false;
    return true;
  }
  bool vacuous() const {
    for (const auto& l : laws)
      if (l.checked) return false;
    return true;
  }
  const LawCheck* find(const std::string& name) const {
    for (const auto& l : laws)
      if (l.law == name) return &l;
    return nullptr;
  }
};

// Every degree vector componentwise between 0 and d.
inline std::vector<std::vector<int>> sub_degrees(const std::vector<int>& d) {
  std::vector<std::vector<int>> out{std::vector<int>(d.size(), 0)};
  for (std::size_t c = 0; c < d.size(); ++c) {
    std::vector<std::vector<int>> next;
    for (const auto& v : out)
      for (int n = 0; n <= d[c]; ++n) {
        auto w = v;
        w[c] = n;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

// Matched-pair axioms on host morphisms of total degree <= bound per side,
// plus the path-level endpoint and composition identities when factor
// skeletons are attached.
inline LawReport verify_mp_axioms(const MatchedPair& mp, std::size_t bound = 4) {
  const KGraph& host = mp.host();
  const ColoredGraph& g = host.graph();
  auto str = [&](const Path& p) { return to_string(g, p); };

  LawCheck mp1{"MP1"}, fact{"factorization"}, deg{"degree"}, ends{"endpoints"},
      lact{"left action"}, ract{"right action"}, mp2{"MP2"}, mp3{"MP3"};

  for (const auto& [key, l] : mp.left_table()) {
    EdgeId r = mp.right_table().at(key);
    mp1.record(g.src(l) == g.dst(r), [&] {
      return g.edge(key.first).name + " " + g.edge(key.second).name;
    });
  }

  const auto m1 = mp.first_morphisms(bound);
  const auto m2 = mp.second_morphisms(bound);
  std::map<VertexId, std::vector<const Path*>> by_range;
  for (const Path& d : m2) by_range[d.range()].push_back(&d);

  for (const Path& c : m1) {
    auto it = by_range.find(c.source());
    if (it == by_range.end()) continue;
    for (const Path* dp : it->second) {
      const Path& d = *dp;
      auto [L, R] = mp.zappa_szep(c, d);
      auto where = [&] { return "c=" + str(c) + " d=" + str(d); };
      fact.record(host.compose(c, d) == host.compose(L, R), where);
      deg.record(L.degree(g) == d.degree(g) && R.degree(g) == c.degree(g), where);
      ends.record(L.range() == c.range() && R.source() == d.source() && L.source() == R.range(),
                  where);
      for (const auto& front : sub_degrees(d.degree(g))) {
        auto [d1, d2] = host.factorize(d, front);
        auto [L1, R1] = mp.zappa_szep(c, d1);
        auto [L2, R2] = mp.zappa_szep(R1, d2);
        auto at = [&] { return where() + " d1=" + str(d1) + " d2=" + str(d2); };
        mp2.record(host.normalize(L1.then_before(g, L2)) == L, at);
        ract.record(host.normalize(R2) == R, at);
      }
      for (const auto& front : sub_degrees(c.degree(g))) {
        auto [c1, c2] = host.factorize(c, front);
        auto [L2, R2] = mp.zappa_szep(c2, d);
        auto [L1, R1] = mp.zappa_szep(c1, L2);
        auto at = [&] { return where() + " c1=" + str(c1) + " c2=" + str(c2); };
        lact.record(host.normalize(L1) == L, at);
        mp3.record(host.normalize(R1.then_before(g, R2)) == R, at);
      }
    }
  }

  LawReport report{{mp1, fact, deg, ends, lact, ract, mp2, mp3}};
  if (!mp.factors()) return report;

  // Path-level identities on the factor skeletons.
  const FactorView& f = mp.view();
  LawCheck pends{"path endpoints"}, lcomp{"left composition"}, rcomp{"right composition"};
  const auto ps = enumerate_paths(f.lambda, bound);
  const auto qs = enumerate_paths(f.gamma, bound);
  for (const Path& p : ps) {
    for (const Path& q : qs) {
      auto [pq, qp] = mp.act(p, q);
      auto where = [&] { return "p=" + to_string(f.lambda, p) + " q=" + to_string(f.gamma, q); };
      pends.record(qp.range() == p.range() && qp.source() == p.source() &&
                       pq.range() == q.range() && pq.source() == q.source(),
                   where);
      // p |> (q1 q2) = p |> (q1) . (q1 <| (p)) |> (q2)
      for (std::size_t i = 1; i < q.length(); ++i) {
        Path q1 = subpath(f.gamma, q, 0, i), q2 = subpath(f.gamma, q, i, q.length());
        auto [a, p1] = mp.act(p, q1);
        Path b = mp.act_left(p1, q2);
        lcomp.record(a.then_before(f.gamma, b) == pq, where);
      }
      // q <| (p1 p2) = (p2 |> (q)) <| (p1) . q <| (p2)
      for (std::size_t i = 1; i < p.length(); ++i) {
        Path p1 = subpath(f.lambda, p, 0, i), p2 = subpath(f.lambda, p, i, p.length());
        auto [q2, b] = mp.act(p2, q);
        Path a = mp.act_right(p1, q2);
        rcomp.record(a.then_before(f.lambda, b) == qp, where);
      }
    }
  }
  report.laws.push_back(pends);
  report.laws.push_back(lcomp);
  report.laws.push_back(rcomp);
  return report;
}

struct CompositionFailure {
  bool right_action = true;  // q <| (p1 p2) vs q <| (p1) . q <| (p2); else the |> dual
  Path acting;               // q for the right action, p for the left
  Path first, second;        // the split of the composite being acted on
  Path combined;             // action on the composite
  Path piecewise;            // product of the separate actions
};

struct CompositionReport {
  std::size_t checked = 0;
  std::vector<CompositionFailure> failures;
};

// Whether the path actions respect composition naively, i.e. without the
// twist through the other action.  Failures are listed shortest first.
inline CompositionReport check_action_composition(const MatchedPair& mp, std::size_t bound = 4) {
  const FactorView& f = mp.view();
  CompositionReport out;
  const auto ps = enumerate_paths(f.lambda, bound);
  const auto qs = enumerate_paths(f.gamma, bound);
  for (const Path& p : ps) {
    for (std::size_t i = 1; i < p.length(); ++i) {
      Path p1 = subpath(f.lambda, p, 0, i), p2 = subpath(f.lambda, p, i, p.length());
      for (const Path& q : qs) {
        ++out.checked;
        Path whole = mp.act_right(p, q);
        Path parts = mp.act_right(p1, q).then_before(f.lambda, mp.act_right(p2, q));
        if (whole != parts) out.failures.push_back({true, q, p1, p2, whole, parts});
      }
    }
  }
  for (const Path& q : qs) {
    for (std::size_t i = 1; i < q.length(); ++i) {
      Path q1 = subpath(f.gamma, q, 0, i), q2 = subpath(f.gamma, q, i, q.length());
      for (const Path& p : ps) {
        ++out.checked;
        Path whole = mp.act_left(p, q);
        Path parts = mp.act_left(p, q1).then_before(f.gamma, mp.act_left(p, q2));
        if (whole != parts) out.failures.push_back({false, p, q1, q2, whole, parts});
      }
    }
  }
  return out;
}

// Edge permutations fixing every vertex and color: products of symmetric
// groups on the classes of parallel same-colored edges.
struct VertexFixingGroup {
  std::vector<std::vector<EdgeId>> classes;     // classes with >= 2 edges
  std::vector<std::vector<EdgeId>> elements;    // each a full edge permutation
  bool trivial() const { return classes.empty(); }
};

inline VertexFixingGroup vertex_fixing_automorphisms(const ColoredGraph& g, Budget* budget = nullptr) {
  std::map<std::tuple<VertexId, VertexId, Color>, std::vector<EdgeId>> buckets;
  for (EdgeId e = 0; e < g.edge_count(); ++e) buckets[{g.src(e), g.dst(e), g.color(e)}].push_back(e);
  VertexFixingGroup out;
  for (auto& [k, v] : buckets)
    if (v.size() > 1) out.classes.push_back(v);
  std::vector<EdgeId> id(g.edge_count());
  std::iota(id.begin(), id.end(), EdgeId{0});
  out.elements.push_back(id);
  for (const auto& cls : out.classes) {
    std::vector<std::vector<EdgeId>> next;
    for (const auto& base : out.elements) {
      auto perm = cls;
      do {
        if (budget) budget->charge("vertex_fixing_automorphisms");
        auto el = base;
        for (std::size_t i = 0; i < cls.size(); ++i) el[cls[i]] = perm[i];
        next.push_back(std::move(el));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.elements = std::move(next);
  }
  return out;
}

}  // namespace kgraph
