#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/actions.hpp"
#include "kgraph/analysis/quasi_product.hpp"
#include "kgraph/analysis/stability.hpp"
#include "kgraph/error.hpp"

namespace kgraph {

// k parallel directed n-cycles: vertices w_0..w_{n-1}, edge f[i][j-1] of
// color j from w_i to w_{i+1 mod n}.  w_0 is the lowest vertex.
struct CycleStructure {
  std::size_t n = 0;
  int k = 0;
  std::vector<VertexId> w;
  std::vector<std::vector<EdgeId>> f;
};

inline std::optional<CycleStructure> detect_cycle_skeleton(const ColoredGraph& g) {
  const std::size_t n = g.vertex_count();
  const int k = g.rank();
  if (n == 0 || g.edge_count() != n * static_cast<std::size_t>(k)) return std::nullopt;
  // out_of[v][c-1]: the unique color-c edge leaving v.
  std::vector<std::vector<std::optional<EdgeId>>> out_of(n, std::vector<std::optional<EdgeId>>(static_cast<std::size_t>(k)));
  std::vector<std::vector<int>> in_count(n, std::vector<int>(static_cast<std::size_t>(k), 0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto& slot = out_of[g.src(e)][static_cast<std::size_t>(g.color(e) - 1)];
    if (slot) return std::nullopt;
    slot = e;
    ++in_count[g.dst(e)][static_cast<std::size_t>(g.color(e) - 1)];
  }
  for (std::size_t v = 0; v < n; ++v)
    for (int c = 0; c < k; ++c)
      if (!out_of[v][static_cast<std::size_t>(c)] || in_count[v][static_cast<std::size_t>(c)] != 1)
        return std::nullopt;
  for (std::size_t v = 0; v < n; ++v) {
    VertexId next = g.dst(*out_of[v][0]);
    for (int c = 1; c < k; ++c)
      if (g.dst(*out_of[v][static_cast<std::size_t>(c)]) != next) return std::nullopt;
  }
  CycleStructure cs{n, k, {}, {}};
  VertexId cur = 0;
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[cur]) return std::nullopt;  // more than one cycle
    seen[cur] = true;
    cs.w.push_back(cur);
    std::vector<EdgeId> row;
    for (int c = 0; c < k; ++c) row.push_back(*out_of[cur][static_cast<std::size_t>(c)]);
    cs.f.push_back(row);
    cur = g.dst(row[0]);
  }
  if (cur != 0) return std::nullopt;
  return cs;
}

// Cycle skeleton plus the (unique) rule f_{i,j} f_{i-1,l} ~ f_{i,l} f_{i-1,j}.
inline std::optional<CycleStructure> detect_cycle_factor(const KGraph& g) {
  auto cs = detect_cycle_skeleton(g.graph());
  if (!cs) return std::nullopt;
  const std::size_t n = cs->n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t prev = (i + n - 1) % n;
    for (int j = 1; j <= cs->k; ++j)
      for (int l = j + 1; l <= cs->k; ++l) {
        auto s = g.swap(cs->f[i][static_cast<std::size_t>(j - 1)], cs->f[prev][static_cast<std::size_t>(l - 1)]);
        if (!s || s->first != cs->f[i][static_cast<std::size_t>(l - 1)] ||
            s->second != cs->f[prev][static_cast<std::size_t>(j - 1)])
          return std::nullopt;
      }
  }
  return cs;
}

// Short name for the C*-algebra of a few recognizable k-graphs.
inline std::string cstar_name(const KGraph& g, const std::string& fallback) {
  const ColoredGraph& s = g.graph();
  if (s.vertex_count() == 1) {
    if (s.rank() == 1 && s.edge_count() >= 2) return "O_" + std::to_string(s.edge_count());
    if (s.edge_count() == static_cast<std::size_t>(s.rank()) && detect_cycle_factor(g))
      return s.rank() == 1 ? "C(T)" : "C(T^" + std::to_string(s.rank()) + ")";
  }
  return fallback;
}

struct CrossedProductReport {
  CycleStructure cycle;
  bool gamma_stable = false;
  bool automorphisms_trivial = false;
  // rho[i][j-1]: induced by f_{i,j} <| from layer w_{i+1} to layer w_i.
  std::vector<std::vector<EdgeActionMap>> rho;
  // rho_{0,j} o rho_{1,j} o ... o rho_{n-1,j}, an automorphism of layer w_0.
  std::vector<EdgeMap> around;
  std::string headline;
  std::vector<std::string> unitaries;
};

inline std::string generator(const std::string& name) { return "S_{" + name + "}"; }

inline CrossedProductReport crossed_product_report(const QuasiProductInstance& qp, std::size_t bound = 4) {
  auto cs = detect_cycle_factor(qp.gamma());
  if (!cs) throw PreconditionError("gamma is not a cycle factor C_{n,k}");
  CrossedProductReport out;
  out.cycle = *cs;
  out.automorphisms_trivial = vertex_fixing_automorphisms(qp.gamma().graph()).trivial();
  auto st = check_stable(qp, Side::gamma, bound);
  out.gamma_stable = st.stable;
  if (!st.stable) throw PreconditionError("gamma is not a stable quasi-factor");

  const std::size_t n = cs->n;
  const std::size_t nl = qp.lambda().graph().edge_count();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<EdgeActionMap> row;
    for (EdgeId f : cs->f[i]) row.push_back(st.maps[f]);
    out.rho.push_back(std::move(row));
  }
  for (int j = 0; j < cs->k; ++j) {
    EdgeMap m = identity_map(nl);
    for (std::size_t i = n; i-- > 0;) m = compose_maps(out.rho[i][static_cast<std::size_t>(j)].image, m);
    out.around.push_back(std::move(m));
  }

  const std::string a = cstar_name(qp.lambda(), "C*(Λ)");
  const std::string kk = std::to_string(cs->k);
  if (n == 1)
    out.headline = "C*(Ω) ≅ " + a + " ⋊_ρ Z^" + kk;
  else
    out.headline = "C*(Ω) ≅ (⊕_{i=0}^{" + std::to_string(n - 1) + "} " + a + ") ⋊_ρ Z^" + kk;

  const ColoredGraph& lg = qp.lambda().graph();
  const ColoredGraph& hg = qp.host().graph();
  for (int j = 0; j < cs->k; ++j) {
    std::string u = "U_" + std::to_string(j + 1) + " =";
    bool first = true;
    for (VertexId v = 0; v < lg.vertex_count(); ++v)
      for (std::size_t i = 0; i < n; ++i) {
        EdgeId h = qp.embedding().host_rhs_edge(v, cs->f[i][static_cast<std::size_t>(j)]);
        u += (first ? " " : " + ") + generator(hg.edge(h).name) + "^*";
        first = false;
      }
    out.unitaries.push_back(std::move(u));
  }
  return out;
}

struct Relation {
  std::string kind;  // CK1..CK4
  std::string text;
};

struct CKPresentation {
  std::vector<std::string> generators;
  std::vector<Relation> relations;
  std::vector<std::string> warnings;
};

// Cuntz-Krieger presentation of C*(g) as strings.  CK4 needs every vertex to
// receive an edge of every color; where that fails the relation is left out
// with a warning.
inline CKPresentation emit_ck_presentation(const KGraph& kg) {
  const ColoredGraph& g = kg.graph();
  CKPresentation out;
  for (VertexId v = 0; v < g.vertex_count(); ++v) out.generators.push_back(generator(g.vertex_name(v)));
  for (EdgeId e = 0; e < g.edge_count(); ++e) out.generators.push_back(generator(g.edge(e).name));

  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    const auto s = generator(g.vertex_name(v));
    out.relations.push_back({"CK1", s + " = " + s + "^* = " + s + "^2"});
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (VertexId w = v + 1; w < g.vertex_count(); ++w)
      out.relations.push_back({"CK1", generator(g.vertex_name(v)) + " " + generator(g.vertex_name(w)) + " = 0"});
  for (const Square& s : kg.squares().squares())
    out.relations.push_back({"CK2", generator(g.edge(s.a).name) + " " + generator(g.edge(s.b).name) + " = " +
                                        generator(g.edge(s.c).name) + " " + generator(g.edge(s.d).name)});
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto s = generator(g.edge(e).name);
    out.relations.push_back({"CK3", s + "^* " + s + " = " + generator(g.vertex_name(g.src(e)))});
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    for (Color c = 1; c <= g.rank(); ++c) {
      std::string rhs;
      for (EdgeId e : g.in_edges(v)) {
        if (g.color(e) != c) continue;
        const auto s = generator(g.edge(e).name);
        rhs += (rhs.empty() ? "" : " + ") + s + " " + s + "^*";
      }
      if (rhs.empty()) {
        out.warnings.push_back("not source-free; CK4 omitted at vertex " + g.vertex_name(v) + ", color " +
                               std::to_string(c));
        continue;
      }
      out.relations.push_back({"CK4", generator(g.vertex_name(v)) + " = " + rhs});
    }
  }
  return out;
}

}  // namespace kgraph
