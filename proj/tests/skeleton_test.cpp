#include <gtest/gtest.h>

#include "support.hpp"

using namespace kgraph;
using namespace kgraph::testing;

namespace {

ColoredGraph two_loops() {
  ColoredGraph g(1);
  g.add_vertex("v");
  g.add_edge("f", 0, 0, 1);
  g.add_edge("g", 0, 0, 1);
  return g;
}

ColoredGraph arrow() {
  ColoredGraph g(1);
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge("x", 0, 1, 1);
  return g;
}

}  // namespace

TEST(ColoredGraph, RejectsDuplicatesAndBadColors) {
  ColoredGraph g(2);
  g.add_vertex("v");
  EXPECT_THROW(g.add_vertex("v"), Error);
  g.add_edge("e", 0, 0, 1);
  EXPECT_THROW(g.add_edge("e", 0, 0, 2), Error);
  EXPECT_THROW(g.add_edge("z", 0, 0, 3), Error);
  EXPECT_THROW(g.add_edge("z", 0, 0, 0), Error);
  EXPECT_THROW(g.add_edge("z", 0, 7, 1), Error);
}

TEST(ColoredGraph, IncidenceLists) {
  auto g = arrow();
  EXPECT_EQ(g.out_edges(0), std::vector<EdgeId>{0});
  EXPECT_TRUE(g.in_edges(0).empty());
  EXPECT_EQ(g.in_edges(1), std::vector<EdgeId>{0});
  EXPECT_EQ(g.multiplicity(0, 1, 1), 1u);
  EXPECT_EQ(g.find_vertex("b"), VertexId{1});
  EXPECT_FALSE(g.find_edge("nope"));
}

TEST(Path, ComposabilityIsChecked) {
  ColoredGraph g(1);
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_vertex("c");
  g.add_edge("x", 0, 1, 1);  // a -> b
  g.add_edge("y", 1, 2, 1);  // b -> c
  // y x runs a -> c; x y is not composable.
  Path p = Path::of(g, {1, 0});
  EXPECT_EQ(p.source(), 0u);
  EXPECT_EQ(p.range(), 2u);
  EXPECT_THROW(Path::of(g, {0, 1}), Error);
  EXPECT_EQ(to_string(g, p), "y x");
  EXPECT_EQ(to_string(g, Path::at(1)), "id[b]");
}

TEST(Path, EnumerationCountsWalks) {
  // On a one-vertex bouquet with n loops there are n^L paths of length L.
  auto g = two_loops();
  auto ps = enumerate_paths(g, 3);
  EXPECT_EQ(ps.size(), 2u + 4u + 8u);
  for (std::size_t i = 1; i < ps.size(); ++i) EXPECT_LE(ps[i - 1].length(), ps[i].length());
}

TEST(BoxProduct, CountsAndEndpoints) {
  auto l = arrow();
  auto r = two_loops();
  auto bp = box_product(l, r);
  const auto& h = bp.graph;
  EXPECT_EQ(h.rank(), 2);
  EXPECT_EQ(h.vertex_count(), l.vertex_count() * r.vertex_count());
  EXPECT_EQ(h.edge_count(), l.edge_count() * r.vertex_count() + l.vertex_count() * r.edge_count());
  EdgeId xv = edge(h, "(x,v)");
  EXPECT_EQ(h.vertex_name(h.src(xv)), "(a,v)");
  EXPECT_EQ(h.vertex_name(h.dst(xv)), "(b,v)");
  EXPECT_EQ(h.color(xv), 1);
  EdgeId bf = edge(h, "(b,f)");
  EXPECT_EQ(h.color(bf), 2);
  EXPECT_EQ(h.src(bf), h.dst(bf));
  const auto& m = bp.embedding;
  for (EdgeId e = 0; e < h.edge_count(); ++e) {
    const auto& o = m.edge_origin[e];
    EdgeId back = o.from_lhs ? m.host_lhs_edge(o.factor_edge, o.other) : m.host_rhs_edge(o.other, o.factor_edge);
    EXPECT_EQ(back, e);
  }
}

TEST(BoxProduct, MatchingRecoversRenamedProduct) {
  auto l = arrow();
  auto r = two_loops();
  auto host = fuzz::renamed(box_product(l, r).graph);
  auto emb = match_box_skeleton(host, l, r);
  ASSERT_TRUE(emb);
  for (EdgeId e = 0; e < host.edge_count(); ++e) {
    const auto& o = emb->edge_origin[e];
    auto [x, w] = emb->vertex_origin[host.dst(e)];
    if (o.from_lhs) {
      EXPECT_EQ(x, l.dst(o.factor_edge));
      EXPECT_EQ(w, o.other);
    } else {
      EXPECT_EQ(x, o.other);
      EXPECT_EQ(w, r.dst(o.factor_edge));
    }
  }
  // One edge too many.
  host.add_edge("extra", 0, 0, 1);
  EXPECT_FALSE(match_box_skeleton(host, l, r));
}

TEST(CycleBasis, FundamentalCyclesOfSquare) {
  // Undirected 4-cycle t -> v <- u -> w <- t.
  ColoredGraph g(1);
  for (auto n : {"t", "u", "v", "w"}) g.add_vertex(n);
  g.add_edge("vt", 0, 2, 1);
  g.add_edge("vu", 1, 2, 1);
  g.add_edge("wt", 0, 3, 1);
  g.add_edge("wu", 1, 3, 1);
  auto f = cycle_basis(g, 3);
  EXPECT_EQ(f.roots, std::vector<VertexId>{3});
  ASSERT_EQ(f.cycles.size(), g.edge_count() - (g.vertex_count() - 1));
  const auto& c = f.cycles[0].closed;
  EXPECT_EQ(c.steps.size(), 4u);
  EXPECT_EQ(bi_end(g, c), c.start);
  EXPECT_TRUE(is_connected(g));
}

TEST(Polytree, ForestsAndWitnesses) {
  EXPECT_TRUE(is_polytree(arrow()).polytree);
  auto loops = is_polytree(two_loops());
  EXPECT_FALSE(loops.polytree);
  ASSERT_TRUE(loops.witness);
  ColoredGraph g(1);
  g.add_vertex("a");
  g.add_vertex("b");
  g.add_edge("x", 0, 1, 1);
  g.add_edge("y", 1, 0, 1);  // antiparallel pair
  EXPECT_FALSE(is_polytree(g).polytree);
  ColoredGraph two(2);
  two.add_vertex("a");
  EXPECT_THROW(is_polytree(two), PreconditionError);
}
