#include <gtest/gtest.h>

#include "support.hpp"

using namespace kgraph;
using namespace kgraph::testing;

namespace {

// The bouquet host for one of the three rules, straight from its fixture.
RuleSet bouquet_host(int variant) {
  return build_instance(corpus::bouq(variant)).host;
}

}  // namespace

TEST(SquareTable, LookupAndEquality) {
  SquareTable t;
  t.add(0, 1, 2, 3);
  EXPECT_EQ(t.lookup(0, 1), std::make_pair(EdgeId{2}, EdgeId{3}));
  EXPECT_FALSE(t.lookup(2, 3));
  EXPECT_EQ(t.size(), 1u);
  SquareTable u;
  u.add({0, 1, 2, 3});
  EXPECT_TRUE(t == u);
}

TEST(ValidateRule, BouquetRulesOneAndTwoAreValid) {
  for (int v : {1, 2}) {
    auto r = bouquet_host(v);
    EXPECT_TRUE(validate_rule(r).valid) << v;
    EXPECT_TRUE(cube_condition_holds(r)) << v;
  }
}

TEST(ValidateRule, BouquetRuleThreeFailsWithHexagonWitness) {
  auto r = bouquet_host(3);
  auto v = validate_rule(r);
  ASSERT_FALSE(v.valid);
  EXPECT_FALSE(cube_condition_holds(r));
  const auto& g = r.graph;
  const auto& w = *v.witness;
  EXPECT_EQ(g.edge(w.path[0]).name, "(f1,x)");
  EXPECT_EQ(g.edge(w.path[1]).name, "(u,e)");
  EXPECT_EQ(g.edge(w.path[2]).name, "(u,g)");
  // (f1 e) g ~ g e f2 and f1 (e g) ~ g e f3.
  std::vector<std::string> a, b;
  for (EdgeId e : w.via_first) a.push_back(g.edge(e).name);
  for (EdgeId e : w.via_second) b.push_back(g.edge(e).name);
  EXPECT_EQ(a, (std::vector<std::string>{"(u,g)", "(u,e)", "(f2,x)"}));
  EXPECT_EQ(b, (std::vector<std::string>{"(u,g)", "(u,e)", "(f3,x)"}));
  EXPECT_THROW(KGraph{r}, PreconditionError);
}

TEST(ValidateRule, StructuralDefectsAreMalformed) {
  ColoredGraph g(2);
  g.add_vertex("v");
  g.add_edge("a", 0, 0, 1);
  g.add_edge("b", 0, 0, 2);
  g.add_edge("c", 0, 0, 2);
  RuleSet missing{g, {}};
  missing.squares.add(0, 1, 1, 0);
  EXPECT_THROW(validate_rule(missing), MalformedRule);  // no square for a c
  RuleSet twice{g, {}};
  twice.squares.add(0, 1, 1, 0);
  twice.squares.add(0, 2, 1, 0);
  EXPECT_THROW(validate_rule(twice), MalformedRule);  // b a used twice
  RuleSet colors{g, {}};
  colors.squares.add(0, 1, 2, 0);
  colors.squares.add(0, 2, 1, 0);
  EXPECT_TRUE(validate_rule(colors).valid);
  RuleSet wrong{g, {}};
  wrong.squares.add(0, 1, 0, 1);
  EXPECT_THROW(validate_rule(wrong), MalformedRule);
}

TEST(KGraph, NormalizeSortsColors) {
  KGraph k(bouquet_host(2));
  const auto& g = k.graph();
  // f1 e ~ e f2 at the edge level, read as host paths.
  Path p = path(g, {"(u,e)", "(f1,x)"});
  Path n = k.normalize(p);
  EXPECT_EQ(names(g, n), (std::vector<std::string>{"(f2,x)", "(u,e)"}));
  auto cs = n.colors(g);
  EXPECT_TRUE(std::is_sorted(cs.begin(), cs.end()));
  EXPECT_EQ(k.normalize(n), n);
}

TEST(KGraph, ClosureMatchesSwapSearch) {
  KGraph k(bouquet_host(2));
  const auto& g = k.graph();
  for (const Path& p : enumerate_paths(g, 3)) {
    auto closure = k.rewrite_closure(p);
    std::set<std::vector<EdgeId>> got;
    for (const Path& q : closure) got.insert(q.edges());
    EXPECT_EQ(got, swap_class(k.rule(), p.edges())) << to_string(g, p);
    EXPECT_EQ(closure.size(), multinomial(p.colors(g)));
  }
}

TEST(KGraph, FactorizeByDegree) {
  KGraph k(bouquet_host(2));
  const auto& g = k.graph();
  Path p = k.normalize(path(g, {"(u,g)", "(u,e)", "(f1,x)"}));
  // Front of degree (0, 1, 0): the blue part first, then the rest.
  auto [front, back] = k.factorize(p, {0, 1, 0});
  EXPECT_EQ(front.degree(g), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(back.degree(g), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(k.normalize(front.then_before(g, back)), p);
}

TEST(KGraph, MorphismCountOnBouquet) {
  // The product rule on a one-vertex 3-colored bouquet with 3, 1, 1 loops:
  // the morphisms of degree n are indexed by 3^{n_1}.
  KGraph k(bouquet_host(1));
  std::map<std::vector<int>, std::size_t> by_degree;
  for (const Path& m : k.morphisms(2)) by_degree[m.degree(k.graph())]++;
  EXPECT_EQ(by_degree[(std::vector<int>{0, 0, 0})], 1u);
  EXPECT_EQ(by_degree[(std::vector<int>{2, 0, 0})], 9u);
  EXPECT_EQ(by_degree[(std::vector<int>{1, 1, 0})], 3u);
  EXPECT_EQ(by_degree[(std::vector<int>{0, 1, 1})], 1u);
}

TEST(RestrictColors, KeepsOnlyTheBand) {
  auto r = bouquet_host(2);
  auto sub = restrict_colors(r, 2, 3);
  EXPECT_EQ(sub.rule.graph.rank(), 2);
  EXPECT_EQ(sub.rule.graph.edge_count(), 2u);
  EXPECT_EQ(sub.rule.squares.size(), 1u);
  EXPECT_TRUE(validate_rule(sub.rule).valid);
}

TEST(ProductRule, IsValidAndCommutes) {
  auto l = build_rule(*corpus::path_loops(4).lambda);
  auto g = build_rule(*corpus::path_loops(4).gamma);
  auto p = product_rule(KGraph(l), KGraph(g));
  EXPECT_TRUE(validate_rule(p).valid);
  EXPECT_TRUE(cube_condition_holds(p));
}
