// Randomized checks against independent oracles.  Seeds are fixed so a
// failure names a reproducible case.

#include <gtest/gtest.h>

#include "support.hpp"

using namespace kgraph;
using namespace kgraph::testing;

namespace {

constexpr int kCases = 40;

fuzz::Rng rng_for(int seed) { return fuzz::Rng(static_cast<std::uint64_t>(seed) * 7919u + 17u); }

}  // namespace

TEST(Property, ValidateAgreesWithHexagonSearch) {
  // Random square tables on random rank-3 skeletons, valid or not.
  int checked = 0, invalid = 0;
  for (int seed = 0; seed < 200; ++seed) {
    auto rng = rng_for(seed);
    auto l = fuzz::random_factor(rng, 1, 4);
    auto g = fuzz::random_rank2(rng, 6);
    auto skel = box_product(l, g).graph;
    auto t = fuzz::random_squares(rng, skel);
    if (!t) continue;
    RuleSet r{skel, *t};
    bool v = validate_rule(r).valid;
    EXPECT_EQ(v, cube_condition_holds(r)) << "seed " << seed;
    ++checked;
    invalid += !v;
  }
  EXPECT_GT(checked, 50);
  EXPECT_GT(invalid, 0);
}

TEST(Property, NormalFormsAndClosures) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto c = fuzz::random_box_case(rng);
    KGraph k(c.host);
    const auto& g = k.graph();
    for (const Path& p : enumerate_paths(g, 3)) {
      auto cls = swap_class(c.host, p.edges());
      ASSERT_EQ(cls.size(), multinomial(p.colors(g))) << "seed " << seed << " " << to_string(g, p);
      // The normal form is the member whose colors are sorted.
      std::vector<EdgeId> sorted;
      for (const auto& q : cls) {
        auto cs = Path::of(g, q).colors(g);
        if (std::is_sorted(cs.begin(), cs.end())) {
          ASSERT_TRUE(sorted.empty());
          sorted = q;
        }
      }
      EXPECT_EQ(k.normalize(p).edges(), sorted);
      for (const auto& q : cls) EXPECT_EQ(k.normalize(Path::of(g, q)), k.normalize(p));
    }
  }
}

TEST(Property, FactorizationIsUnique) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto c = fuzz::random_box_case(rng);
    KGraph k(c.host);
    const auto& g = k.graph();
    for (const Path& m : k.morphisms(3)) {
      if (m.empty()) continue;
      for (const auto& front : sub_degrees(m.degree(g))) {
        auto [mu, nu] = k.factorize(m, front);
        EXPECT_EQ(mu.degree(g), front);
        EXPECT_EQ(k.compose(mu, nu), m);
      }
    }
  }
}

TEST(Property, MatchedPairLaws) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto qp = fuzz::quasi_product(fuzz::random_box_case(rng));
    auto laws = verify_mp_axioms(qp.pair(), 3);
    for (const auto& l : laws.laws)
      EXPECT_EQ(l.failed, 0u) << "seed " << seed << " " << l.law << ": "
                              << (l.examples.empty() ? "" : l.examples[0]);
  }
}

TEST(Property, EdgeActionsReadOffSquares) {
  // left/right agree with a direct lookup of the mixed host square.
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto c = fuzz::random_box_case(rng);
    auto qp = fuzz::quasi_product(c);
    const auto& lg = qp.lambda().graph();
    const auto& gg = qp.gamma().graph();
    const auto& m = c.embedding;
    for (EdgeId e = 0; e < lg.edge_count(); ++e)
      for (EdgeId q = 0; q < gg.edge_count(); ++q) {
        auto v = c.host.squares.lookup(m.host_lhs_edge(e, gg.dst(q)), m.host_rhs_edge(lg.src(e), q));
        ASSERT_TRUE(v);
        EXPECT_EQ(m.edge_origin[v->first].factor_edge, qp.left(e, q));
        EXPECT_EQ(m.edge_origin[v->second].factor_edge, qp.right(e, q));
        EXPECT_EQ(gg.src(qp.left(e, q)), gg.src(q));
        EXPECT_EQ(lg.dst(qp.right(e, q)), lg.dst(e));
      }
  }
}

TEST(Property, DecisionsAgreeWithBruteForce) {
  int yes = 0, no = 0;
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto qp = fuzz::quasi_product(fuzz::random_box_case(rng, 6, 3));
    if (!is_connected(qp.lambda().graph()) || !is_connected(qp.gamma().graph())) continue;
    auto d = decide_product(qp);
    KGraph prod = product_kgraph(qp.lambda(), qp.gamma());
    ASSERT_NE(d.answer, Answer::unknown) << "seed " << seed;
    auto oracle = brute_force_iso(qp.host(), prod);
    EXPECT_EQ(oracle.iso.has_value(), d.answer == Answer::yes) << "seed " << seed;
    if (d.answer == Answer::yes) {
      EXPECT_TRUE(is_isomorphism(qp.host(), prod, *d.iso));
      ++yes;
    } else {
      ++no;
    }
  }
  EXPECT_GT(yes, 0);
}

TEST(Property, StabilizationIsVerified) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto qp = fuzz::quasi_product(fuzz::random_box_case(rng));
    for (Side s : {Side::gamma, Side::lambda}) {
      if (!is_connected(acting_factor(qp, s).graph())) continue;
      if (check_relaxed_stable(qp, s).verdict == Verdict::certified_no) continue;
      auto r = stabilize(qp, s);
      EXPECT_TRUE(r.verified()) << "seed " << seed << " " << side_name(s);
      EXPECT_TRUE(cube_condition_holds(r.stabilized)) << "seed " << seed;
      // theta fixes vertices and colors.
      const auto& hg = qp.host().graph();
      for (EdgeId e = 0; e < hg.edge_count(); ++e) {
        EXPECT_EQ(hg.src(r.theta[e]), hg.src(e));
        EXPECT_EQ(hg.dst(r.theta[e]), hg.dst(e));
        EXPECT_EQ(hg.color(r.theta[e]), hg.color(e));
      }
    }
  }
}

TEST(Property, DocumentRoundTripOfRandomInstances) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto c = fuzz::random_box_case(rng);
    auto lambda = fuzz::layer_rule(c, true, 0);
    auto gamma = fuzz::layer_rule(c, false, 0);
    auto doc = instance_document("random", lambda, gamma, c.host, c.embedding);
    const std::string text = serialize_document(doc);
    EXPECT_EQ(serialize_document(parse_document(text)), text);
    auto b = build_instance(parse_document(text));
    // Same squares up to the host edge numbering, compared by name.
    auto named = [](const RuleSet& r) {
      std::set<std::array<std::string, 4>> out;
      for (const Square& s : r.squares.squares())
        out.insert({r.graph.edge(s.a).name, r.graph.edge(s.b).name, r.graph.edge(s.c).name, r.graph.edge(s.d).name});
      return out;
    };
    EXPECT_EQ(named(b.host), named(c.host)) << "seed " << seed;
  }
}

TEST(Property, GeneratorIsDeterministic) {
  auto a = fuzz::Rng(42), b = fuzz::Rng(42);
  for (int i = 0; i < 10; ++i) {
    auto x = fuzz::random_box_case(a);
    auto y = fuzz::random_box_case(b);
    EXPECT_TRUE(x.host.graph == y.host.graph);
    EXPECT_TRUE(x.host.squares == y.host.squares);
  }
}

TEST(Property, PolytreeFactorsGiveProducts) {
  for (int seed = 0; seed < kCases; ++seed) {
    auto rng = rng_for(seed);
    auto qp = fuzz::quasi_product(fuzz::random_polytree_case(rng, 5));
    auto s = apply_polytree_shortcuts(qp);
    EXPECT_TRUE(s.consistent) << "seed " << seed;
  }
}
