// Acceptance criteria 1-10.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace kgraph;
using namespace kgraph::testing;

namespace {

// Collects the first few mismatches of a criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
    if (!ok) ++count;
  }
  bool passed() const { return count == 0; }
  std::size_t count = 0;
};

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

std::vector<std::string> names_of(const ColoredGraph& g, const std::vector<EdgeId>& es) {
  std::vector<std::string> out;
  for (EdgeId e : es) out.push_back(g.edge(e).name);
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// 1. Bouquet triptych.
void bouquet(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  for (int v : {1, 2}) c.expect(validate_rule(build_instance(corpus::bouq(v)).host).valid, "rule " + std::to_string(v) + " rejected");
  auto r3 = build_instance(corpus::bouq(3)).host;
  auto v3 = validate_rule(r3);
  c.expect(!v3.valid, "rule 3 accepted");
  if (v3.witness) {
    const auto& g = r3.graph;
    const auto& w = *v3.witness;
    c.expect(join(names_of(g, {w.path.begin(), w.path.end()})) == "(f1,x) (u,e) (u,g)",
             "witness path " + join(names_of(g, {w.path.begin(), w.path.end()})));
    // Both results read red, blue, black along the path and differ in the
    // black edge.
    for (const auto* side : {&w.via_first, &w.via_second}) {
      std::vector<Color> cs;
      for (EdgeId e : *side) cs.push_back(g.color(e));
      c.expect(cs == std::vector<Color>{3, 2, 1}, "witness color order");
    }
    c.expect(g.edge(w.via_first.back()).name == "(f2,x)", "first result ends in " + g.edge(w.via_first.back()).name);
    c.expect(g.edge(w.via_second.back()).name == "(f3,x)", "second result ends in " + g.edge(w.via_second.back()).name);
  }
  auto qp = fixture_qp("bouq_sim2");
  const auto& lg = qp.lambda().graph();
  const auto& gg = qp.gamma().graph();
  EdgeId e = edge(gg, "e"), g = edge(gg, "g");
  c.expect(qp.right(edge(lg, "f1"), e) == edge(lg, "f2"), "f1 <| e");
  c.expect(qp.right(edge(lg, "f3"), e) == edge(lg, "f3"), "f3 <| e");
  for (const char* f : {"f1", "f2", "f3"}) {
    c.expect(qp.left(edge(lg, f), e) == e, std::string(f) + " |> e");
    c.expect(qp.left(edge(lg, f), g) == g, std::string(f) + " |> g");
  }
  c.expect(seconds_since(t0) < 1.0, "runtime over 1 s");
}

// 2. Non-composition witness.
void non_composition(Check& c) {
  auto qp = fixture_qp("rho_non_comp");
  const auto& lg = qp.lambda().graph();
  const auto& gg = qp.gamma().graph();
  auto rep = check_action_composition(qp.pair(), 4);
  const CompositionFailure* hit = nullptr;
  for (const auto& f : rep.failures)
    if (f.right_action && to_string(gg, f.acting) == "b" && to_string(lg, f.first) == "f" &&
        to_string(lg, f.second) == "h")
      hit = &f;
  c.expect(hit != nullptr, "no failure for b acting on f h");
  if (hit) {
    c.expect(to_string(lg, hit->combined) == "f e", "b <| (f h) = " + to_string(lg, hit->combined));
    c.expect(to_string(lg, hit->piecewise) == "g e", "b <| (f) b <| (h) = " + to_string(lg, hit->piecewise));
  }
}

// 3. Non-isomorphism witness.
void non_isomorphism(Check& c) {
  auto qp = fixture_qp("rho_non_isom");
  const auto& lg = qp.lambda().graph();
  const auto& gg = qp.gamma().graph();
  auto st = check_stable(qp, Side::gamma);
  const auto& b = st.maps[edge(gg, "b")];
  c.expect(!b.injective, "b <| injective");
  if (b.collision) {
    auto [x, y, z] = *b.collision;
    c.expect(lg.edge(x).name == "f" && lg.edge(y).name == "g" && lg.edge(z).name == "g",
             "collision " + lg.edge(x).name + "," + lg.edge(y).name + " -> " + lg.edge(z).name);
  } else {
    c.expect(false, "no collision reported");
  }
  auto rel = check_relaxed_stable(qp, Side::gamma);
  for (EdgeId e = 0; e < lg.edge_count(); ++e) c.expect(rel.bijective[e], lg.edge(e).name + " |> not bijective");
  Path q = qp.pair().act_left(path(lg, {"e", "f", "h"}), path(gg, {"a", "b", "d"}));
  c.expect(to_string(gg, q) == "a c d", "(e f h) |> (a b d) = " + to_string(gg, q));
}

// 4. Product decision on the undirected counterexample.
void product_decision(Check& c) {
  {
    auto t0 = std::chrono::steady_clock::now();
    auto qp = fixture_qp("counter_omega1");
    auto d = decide_product(qp);
    c.expect(d.answer == Answer::no, std::string("omega1 answer ") + answer_name(d.answer));
    const auto& side = d.obstruction_side == Side::lambda ? d.lambda_side : d.gamma_side;
    c.expect(side && side->holonomies.size() == 1 && side->obstruction && !side->holonomies[0].identity,
             "omega1 certificate is not a single nontrivial fundamental-cycle holonomy");
    auto oracle = brute_force_iso(qp.host(), product_kgraph(qp.lambda(), qp.gamma()));
    c.expect(!oracle.iso, "oracle found an isomorphism for omega1");
    c.expect(seconds_since(t0) < 5.0, "omega1 runtime over 5 s");
  }
  {
    auto t0 = std::chrono::steady_clock::now();
    auto qp = fixture_qp("counter_omega2");
    auto d = decide_product(qp);
    c.expect(d.answer == Answer::yes, std::string("omega2 answer ") + answer_name(d.answer));
    KGraph prod = product_kgraph(qp.lambda(), qp.gamma());
    const auto& hg = qp.host().graph();
    const auto& pg = prod.graph();
    // phi from the example: f and g exchanged at u, v, t, fixed at w.
    KGraphIso phi = identity_iso(hg);
    for (VertexId v = 0; v < hg.vertex_count(); ++v) phi.vertex[v] = vertex(pg, hg.vertex_name(v));
    for (EdgeId e = 0; e < hg.edge_count(); ++e) {
      std::string n = hg.edge(e).name;
      for (const char* x : {"u", "v", "t"}) {
        if (n == "(" + std::string(x) + ",f)") n = "(" + std::string(x) + ",g)";
        else if (n == "(" + std::string(x) + ",g)") n = "(" + std::string(x) + ",f)";
      }
      phi.edge[e] = edge(pg, n);
    }
    c.expect(is_isomorphism(qp.host(), prod, phi), "phi is not an isomorphism");
    if (d.iso) {
      c.expect(is_isomorphism(qp.host(), prod, *d.iso), "returned iso fails verification");
      // iso o phi^-1 must be an automorphism of the product.
      KGraphIso alpha = identity_iso(pg);
      for (VertexId v = 0; v < hg.vertex_count(); ++v) alpha.vertex[phi.vertex[v]] = d.iso->vertex[v];
      for (EdgeId e = 0; e < hg.edge_count(); ++e) alpha.edge[phi.edge[e]] = d.iso->edge[e];
      c.expect(is_isomorphism(prod, prod, alpha), "iso differs from phi by a non-automorphism");
    }
    auto oracle = brute_force_iso(qp.host(), prod);
    c.expect(oracle.iso.has_value(), "oracle found no isomorphism for omega2");
    c.expect(seconds_since(t0) < 5.0, "omega2 runtime over 5 s");
  }
}

// 5. Stabilization of the truncated path example.
void stabilization(Check& c) {
  auto qp = fixture_qp("path_loops_trunc8");
  auto r = stabilize(qp, Side::gamma);
  const auto& hg = qp.host().graph();
  for (int j = 0; j < 8; ++j) {
    const std::string w = "w" + std::to_string(j);
    const bool flip = j % 4 == 0 || j % 4 == 1;
    const EdgeId f = edge(hg, "(" + w + ",f)"), g = edge(hg, "(" + w + ",g)");
    c.expect(r.theta[f] == (flip ? g : f) && r.theta[g] == (flip ? f : g), "theta at " + w);
  }
  for (const Edge& e : hg.edges())
    if (e.color == 1) c.expect(r.theta[edge(hg, e.name)] == edge(hg, e.name), "theta moves " + e.name);
  c.expect(validate_rule(r.stabilized).valid, "stabilized rule invalid");
  QuasiProductInstance q2(KGraph(r.stabilized), qp.lambda(), qp.gamma(), qp.embedding());
  c.expect(check_stable(q2, Side::gamma).stable, "stabilized host not edge-level stable");
  c.expect(r.verified(), "stabilization not verified");
}

// 6. Crossed-product report.
void crossed_product(Check& c) {
  auto qp = fixture_qp("bouq_sim2");
  auto r = crossed_product_report(qp);
  const auto& lg = qp.lambda().graph();
  c.expect(r.cycle.k == 2, "group rank " + std::to_string(r.cycle.k));
  for (int j = 0; j < r.cycle.k; ++j) {
    const auto& m = r.rho[0][static_cast<std::size_t>(j)];
    c.expect(m.image[edge(lg, "f1")] == edge(lg, "f2") && m.image[edge(lg, "f2")] == edge(lg, "f1") &&
                 m.image[edge(lg, "f3")] == edge(lg, "f3"),
             "rho for generator " + std::to_string(j + 1));
  }
  c.expect(r.headline.find("Z^2") != std::string::npos, "headline " + r.headline);
  auto q1 = fixture_qp("bouq_sim1");
  auto r1 = crossed_product_report(q1);
  for (const auto& m : r1.rho[0]) c.expect(m.image == identity_map(lg.edge_count()), "rule 1 rho not identity");
  c.expect(decide_product(q1).answer == Answer::yes, "rule 1 is not a product");
  auto t = report::tensor(q1);
  c.expect(t["headline"] == "C*(Ω) ≅ O_3 ⊗ C(T^2)", "tensor headline " + t["headline"].get<std::string>());
}

constexpr int kFuzzSeed = 20240611;
constexpr int kFuzzCount = 120;

std::vector<fuzz::BoxCase> fuzz_corpus() {
  fuzz::Rng rng(kFuzzSeed);
  std::vector<fuzz::BoxCase> out;
  for (int i = 0; i < kFuzzCount; ++i) out.push_back(fuzz::random_box_case(rng, 8, 3));
  return out;
}

// 7. Normal forms against the rewrite closure.
void oracle_equivalence(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t paths = 0;
  for (const auto& bc : fuzz_corpus()) {
    c.expect(bc.host.graph.edge_count() <= 8 && bc.host.graph.rank() <= 3, "case too large");
    KGraph k(bc.host);
    const auto& g = k.graph();
    for (const Path& p : enumerate_paths(g, 4)) {
      ++paths;
      auto closure = k.rewrite_closure(p);
      auto oracle = swap_class(bc.host, p.edges());
      std::set<std::vector<EdgeId>> got;
      std::set<std::vector<Color>> orders;
      const Path n = k.normalize(p);
      bool ok = true;
      for (const Path& q : closure) {
        got.insert(q.edges());
        orders.insert(q.colors(g));
        ok = ok && k.normalize(q) == n;
      }
      ok = ok && got == oracle && orders.size() == closure.size() && closure.size() == multinomial(p.colors(g));
      auto cs = n.colors(g);
      ok = ok && std::is_sorted(cs.begin(), cs.end()) && oracle.count(n.edges());
      c.expect(ok, "path " + to_string(g, p));
    }
  }
  c.expect(paths > 1000, "only " + std::to_string(paths) + " paths checked");
  c.expect(seconds_since(t0) < 60.0, "runtime over 60 s");
}

// 8. Matched-pair identities on the same corpus.
void matched_pair(Check& c) {
  std::size_t checked = 0;
  for (const auto& bc : fuzz_corpus()) {
    auto qp = fuzz::quasi_product(bc);
    auto laws = verify_mp_axioms(qp.pair(), 4);
    for (const auto& l : laws.laws) {
      checked += l.checked;
      c.expect(l.failed == 0, l.law + ": " + (l.examples.empty() ? "" : l.examples[0]));
    }
  }
  c.expect(checked > 0, "nothing checked");
}

// 9. Polytree factors force a product.
void polytree(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  fuzz::Rng rng(kFuzzSeed + 1);
  for (int i = 0; i < kFuzzCount; ++i) {
    auto bc = fuzz::random_polytree_case(rng, 6);
    c.expect(is_polytree(bc.gamma_skeleton).polytree && bc.gamma_skeleton.vertex_count() <= 6, "gamma not a small polytree");
    auto qp = fuzz::quasi_product(bc);
    auto d = decide_product(qp);
    c.expect(d.answer == Answer::yes && d.iso && is_isomorphism(qp.host(), product_kgraph(qp.lambda(), qp.gamma()), *d.iso),
             "case " + std::to_string(i) + " answer " + answer_name(d.answer));
  }
  c.expect(seconds_since(t0) < 120.0, "runtime over 120 s");
}

// 10. Cycle detection and single-edge reroutes.
void cycles(Check& c) {
  for (int n = 1; n <= 5; ++n)
    for (int k = 1; k <= 3; ++k) {
      auto spec = corpus::cycle_graph(n, k);
      auto cs = detect_cycle_factor(KGraph(build_rule(spec)));
      c.expect(cs && cs->n == static_cast<std::size_t>(n) && cs->k == k,
               "C_{" + std::to_string(n) + "," + std::to_string(k) + "} not detected");
      const auto g = build_skeleton(spec);
      fuzz::Rng rng(static_cast<std::uint64_t>(n * 10 + k));
      for (EdgeId e = 0; e < g.edge_count(); ++e)
        for (VertexId s = 0; s < g.vertex_count(); ++s)
          for (VertexId r = 0; r < g.vertex_count(); ++r) {
            if (s == g.src(e) && r == g.dst(e)) continue;
            ColoredGraph h(g.rank());
            for (const auto& v : g.vertex_names()) h.add_vertex(v);
            for (EdgeId x = 0; x < g.edge_count(); ++x)
              h.add_edge(g.edge(x).name, x == e ? s : g.src(x), x == e ? r : g.dst(x), g.color(x));
            const std::string what = "C_{" + std::to_string(n) + "," + std::to_string(k) + "} with " +
                                     g.edge(e).name + " rerouted";
            c.expect(!detect_cycle_skeleton(h), what + ": skeleton accepted");
            // Where the perturbed skeleton still carries a rule, the full
            // detector must reject that k-graph too.
            if (auto rule = fuzz::random_valid_rule(rng, h, 5))
              c.expect(!detect_cycle_factor(KGraph(*rule)), what + ": k-graph accepted");
          }
    }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"bouquet rules: validation, witness and edge actions", bouquet},
      {"non-composition witness", non_composition},
      {"non-isomorphism witness", non_isomorphism},
      {"product decision on the undirected counterexample", product_decision},
      {"stabilization of the truncated path", stabilization},
      {"crossed-product report", crossed_product},
      {"normal form vs rewrite closure on fuzzed rules", oracle_equivalence},
      {"matched-pair identities on fuzzed rules", matched_pair},
      {"polytree factors give products", polytree},
      {"cycle detection", cycles},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = c.passed() && error.empty();
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " " << i + 1 << ": " << criteria[i].first;
    line.precision(2);
    line << std::fixed << " (" << seconds_since(t0) << " s)";
    if (!error.empty()) line << " exception: " << error;
    if (!c.passed()) line << " [" << c.count << " mismatches: " << join(c.failures) << "]";
    std::cout << line.str() << "\n";
  }
  return failed == 0 ? 0 : 1;
}
