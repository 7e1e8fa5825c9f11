#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/actions.hpp"
#include "kgraph/analysis/iso.hpp"
#include "kgraph/error.hpp"
#include "kgraph/rules.hpp"
#include "kgraph/skeleton.hpp"

namespace kgraph {

// Which quasi-factor a stability question is about.  Side::gamma asks
// whether the lambda edges act trivially on gamma (p |> = id); Side::lambda
// asks whether the gamma edges act trivially on lambda (q <| = id).
enum class Side { gamma, lambda };

inline const char* side_name(Side s) { return s == Side::gamma ? "gamma" : "lambda"; }

// A host k-graph identified with the box product of two factor skeletons,
// together with its layer rules and edge-level actions.
//
// lambda_layers[w] is the rule the host induces on the copy of the lambda
// skeleton at gamma vertex w; gamma_layers[x] likewise at lambda vertex x.
// For lambda edge e and gamma edge g the mixed square
//   (e, r(g)) . (s(e), g) ~ (r(e), e |> g) . (g <| e, s(g))
// fills left(e, g) = e |> g and right(e, g) = g <| e.
class QuasiProductInstance {
 public:
  QuasiProductInstance(KGraph host, KGraph lambda, KGraph gamma, BoxEmbedding embedding)
      : host_(std::move(host)),
        lambda_(std::move(lambda)),
        gamma_(std::move(gamma)),
        embedding_(std::move(embedding)),
        pair_(host_, ColorSplit{lambda_.rank(), gamma_.rank()},
              FactorView{lambda_.graph(), gamma_.graph(), embedding_}) {
    const ColoredGraph& hg = host_.graph();
    const ColoredGraph& lg = lambda_.graph();
    const ColoredGraph& gg = gamma_.graph();
    std::vector<SquareTable> lt(gg.vertex_count()), gt(lg.vertex_count());
    for (const Square& s : host_.squares().squares()) {
      const auto& oa = embedding_.edge_origin[s.a];
      const auto& ob = embedding_.edge_origin[s.b];
      const auto& oc = embedding_.edge_origin[s.c];
      const auto& od = embedding_.edge_origin[s.d];
      if (oa.from_lhs && ob.from_lhs)
        lt[oa.other].add(oa.factor_edge, ob.factor_edge, oc.factor_edge, od.factor_edge);
      else if (!oa.from_lhs && !ob.from_lhs)
        gt[oa.other].add(oa.factor_edge, ob.factor_edge, oc.factor_edge, od.factor_edge);
    }
    for (auto& t : lt) lambda_layers_.emplace_back(RuleSet{lg, std::move(t)});
    for (auto& t : gt) gamma_layers_.emplace_back(RuleSet{gg, std::move(t)});

    left_.assign(lg.edge_count() * gg.edge_count(), 0);
    right_.assign(lg.edge_count() * gg.edge_count(), 0);
    for (EdgeId e = 0; e < lg.edge_count(); ++e) {
      for (EdgeId g = 0; g < gg.edge_count(); ++g) {
        EdgeId a = embedding_.host_lhs_edge(e, gg.dst(g));
        EdgeId b = embedding_.host_rhs_edge(lg.src(e), g);
        auto v = host_.swap(a, b);
        if (!v) throw Error("mixed square missing for " + hg.edge(a).name + " " + hg.edge(b).name);
        left_[e * gg.edge_count() + g] = embedding_.edge_origin[v->first].factor_edge;
        right_[e * gg.edge_count() + g] = embedding_.edge_origin[v->second].factor_edge;
      }
    }
  }

  const KGraph& host() const { return host_; }
  const KGraph& lambda() const { return lambda_; }
  const KGraph& gamma() const { return gamma_; }
  const BoxEmbedding& embedding() const { return embedding_; }
  const MatchedPair& pair() const { return pair_; }
  const std::vector<KGraph>& lambda_layers() const { return lambda_layers_; }
  const std::vector<KGraph>& gamma_layers() const { return gamma_layers_; }

  EdgeId left(EdgeId e, EdgeId g) const { return left_[e * gamma_.graph().edge_count() + g]; }
  EdgeId right(EdgeId e, EdgeId g) const { return right_[e * gamma_.graph().edge_count() + g]; }

  // Host square keyed by (e, r(g)) . (s(e), g).
  Square mixed_square(EdgeId e, EdgeId g) const {
    const ColoredGraph& lg = lambda_.graph();
    const ColoredGraph& gg = gamma_.graph();
    return {embedding_.host_lhs_edge(e, gg.dst(g)), embedding_.host_rhs_edge(lg.src(e), g),
            embedding_.host_rhs_edge(lg.dst(e), left(e, g)),
            embedding_.host_lhs_edge(right(e, g), gg.src(g))};
  }

  // Witnesses of the layer conditions: lambda_root is a gamma vertex w
  // with lambda_layers[w] isomorphic to lambda, gamma_root a lambda vertex
  // x with gamma_layers[x] isomorphic to gamma.
  VertexId lambda_root = 0;
  VertexId gamma_root = 0;
  KGraphIso lambda_iso;  // lambda_layers[lambda_root] -> lambda
  KGraphIso gamma_iso;   // gamma_layers[gamma_root] -> gamma

 private:
  KGraph host_;
  KGraph lambda_;
  KGraph gamma_;
  BoxEmbedding embedding_;
  MatchedPair pair_;
  std::vector<KGraph> lambda_layers_;
  std::vector<KGraph> gamma_layers_;
  std::vector<EdgeId> left_, right_;
};

struct QuasiProductOptions {
  std::optional<VertexId> gamma_root;   // preferred lambda vertex x0
  std::optional<VertexId> lambda_root;  // preferred gamma vertex w0
  std::optional<BoxEmbedding> embedding;
  std::size_t budget = Budget::kDefault;
};

struct QuasiProductVerdict {
  std::optional<QuasiProductInstance> instance;
  int failed_condition = 0;  // 1 skeleton, 2 lambda layer, 3 gamma layer
  std::string reason;
};

// Decides whether `host` is a quasi-product of lambda and gamma: its
// skeleton is the box product, some lambda layer is isomorphic to lambda and
// some gamma layer to gamma.  Layers are tried lowest id first, a preferred
// root first of all.
inline QuasiProductVerdict verify_quasi_product(const KGraph& host, const KGraph& lambda,
                                                const KGraph& gamma,
                                                const QuasiProductOptions& opt = {}) {
  Budget budget(opt.budget);
  QuasiProductVerdict out;
  std::optional<BoxEmbedding> emb = opt.embedding;
  if (!emb) emb = match_box_skeleton(host.graph(), lambda.graph(), gamma.graph(), &budget);
  if (!emb) {
    out.failed_condition = 1;
    out.reason = "host skeleton is not the box product of the factor skeletons";
    return out;
  }
  QuasiProductInstance qp(host, lambda, gamma, *emb);

  auto search = [&](const std::vector<KGraph>& layers, const KGraph& target,
                    std::optional<VertexId> preferred, VertexId& root, KGraphIso& iso) {
    std::vector<VertexId> order;
    if (preferred) {
      if (*preferred >= layers.size()) throw PreconditionError("declared root is not a vertex");
      order.push_back(*preferred);
    }
    for (VertexId v = 0; v < layers.size(); ++v)
      if (!preferred || v != *preferred) order.push_back(v);
    for (VertexId v : order) {
      auto r = brute_force_iso(layers[v], target, budget);
      if (r.iso) {
        root = v;
        iso = *r.iso;
        return true;
      }
      if (preferred && v == *preferred) return false;  // a declared root must qualify
    }
    return false;
  };
  if (!search(qp.lambda_layers(), lambda, opt.lambda_root, qp.lambda_root, qp.lambda_iso)) {
    out.failed_condition = 2;
    out.reason = opt.lambda_root ? "declared lambda layer is not isomorphic to lambda"
                                 : "no lambda layer is isomorphic to lambda";
    return out;
  }
  if (!search(qp.gamma_layers(), gamma, opt.gamma_root, qp.gamma_root, qp.gamma_iso)) {
    out.failed_condition = 3;
    out.reason = opt.gamma_root ? "declared gamma layer is not isomorphic to gamma"
                                : "no gamma layer is isomorphic to gamma";
    return out;
  }
  out.instance = std::move(qp);
  return out;
}

}  // namespace kgraph
