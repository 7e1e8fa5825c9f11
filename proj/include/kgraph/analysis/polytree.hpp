#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kgraph/analysis/stabilize.hpp"

namespace kgraph {

struct ShortcutDecision {
  std::string reason;  // which structure guarantees a product
  std::optional<KTreeCertificate> ktree;
  ProductDecision decision;
  // True when the guarantee and the computed answer agree.  A disagreement
  // means a bug or a corrupted input, never a counterexample.
  bool consistent = false;
};

// When one factor is a polytree (or gamma a verified product of candidate
// polytrees) the host must be a product.  The isomorphism is still built
// and checked by decide_product.
inline ShortcutDecision apply_polytree_shortcuts(const QuasiProductInstance& qp,
                                                 const std::vector<ColoredGraph>& gamma_factors = {},
                                                 std::size_t bound = 4, std::size_t budget = Budget::kDefault) {
  ShortcutDecision out;
  auto polytree = [](const KGraph& g) { return g.rank() == 1 && is_polytree(g.graph()).polytree; };
  if (polytree(qp.gamma())) {
    out.reason = "gamma is a polytree";
  } else if (polytree(qp.lambda())) {
    out.reason = "lambda is a polytree";
  } else if (!gamma_factors.empty()) {
    auto cert = verify_ktree(qp.gamma(), gamma_factors, budget);
    out.ktree = cert;
    if (!cert.verified) throw PreconditionError("k-tree certificate rejected: " + cert.reason);
    out.reason = "gamma is a " + std::to_string(qp.gamma().rank()) + "-tree";
  } else {
    throw PreconditionError("no polytree or k-tree factor: shortcut not applicable");
  }
  out.decision = decide_product(qp, bound);
  out.consistent = out.decision.answer == Answer::yes;
  return out;
}

}  // namespace kgraph
