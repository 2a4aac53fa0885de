#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/linalg.hpp"
#include "ctxbounds/rational.hpp"

#include <vector>

namespace ctxbounds {

struct ThetaOptions {
  int max_iterations = 10'000;
  /// Interior-point iterations stop once the relative duality gap is below this.
  double gap_tolerance = 1e-10;
  /// Results with certified_error above this are flagged uncertified.
  double certify_tolerance = 1e-6;
};

/// Weighted Lovász theta with a two-sided certificate: `lower` is the
/// objective of a feasible Gram matrix, `upper` that of a feasible dual
/// point, so the true optimum lies in [lower, upper].
struct QuantumBoundResult {
  double value = 0.0;  // midpoint of [lower, upper]
  double certified_error = 0.0;  // half-width of [lower, upper]
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
  int iterations = 0;
  RealMatrix gram;  // primal optimiser, indexed like the graph (zero rows for zero-weight vertices)
  std::size_t gram_rank = 0;  // eigenvalues above 1e-6 of the largest
};

/// Solves max Σ_ij √(w_i w_j) B_ij over B ⪰ 0, tr B = 1, B_ij = 0 for i ~ j.
/// Zero-weight vertices are dropped before solving. Never throws on
/// non-convergence: the best certified interval is returned, flagged.
QuantumBoundResult lovasz_theta(const ExclusivityGraph& g, const std::vector<Rational>& weights,
                                const ThetaOptions& options = {});

}  // namespace ctxbounds
