#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/rational.hpp"

#include <vector>

namespace ctxbounds {

/// t_i ∈ [0,1] per outcome with Σ_{i∈C} t_i ≤ 1 for every context.
struct FractionalAssignment {
  std::vector<Rational> t;  // aligned with outcomes
};

struct GeneralBoundResult {
  Rational value;
  FractionalAssignment witness;     // a vertex of the packing polytope
  bool alternative_optima = false;  // zero reduced cost at the optimum
  std::vector<Rational> context_duals;  // one per context, from the final tableau
  std::vector<Rational> box_duals;      // one per outcome (t_i ≤ 1)
};

/// β_g: max Σ λ_i t_i over the fractional packing polytope, solved exactly.
GeneralBoundResult beta_general(const ContextHypergraph& h);

/// Optimum of the dual covering LP, min Σ_C y_C + Σ_i z_i subject to
/// Σ_{C∋i} y_C + z_i ≥ λ_i and y, z ≥ 0, solved as a separate program.
Rational covering_dual_value(const ContextHypergraph& h);

/// Exact feasibility test for the box and context constraints. Throws
/// std::invalid_argument when `t` does not cover every outcome.
bool check_fractional(const ContextHypergraph& h, const FractionalAssignment& t);

}  // namespace ctxbounds
