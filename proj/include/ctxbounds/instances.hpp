#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/quantum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ctxbounds {

/// Pentagon scenario with the standard 3-dimensional realisation
/// v_j = (cos θ, sin θ cos(4πj/5), sin θ sin(4πj/5)), cos²θ = cos(π/5)/(1+cos(π/5)),
/// and the symmetry-axis state (1,0,0).
struct KcbsInstance {
  ContextHypergraph hypergraph;
  QuantumModel model;
  QuantumState state;
};

/// Constructs the instance and runs its self-checks (adjacent vectors
/// orthogonal within 1e-12, optimal value √5 within 1e-9); throws
/// std::logic_error if any fails.
KcbsInstance kcbs_pentagon();

/// 24 Peres rays in C^4 (sign patterns of weight 1, 2 and 4 with the first
/// non-zero coordinate positive), ids like "+-00", and the 24 orthonormal
/// tetrads among them as contexts.
struct PeresMerminInstance {
  ContextHypergraph hypergraph;
  QuantumModel model;
};

/// Self-checks: 24 contexts, each an orthonormal basis within 1e-12, every
/// k_i = 4, Σ_i P_i = 6·1 within 1e-9.
PeresMerminInstance peres_mermin_24();

/// Outcomes "0".."n−1", contexts {i, i+1 mod n}, unit weights. n ≥ 3.
ContextHypergraph cycle_instance(int n);

/// One context holding all n outcomes.
ContextHypergraph single_context_instance(int n);

struct NamedInstance {
  ContextHypergraph hypergraph;
  std::optional<QuantumModel> model;
};

/// "pentagon" (alias "kcbs"), "mp24" (alias "peres-mermin"), "cycle<n>",
/// "single<n>". Throws std::invalid_argument for an unknown name.
NamedInstance named_instance(const std::string& name);
std::vector<std::string> instance_names();

}  // namespace ctxbounds
