#pragma once

#include "ctxbounds/hypergraph.hpp"
#include "ctxbounds/rational.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace ctxbounds {

/// 0/1 value per outcome, aligned with ContextHypergraph::outcomes.
struct DeterministicAssignment {
  std::vector<std::uint8_t> values;

  std::vector<OutcomeIndex> support() const;
  static DeterministicAssignment from_support(std::size_t n, const std::vector<OutcomeIndex>& support);

  bool operator==(const DeterministicAssignment&) const = default;
};

struct ClassicalBoundResult {
  Rational value;
  DeterministicAssignment witness;
};

/// Limits for the exact searches. Exceeding either raises BudgetExceeded;
/// no approximate value is ever returned.
struct SearchBudget {
  std::size_t max_vertices = 64;
  std::uint64_t max_nodes = 200'000'000;
};

/// Weighted independent set result over a graph's vertex order.
struct IndependentSetResult {
  Rational value;
  std::vector<std::size_t> support;  // sorted; lexicographically smallest optimum
};

/// Exact maximum-weight independent set by branch and bound with greedy
/// clique-cover bounds. Weights must be non-negative.
IndependentSetResult max_weight_independent_set(const ExclusivityGraph& g, const std::vector<Rational>& weights,
                                                const SearchBudget& budget = {});

/// β_cl: the maximum of Σ λ_i x_i over non-contextual 0/1 assignments.
ClassicalBoundResult beta_classical(const ContextHypergraph& h, const SearchBudget& budget = {});

/// True iff every context holds at most one outcome with value 1. Throws
/// std::invalid_argument when the assignment does not cover every outcome.
bool is_nc_assignment(const ContextHypergraph& h, const DeterministicAssignment& x);

/// Visits every non-contextual assignment once, in lexicographic order of the
/// value vector (all-zero first). Returning false from `visit` stops early.
/// Throws BudgetExceeded when the outcome count exceeds `cap`.
void for_each_nc_assignment(const ContextHypergraph& h,
                            const std::function<bool(const DeterministicAssignment&)>& visit,
                            std::size_t cap = 24);

std::vector<DeterministicAssignment> enumerate_nc_assignments(const ContextHypergraph& h, std::size_t cap = 24);

/// max over NC assignments of Σ_C Σ_{i∈C} x_i (distinct contexts). A value
/// ≤ |Γ| − 1 certifies that no assignment saturates every context.
Rational bks_equality_deficit(const ContextHypergraph& h, const SearchBudget& budget = {});

}  // namespace ctxbounds
