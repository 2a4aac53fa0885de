#include "ctxbounds/classical.hpp"

#include "ctxbounds/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace ctxbounds {

std::vector<OutcomeIndex> DeterministicAssignment::support() const {
  std::vector<OutcomeIndex> s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i]) s.push_back(i);
  }
  return s;
}

DeterministicAssignment DeterministicAssignment::from_support(std::size_t n, const std::vector<OutcomeIndex>& support) {
  DeterministicAssignment x;
  x.values.assign(n, 0);
  for (OutcomeIndex i : support) x.values.at(i) = 1;
  return x;
}

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

// Branch and bound over vertex subsets encoded as 64-bit masks. W is either
// int64 (weights scaled to integers that fit) or BigInt.
template <class W>
class IndependentSetSearch {
 public:
  IndependentSetSearch(std::vector<Mask> adjacency, std::vector<W> weights, std::uint64_t node_budget)
      : adj_(std::move(adjacency)), w_(std::move(weights)), budget_(node_budget) {
    order_.resize(w_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return w_[a] > w_[b]; });
  }

  W solve(Mask candidates) {
    best_ = W(0);
    expand(candidates, W(0));
    return best_;
  }

  W weight_of(Mask m) const {
    W total(0);
    for (; m; m &= m - 1) total += w_[static_cast<std::size_t>(std::countr_zero(m))];
    return total;
  }

  const W& weight(std::size_t v) const { return w_[v]; }
  Mask neighbors(std::size_t v) const { return adj_[v]; }

 private:
  // Greedy partition of `candidates` into cliques, heaviest vertices first;
  // an independent set takes at most one vertex per clique.
  W clique_cover_bound(Mask candidates) const {
    cliques_.clear();
    W bound(0);
    for (std::size_t v : order_) {
      if (!(candidates & bit(v))) continue;
      bool placed = false;
      for (Mask& common : cliques_) {
        if (common & bit(v)) {
          common &= adj_[v];
          placed = true;
          break;
        }
      }
      if (!placed) {
        cliques_.push_back(adj_[v]);
        bound += w_[v];
      }
    }
    return bound;
  }

  void expand(Mask candidates, W current) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("independent-set search exceeded " + std::to_string(budget_) + " nodes");
    }
    // Vertices with no remaining neighbour are always taken.
    for (Mask m = candidates; m; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      if (!(adj_[v] & candidates)) {
        current += w_[v];
        candidates &= ~bit(v);
      }
    }
    if (current > best_) best_ = current;
    if (!candidates) return;
    if (current + clique_cover_bound(candidates) <= best_) return;

    std::size_t pivot = 0;
    int pivot_degree = -1;
    for (Mask m = candidates; m; m &= m - 1) {
      const auto v = static_cast<std::size_t>(std::countr_zero(m));
      const int degree = std::popcount(adj_[v] & candidates);
      if (degree > pivot_degree) {
        pivot = v;
        pivot_degree = degree;
      }
    }
    expand(candidates & ~adj_[pivot] & ~bit(pivot), current + w_[pivot]);
    expand(candidates & ~bit(pivot), current);
  }

  std::vector<Mask> adj_;
  std::vector<W> w_;
  std::vector<std::size_t> order_;
  mutable std::vector<Mask> cliques_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  W best_{0};
};

// Builds the lexicographically smallest optimal support one element at a
// time: each step takes the smallest vertex that still extends to an optimum.
template <class W>
std::vector<std::size_t> canonical_support(IndependentSetSearch<W>& search, std::size_t n, const W& optimum) {
  std::vector<std::size_t> chosen;
  Mask blocked = 0;
  W chosen_weight(0);
  std::size_t next = 0;
  while (chosen_weight != optimum) {
    bool extended = false;
    for (std::size_t v = next; v < n; ++v) {
      if (blocked & bit(v)) continue;
      Mask rest = 0;
      for (std::size_t u = v + 1; u < n; ++u) rest |= bit(u);
      rest &= ~blocked & ~search.neighbors(v);
      const W reachable = chosen_weight + search.weight(v) + search.solve(rest);
      if (reachable == optimum) {
        chosen.push_back(v);
        chosen_weight += search.weight(v);
        blocked |= search.neighbors(v) | bit(v);
        next = v + 1;
        extended = true;
        break;
      }
    }
    if (!extended) throw std::logic_error("independent-set search lost the optimum");
  }
  return chosen;
}

template <class W>
IndependentSetResult run_search(std::vector<Mask> adjacency, std::vector<W> weights, const BigInt& scale,
                                std::uint64_t node_budget) {
  const std::size_t n = weights.size();
  IndependentSetSearch<W> search(std::move(adjacency), std::move(weights), node_budget);
  const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
  const W optimum = search.solve(all);
  IndependentSetResult result;
  result.support = canonical_support(search, n, optimum);
  result.value = Rational(BigInt(optimum), scale);
  return result;
}

}  // namespace

IndependentSetResult max_weight_independent_set(const ExclusivityGraph& g, const std::vector<Rational>& weights,
                                                const SearchBudget& budget) {
  const std::size_t n = g.size();
  if (weights.size() != n) throw std::invalid_argument("weight vector does not match vertex count");
  if (n > budget.max_vertices || n > 64) {
    throw BudgetExceeded("instance has " + std::to_string(n) + " vertices; the exact search is limited to " +
                         std::to_string(std::min<std::size_t>(budget.max_vertices, 64)));
  }
  BigInt scale = 1;
  for (const Rational& w : weights) {
    if (w < 0) throw std::invalid_argument("independent-set weights must be non-negative");
    scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(w));
  }
  std::vector<BigInt> scaled;
  BigInt total = 0;
  for (const Rational& w : weights) {
    scaled.push_back(boost::multiprecision::numerator(w) * (scale / boost::multiprecision::denominator(w)));
    total += scaled.back();
  }
  std::vector<Mask> adjacency(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g.adjacent(i, j)) adjacency[i] |= bit(j);
    }
  }
  if (total <= BigInt(std::numeric_limits<std::int64_t>::max() / 2)) {
    std::vector<std::int64_t> small;
    for (const BigInt& s : scaled) small.push_back(s.convert_to<std::int64_t>());
    return run_search(std::move(adjacency), std::move(small), scale, budget.max_nodes);
  }
  return run_search(std::move(adjacency), std::move(scaled), scale, budget.max_nodes);
}

ClassicalBoundResult beta_classical(const ContextHypergraph& h, const SearchBudget& budget) {
  require_valid(h);
  const IndependentSetResult mis = max_weight_independent_set(exclusivity_graph(h), h.weights, budget);
  return {mis.value, DeterministicAssignment::from_support(h.outcome_count(), mis.support)};
}

bool is_nc_assignment(const ContextHypergraph& h, const DeterministicAssignment& x) {
  if (x.values.size() != h.outcome_count()) {
    throw std::invalid_argument("assignment covers " + std::to_string(x.values.size()) + " of " +
                                std::to_string(h.outcome_count()) + " outcomes");
  }
  for (const Context& c : h.contexts) {
    int sum = 0;
    for (OutcomeIndex i : c) sum += x.values[i] ? 1 : 0;
    if (sum > 1) return false;
  }
  return true;
}

void for_each_nc_assignment(const ContextHypergraph& h,
                            const std::function<bool(const DeterministicAssignment&)>& visit, std::size_t cap) {
  const std::size_t n = h.outcome_count();
  if (n > cap) {
    throw BudgetExceeded("enumeration over " + std::to_string(n) + " outcomes exceeds the cap of " +
                         std::to_string(cap));
  }
  const ExclusivityGraph g = exclusivity_graph(h);
  DeterministicAssignment x;
  x.values.assign(n, 0);
  bool stopped = false;
  // Depth-first, value 0 before value 1, gives lexicographic order.
  std::function<void(std::size_t)> recurse = [&](std::size_t i) {
    if (stopped) return;
    if (i == n) {
      if (!visit(x)) stopped = true;
      return;
    }
    recurse(i + 1);
    for (std::size_t j = 0; j < i; ++j) {
      if (x.values[j] && g.adjacent(i, j)) return;
    }
    x.values[i] = 1;
    recurse(i + 1);
    x.values[i] = 0;
  };
  recurse(0);
}

std::vector<DeterministicAssignment> enumerate_nc_assignments(const ContextHypergraph& h, std::size_t cap) {
  std::vector<DeterministicAssignment> out;
  for_each_nc_assignment(
      h,
      [&](const DeterministicAssignment& x) {
        out.push_back(x);
        return true;
      },
      cap);
  return out;
}

Rational bks_equality_deficit(const ContextHypergraph& h, const SearchBudget& budget) {
  require_valid(h);
  const auto k = context_multiplicities(h);
  std::vector<Rational> weights;
  for (std::size_t ki : k) weights.emplace_back(static_cast<long>(ki));
  return max_weight_independent_set(exclusivity_graph(h), weights, budget).value;
}

}  // namespace ctxbounds
