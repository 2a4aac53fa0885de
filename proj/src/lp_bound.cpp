#include "ctxbounds/lp_bound.hpp"

#include "ctxbounds/simplex.hpp"

#include <stdexcept>

namespace ctxbounds {

GeneralBoundResult beta_general(const ContextHypergraph& h) {
  require_valid(h);
  const std::size_t n = h.outcome_count();
  const ContextHypergraph canonical = canonicalize(h);

  LinearProgram lp;
  lp.objective = h.weights;
  for (const Context& c : canonical.contexts) {
    std::vector<Rational> row(n, Rational(0));
    for (OutcomeIndex i : c) row[i] = 1;
    lp.add_row(std::move(row), Relation::LessEqual, Rational(1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(n, Rational(0));
    row[i] = 1;
    lp.add_row(std::move(row), Relation::LessEqual, Rational(1));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::logic_error("packing LP is bounded and feasible, solver reported otherwise");
  }
  GeneralBoundResult result;
  result.value = sol.value;
  result.witness.t = sol.x;
  result.alternative_optima = sol.alternative_optima;
  const std::size_t m = canonical.context_count();
  result.context_duals.assign(sol.duals.begin(), sol.duals.begin() + static_cast<std::ptrdiff_t>(m));
  result.box_duals.assign(sol.duals.begin() + static_cast<std::ptrdiff_t>(m), sol.duals.end());
  return result;
}

Rational covering_dual_value(const ContextHypergraph& h) {
  require_valid(h);
  const ContextHypergraph canonical = canonicalize(h);
  const std::size_t n = h.outcome_count();
  const std::size_t m = canonical.context_count();

  // Variables: y_C for each context, then z_i for each outcome. Minimisation
  // is posed as maximising the negated objective.
  LinearProgram lp;
  lp.objective.assign(m + n, Rational(-1));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row(m + n, Rational(0));
    for (std::size_t c = 0; c < m; ++c) {
      if (canonical.contains(c, i)) row[c] = 1;
    }
    row[m + i] = 1;
    lp.add_row(std::move(row), Relation::GreaterEqual, h.weights[i]);
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) {
    throw std::logic_error("covering LP is feasible and bounded below, solver reported otherwise");
  }
  return -sol.value;
}

bool check_fractional(const ContextHypergraph& h, const FractionalAssignment& t) {
  if (t.t.size() != h.outcome_count()) {
    throw std::invalid_argument("fractional assignment covers " + std::to_string(t.t.size()) + " of " +
                                std::to_string(h.outcome_count()) + " outcomes");
  }
  for (const Rational& v : t.t) {
    if (v < 0 || v > 1) return false;
  }
  for (const Context& c : h.contexts) {
    Rational sum = 0;
    for (OutcomeIndex i : c) sum += t.t[i];
    if (sum > 1) return false;
  }
  return true;
}

}  // namespace ctxbounds
