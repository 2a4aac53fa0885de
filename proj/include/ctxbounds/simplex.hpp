#pragma once

#include "ctxbounds/rational.hpp"

#include <cstdint>
#include <vector>

namespace ctxbounds {

enum class Relation { LessEqual, GreaterEqual, Equal };

/// maximize c·x subject to rows (a·x rel b) and x ≥ 0, all exact.
struct LinearProgram {
  struct Row {
    std::vector<Rational> coeffs;
    Relation relation = Relation::LessEqual;
    Rational rhs;
  };

  std::vector<Rational> objective;
  std::vector<Row> rows;

  std::size_t variable_count() const { return objective.size(); }
  void add_row(std::vector<Rational> coeffs, Relation relation, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;      // basic solution (a vertex of the feasible region)
  std::vector<Rational> duals;  // one multiplier per row, from the final tableau
  bool alternative_optima = false;  // some non-basic column has zero reduced cost
  std::uint64_t pivots = 0;
};

/// Dense two-phase tableau simplex over exact rationals with Bland's rule, so
/// it terminates on degenerate problems. Throws BudgetExceeded after
/// `max_pivots` pivots.
LpSolution solve_lp(const LinearProgram& lp, std::uint64_t max_pivots = 1'000'000);

}  // namespace ctxbounds
