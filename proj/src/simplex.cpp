#include "ctxbounds/simplex.hpp"

#include "ctxbounds/errors.hpp"

#include <optional>
#include <stdexcept>

namespace ctxbounds {

void LinearProgram::add_row(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
  if (coeffs.size() != objective.size()) throw std::invalid_argument("row width does not match variable count");
  rows.push_back({std::move(coeffs), relation, std::move(rhs)});
}

namespace {

enum class ColumnKind { Structural, Slack, Surplus, Artificial };

class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::uint64_t max_pivots) : max_pivots_(max_pivots) {
    n_ = lp.variable_count();
    const std::size_t m = lp.rows.size();
    kinds_.assign(n_, ColumnKind::Structural);
    unit_column_.assign(m, 0);
    flipped_.assign(m, false);

    // Column layout: structural, then one slack/surplus per inequality row,
    // then one artificial per >= or = row.
    std::vector<std::optional<std::size_t>> slack_of(m), artificial_of(m);
    std::size_t cols = n_;
    for (std::size_t r = 0; r < m; ++r) {
      Relation rel = lp.rows[r].relation;
      if (lp.rows[r].rhs < 0) {
        flipped_[r] = true;
        if (rel == Relation::LessEqual) rel = Relation::GreaterEqual;
        else if (rel == Relation::GreaterEqual) rel = Relation::LessEqual;
      }
      if (rel != Relation::Equal) {
        slack_of[r] = cols++;
        kinds_.push_back(rel == Relation::LessEqual ? ColumnKind::Slack : ColumnKind::Surplus);
      }
      relations_.push_back(rel);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (relations_[r] != Relation::LessEqual) {
        artificial_of[r] = cols++;
        kinds_.push_back(ColumnKind::Artificial);
      }
    }
    cols_ = cols;

    rows_.assign(m, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      const Rational sign = flipped_[r] ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) rows_[r][j] = sign * lp.rows[r].coeffs[j];
      rows_[r][cols_] = sign * lp.rows[r].rhs;
      if (slack_of[r]) rows_[r][*slack_of[r]] = relations_[r] == Relation::LessEqual ? 1 : -1;
      if (artificial_of[r]) {
        rows_[r][*artificial_of[r]] = 1;
        basis_[r] = *artificial_of[r];
        unit_column_[r] = *artificial_of[r];
      } else {
        basis_[r] = *slack_of[r];
        unit_column_[r] = *slack_of[r];
      }
    }
    active_.assign(m, true);
  }

  // Phase 1: drive the artificial variables to zero. Returns false when the
  // problem is infeasible.
  bool phase_one() {
    std::vector<Rational> cost(cols_, Rational(0));
    bool any = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (kinds_[j] == ColumnKind::Artificial) {
        cost[j] = -1;
        any = true;
      }
    }
    if (!any) return true;
    set_objective(cost);
    if (!optimize(/*allow_artificial=*/true)) throw std::logic_error("phase one cannot be unbounded");
    if (objective_value(cost) != 0) return false;

    // Pivot remaining (zero-valued) artificials out of the basis; a row with
    // no usable column is redundant and deactivated.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r] || kinds_[basis_[r]] != ColumnKind::Artificial) continue;
      bool pivoted = false;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kinds_[j] != ColumnKind::Artificial && rows_[r][j] != 0) {
          pivot(r, j);
          pivoted = true;
          break;
        }
      }
      if (!pivoted) active_[r] = false;
    }
    return true;
  }

  bool phase_two(const std::vector<Rational>& c) {
    cost_.assign(cols_, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = c[j];
    set_objective(cost_);
    return optimize(/*allow_artificial=*/false);
  }

  LpSolution solution() const {
    LpSolution s;
    s.status = LpStatus::Optimal;
    s.pivots = pivots_;
    s.x.assign(n_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (active_[r] && basis_[r] < n_) s.x[basis_[r]] = rows_[r][cols_];
    }
    s.value = objective_value(cost_);
    s.duals.assign(rows_.size(), Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      // The unit column of row r has zero cost, so its reduced cost is -y_r.
      Rational y = -reduced_[unit_column_[r]];
      s.duals[r] = flipped_[r] ? Rational(-y) : y;
    }
    std::vector<bool> basic(cols_, false);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (active_[r]) basic[basis_[r]] = true;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!basic[j] && kinds_[j] != ColumnKind::Artificial && reduced_[j] == 0) s.alternative_optima = true;
    }
    return s;
  }

 private:
  void set_objective(const std::vector<Rational>& cost) {
    reduced_ = cost;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (!active_[r]) continue;
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= cb * rows_[r][j];
    }
  }

  Rational objective_value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (active_[r]) v += cost[basis_[r]] * rows_[r][cols_];
    }
    return v;
  }

  // Bland's rule: smallest improving column enters; among tied ratios, the
  // row whose basic variable has the smallest index leaves.
  bool optimize(bool allow_artificial) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && kinds_[j] == ColumnKind::Artificial) continue;
        if (reduced_[j] > 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (!active_[r] || rows_[r][*entering] <= 0) continue;
        Rational ratio = rows_[r][cols_] / rows_[r][*entering];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    if (++pivots_ > max_pivots_) {
      throw BudgetExceeded("simplex exceeded " + std::to_string(max_pivots_) + " pivots");
    }
    const Rational p = rows_[row][col];
    for (Rational& v : rows_[row]) v /= p;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row || !active_[r] || rows_[r][col] == 0) continue;
      const Rational f = rows_[r][col];
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (rows_[row][j] != 0) rows_[r][j] -= f * rows_[row][j];
      }
    }
    if (!reduced_.empty() && reduced_[col] != 0) {
      const Rational f = reduced_[col];
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows_[row][j] != 0) reduced_[j] -= f * rows_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::size_t n_ = 0;
  std::size_t cols_ = 0;
  std::vector<ColumnKind> kinds_;
  std::vector<Relation> relations_;
  std::vector<std::vector<Rational>> rows_;  // last entry is the right-hand side
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_column_;
  std::vector<bool> flipped_;
  std::vector<bool> active_;
  std::vector<Rational> reduced_;
  std::vector<Rational> cost_;
  std::uint64_t pivots_ = 0;
  std::uint64_t max_pivots_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, std::uint64_t max_pivots) {
  for (const auto& row : lp.rows) {
    if (row.coeffs.size() != lp.variable_count()) throw std::invalid_argument("row width does not match variable count");
  }
  Tableau tableau(lp, max_pivots);
  if (!tableau.phase_one()) {
    LpSolution s;
    s.status = LpStatus::Infeasible;
    return s;
  }
  if (!tableau.phase_two(lp.objective)) {
    LpSolution s;
    s.status = LpStatus::Unbounded;
    return s;
  }
  return tableau.solution();
}

}  // namespace ctxbounds
