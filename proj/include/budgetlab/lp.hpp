#pragma once

#include <optional>
#include <vector>

#include "budgetlab/rational.hpp"

namespace budgetlab::lp {

enum class Relation { LessEq, Equal, GreaterEq };

struct Row {
  std::vector<Rational> coeffs;
  Relation rel = Relation::LessEq;
  Rational rhs = 0;
};

struct VarBounds {
  std::optional<Rational> lower = Rational(0);  // default x >= 0
  std::optional<Rational> upper = std::nullopt;
};

// A linear program in maximization form over rational data.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<Row> rows;
  std::vector<VarBounds> bounds;  // empty means every variable gets defaults

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back(Row{std::move(coeffs), rel, std::move(rhs)});
  }
  VarBounds var_bounds(std::size_t j) const {
    return j < bounds.size() ? bounds[j] : VarBounds{};
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational value = 0;
  std::vector<Rational> assignment;  // per variable, when Optimal
  // When Optimal: dual multipliers per original row, forming an exact
  // optimality certificate together with the bound terms. When Infeasible:
  // a Farkas certificate over the original rows.
  std::vector<Rational> row_duals;
  std::size_t pivots = 0;
};

// Exact primal simplex (dense tableau, two phases). The pivot rule is
// Dantzig with a deterministic switch to Bland's rule on degenerate
// plateaus, so the solver always terminates and identical inputs give
// identical assignments.
LpSolution solve(const LinearProgram& lp);

// Exact feasibility check of an assignment (zero residual required).
bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);

// Verifies the strong-duality certificate carried by an Optimal solution.
bool dual_certificate_ok(const LinearProgram& lp, const LpSolution& sol);

// Verifies a Farkas certificate of infeasibility.
bool farkas_certificate_ok(const LinearProgram& lp,
                           const std::vector<Rational>& y);

}  // namespace budgetlab::lp
