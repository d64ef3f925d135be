#include "budgetlab/lp.hpp"

#include <algorithm>
#include <cassert>

#include "budgetlab/errors.hpp"

namespace budgetlab::lp {

namespace {

// Internal standard form: maximize c.x subject to A x = b, x >= 0, b >= 0.
// Column layout: structural columns first, then one slack/surplus column per
// row that needs one, then artificial columns.
struct Standard {
  std::size_t cols = 0;
  std::vector<std::vector<Rational>> a;  // row-major, cols entries each
  std::vector<Rational> rhs;
  std::vector<Rational> cost;            // phase-2 objective per column
  std::vector<bool> artificial;          // per column
  std::vector<int> marker;               // per row: its slack/surplus/artificial column
  std::vector<int> marker_sign;          // +1 slack or artificial, -1 surplus
  std::vector<bool> row_negated;         // per original row index
  Rational objective_shift = 0;

  // mapping back to original variables
  struct VarMap {
    int plus = -1;   // structural column for the shifted/positive part
    int minus = -1;  // structural column for the negative part (free vars)
    Rational shift = 0;
  };
  std::vector<VarMap> vars;
  std::size_t num_structural = 0;
  std::size_t original_rows = 0;
};

Standard standardize(const LinearProgram& lp) {
  Standard st;
  const std::size_t n = lp.num_vars();
  st.vars.resize(n);

  // Structural columns.
  std::vector<Rational> col_cost;
  for (std::size_t j = 0; j < n; ++j) {
    VarBounds vb = lp.var_bounds(j);
    if (vb.lower) {
      st.vars[j].plus = static_cast<int>(col_cost.size());
      st.vars[j].shift = *vb.lower;
      col_cost.push_back(lp.objective[j]);
      st.objective_shift += lp.objective[j] * (*vb.lower);
    } else {
      st.vars[j].plus = static_cast<int>(col_cost.size());
      col_cost.push_back(lp.objective[j]);
      st.vars[j].minus = static_cast<int>(col_cost.size());
      col_cost.push_back(-lp.objective[j]);
    }
  }
  st.num_structural = col_cost.size();

  struct PendingRow {
    std::vector<Rational> coeffs;  // over structural columns
    Relation rel;
    Rational rhs;
    bool negated = false;
  };
  std::vector<PendingRow> pending;

  auto structural_row = [&](const std::vector<Rational>& coeffs) {
    std::vector<Rational> out(st.num_structural, Rational(0));
    Rational rhs_delta = 0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      out[st.vars[j].plus] += coeffs[j];
      if (st.vars[j].minus >= 0) out[st.vars[j].minus] -= coeffs[j];
      rhs_delta += coeffs[j] * st.vars[j].shift;
    }
    return std::make_pair(std::move(out), rhs_delta);
  };

  st.original_rows = lp.rows.size();
  for (const Row& row : lp.rows) {
    auto [coeffs, delta] = structural_row(row.coeffs);
    pending.push_back(PendingRow{std::move(coeffs), row.rel, row.rhs - delta});
  }
  // Upper bounds become rows on the shifted variables.
  for (std::size_t j = 0; j < n; ++j) {
    VarBounds vb = lp.var_bounds(j);
    if (!vb.upper) continue;
    std::vector<Rational> coeffs(st.num_structural, Rational(0));
    coeffs[st.vars[j].plus] = 1;
    if (st.vars[j].minus >= 0) coeffs[st.vars[j].minus] = -1;
    pending.push_back(
        PendingRow{std::move(coeffs), Relation::LessEq, *vb.upper - st.vars[j].shift});
  }

  // Normalize every row to rhs >= 0 and, when possible, to a form whose
  // auxiliary column can start in the basis without an artificial.
  for (PendingRow& row : pending) {
    if (sgn(row.rhs) < 0 || (row.rel == Relation::GreaterEq && sgn(row.rhs) == 0)) {
      for (Rational& c : row.coeffs) c = -c;
      row.rhs = -row.rhs;
      if (row.rel == Relation::LessEq) row.rel = Relation::GreaterEq;
      else if (row.rel == Relation::GreaterEq) row.rel = Relation::LessEq;
      row.negated = true;
    }
  }

  const std::size_t rows = pending.size();
  std::size_t aux = 0, art = 0;
  for (const PendingRow& row : pending) {
    if (row.rel != Relation::Equal) ++aux;
    if (row.rel != Relation::LessEq) ++art;
  }
  st.cols = st.num_structural + aux + art;
  st.a.assign(rows, std::vector<Rational>(st.cols, Rational(0)));
  st.rhs.resize(rows);
  st.cost.assign(st.cols, Rational(0));
  st.artificial.assign(st.cols, false);
  st.marker.assign(rows, -1);
  st.marker_sign.assign(rows, 1);
  st.row_negated.assign(st.original_rows, false);
  for (std::size_t j = 0; j < st.num_structural; ++j) st.cost[j] = col_cost[j];

  std::size_t next_aux = st.num_structural;
  std::size_t next_art = st.num_structural + aux;
  for (std::size_t i = 0; i < rows; ++i) {
    PendingRow& row = pending[i];
    for (std::size_t j = 0; j < st.num_structural; ++j) st.a[i][j] = row.coeffs[j];
    st.rhs[i] = row.rhs;
    if (i < st.original_rows) st.row_negated[i] = row.negated;
    if (row.rel == Relation::LessEq) {
      st.a[i][next_aux] = 1;
      st.marker[i] = static_cast<int>(next_aux);
      st.marker_sign[i] = 1;
      ++next_aux;
    } else if (row.rel == Relation::GreaterEq) {
      st.a[i][next_aux] = -1;
      ++next_aux;
      st.a[i][next_art] = 1;
      st.artificial[next_art] = true;
      st.marker[i] = static_cast<int>(next_art);
      st.marker_sign[i] = 1;
      ++next_art;
    } else {
      st.a[i][next_art] = 1;
      st.artificial[next_art] = true;
      st.marker[i] = static_cast<int>(next_art);
      st.marker_sign[i] = 1;
      ++next_art;
    }
  }
  return st;
}

// Dense exact simplex over the standard form.
class Tableau {
 public:
  explicit Tableau(Standard st) : st_(std::move(st)) {
    rows_ = st_.a.size();
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (st_.artificial[st_.marker[i]]) has_artificial_ = true;
      basis_[i] = st_.marker[i];
      // slack markers start feasible because rhs >= 0; so do artificials
    }
  }

  enum class StepResult { Optimal, Unbounded };

  // Runs simplex for the cost vector `cost`; eligible[j]=false bars a column
  // from entering. Returns the final status.
  StepResult optimize(const std::vector<Rational>& cost,
                      const std::vector<bool>& eligible) {
    price_out(cost);
    std::size_t degenerate_run = 0;
    const std::size_t bland_threshold = 16 + 2 * rows_;
    bool use_bland = false;
    for (;;) {
      int entering = -1;
      if (use_bland) {
        for (std::size_t j = 0; j < st_.cols; ++j) {
          if (eligible[j] && sgn(d_[j]) > 0) {
            entering = static_cast<int>(j);
            break;
          }
        }
      } else {
        for (std::size_t j = 0; j < st_.cols; ++j) {
          if (!eligible[j] || sgn(d_[j]) <= 0) continue;
          if (entering < 0 || d_[j] > d_[entering]) entering = static_cast<int>(j);
        }
      }
      if (entering < 0) return StepResult::Optimal;

      int leaving = -1;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(st_.a[i][entering]) <= 0) continue;
        Rational ratio = st_.rhs[i] / st_.a[i][entering];
        if (leaving < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leaving < 0) return StepResult::Unbounded;

      bool degenerate = (sgn(st_.rhs[leaving]) == 0);
      pivot(static_cast<std::size_t>(leaving), static_cast<std::size_t>(entering));
      ++pivots_;
      if (degenerate) {
        if (++degenerate_run > bland_threshold) use_bland = true;
      } else {
        degenerate_run = 0;
        use_bland = false;
      }
    }
  }

  // Phase 1: drive sum of artificials to zero. Returns false on infeasible.
  bool phase_one() {
    if (!has_artificial_) return true;
    std::vector<Rational> cost(st_.cols, Rational(0));
    for (std::size_t j = 0; j < st_.cols; ++j) {
      if (st_.artificial[j]) cost[j] = -1;
    }
    std::vector<bool> eligible(st_.cols, true);
    StepResult res = optimize(cost, eligible);
    assert(res == StepResult::Optimal);
    (void)res;
    if (sgn(z_) != 0) return false;  // max of -(sum art) below zero
    drive_out_artificials();
    return true;
  }

  StepResult phase_two() {
    std::vector<bool> eligible(st_.cols, true);
    for (std::size_t j = 0; j < st_.cols; ++j) {
      if (st_.artificial[j]) eligible[j] = false;
    }
    return optimize(st_.cost, eligible);
  }

  Rational objective() const { return z_ + st_.objective_shift; }

  std::vector<Rational> primal() const {
    std::vector<Rational> x(st_.vars.size(), Rational(0));
    std::vector<Rational> structural(st_.num_structural, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (static_cast<std::size_t>(basis_[i]) < st_.num_structural) {
        structural[basis_[i]] = st_.rhs[i];
      }
    }
    for (std::size_t j = 0; j < st_.vars.size(); ++j) {
      const auto& vm = st_.vars[j];
      x[j] = structural[vm.plus] + vm.shift;
      if (vm.minus >= 0) x[j] -= structural[vm.minus];
    }
    return x;
  }

  // Duals for the original rows, derived from the reduced costs of each
  // row's marker column: d(marker) = -sign * y.
  std::vector<Rational> original_duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(st_.original_rows, Rational(0));
    for (std::size_t i = 0; i < st_.original_rows; ++i) {
      if (row_removed_[i]) continue;
      std::size_t live = live_index_[i];
      int m = st_.marker[live];
      Rational yi = (cost[m] - d_[m]) / st_.marker_sign[live];
      y[i] = st_.row_negated[i] ? -yi : yi;
    }
    return y;
  }

  void prepare_row_tracking() {
    row_removed_.assign(st_.original_rows, false);
    live_index_.resize(st_.original_rows);
    for (std::size_t i = 0; i < st_.original_rows; ++i) live_index_[i] = i;
  }

  const std::vector<Rational>& reduced_costs() const { return d_; }
  std::size_t pivots() const { return pivots_; }

 private:
  void price_out(const std::vector<Rational>& cost) {
    d_ = cost;
    z_ = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < st_.cols; ++j) {
        if (sgn(st_.a[i][j]) != 0) d_[j] -= cb * st_.a[i][j];
      }
      z_ += cb * st_.rhs[i];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / st_.a[r][c];
    if (inv != 1) {
      for (std::size_t j = 0; j < st_.cols; ++j) {
        if (sgn(st_.a[r][j]) != 0) st_.a[r][j] *= inv;
      }
      st_.rhs[r] *= inv;
    }
    st_.a[r][c] = 1;  // kill residual representation noise
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      Rational factor = st_.a[i][c];
      if (sgn(factor) == 0) continue;
      for (std::size_t j = 0; j < st_.cols; ++j) {
        if (sgn(st_.a[r][j]) != 0) st_.a[i][j] -= factor * st_.a[r][j];
      }
      st_.a[i][c] = 0;
      st_.rhs[i] -= factor * st_.rhs[r];
    }
    Rational dfactor = d_[c];
    if (sgn(dfactor) != 0) {
      for (std::size_t j = 0; j < st_.cols; ++j) {
        if (sgn(st_.a[r][j]) != 0) d_[j] -= dfactor * st_.a[r][j];
      }
      d_[c] = 0;
      z_ += dfactor * st_.rhs[r];
    }
    basis_[r] = static_cast<int>(c);
  }

  // After a feasible phase 1, pivot basic artificials out or drop redundant
  // rows so phase 2 never touches them.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_;) {
      if (!st_.artificial[basis_[i]]) {
        ++i;
        continue;
      }
      int col = -1;
      for (std::size_t j = 0; j < st_.cols; ++j) {
        if (!st_.artificial[j] && sgn(st_.a[i][j]) != 0) {
          col = static_cast<int>(j);
          break;
        }
      }
      if (col >= 0) {
        pivot(i, static_cast<std::size_t>(col));
        ++i;
      } else {
        remove_row(i);
      }
    }
  }

  void remove_row(std::size_t r) {
    for (std::size_t k = 0; k < st_.original_rows; ++k) {
      if (!row_removed_[k] && live_index_[k] == r) {
        row_removed_[k] = true;
      } else if (!row_removed_[k] && live_index_[k] > r) {
        --live_index_[k];
      }
    }
    st_.a.erase(st_.a.begin() + r);
    st_.rhs.erase(st_.rhs.begin() + r);
    st_.marker.erase(st_.marker.begin() + r);
    st_.marker_sign.erase(st_.marker_sign.begin() + r);
    basis_.erase(basis_.begin() + r);
    --rows_;
  }

  Standard st_;
  std::size_t rows_ = 0;
  std::vector<int> basis_;
  std::vector<Rational> d_;  // reduced costs
  Rational z_ = 0;           // objective of the current basis
  bool has_artificial_ = false;
  std::vector<bool> row_removed_;
  std::vector<std::size_t> live_index_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpSolution solve(const LinearProgram& lp) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    VarBounds vb = lp.var_bounds(j);
    if (vb.lower && vb.upper && *vb.lower > *vb.upper) {
      LpSolution out;
      out.status = LpStatus::Infeasible;
      return out;  // contradictory bounds; no row certificate needed
    }
  }
  Standard st = standardize(lp);
  Tableau tab(st);
  tab.prepare_row_tracking();

  LpSolution out;
  if (!tab.phase_one()) {
    out.status = LpStatus::Infeasible;
    std::vector<Rational> phase1_cost(st.cols, Rational(0));
    for (std::size_t j = 0; j < st.cols; ++j) {
      if (st.artificial[j]) phase1_cost[j] = -1;
    }
    out.row_duals = tab.original_duals(phase1_cost);
    for (Rational& yk : out.row_duals) yk = -yk;  // orient as a Farkas vector
    out.pivots = tab.pivots();
    return out;
  }
  Tableau::StepResult res = tab.phase_two();
  out.pivots = tab.pivots();
  if (res == Tableau::StepResult::Unbounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }
  out.status = LpStatus::Optimal;
  out.value = tab.objective();
  out.assignment = tab.primal();
  std::vector<Rational> phase2_cost(st.cols, Rational(0));
  for (std::size_t j = 0; j < st.num_structural; ++j) phase2_cost[j] = st.cost[j];
  out.row_duals = tab.original_duals(phase2_cost);
  return out;
}

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    VarBounds vb = lp.var_bounds(j);
    if (vb.lower && x[j] < *vb.lower) return false;
    if (vb.upper && x[j] > *vb.upper) return false;
  }
  for (const Row& row : lp.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) lhs += row.coeffs[j] * x[j];
    if (row.rel == Relation::LessEq && lhs > row.rhs) return false;
    if (row.rel == Relation::GreaterEq && lhs < row.rhs) return false;
    if (row.rel == Relation::Equal && lhs != row.rhs) return false;
  }
  return true;
}

bool dual_certificate_ok(const LinearProgram& lp, const LpSolution& sol) {
  if (sol.status != LpStatus::Optimal) return false;
  const std::vector<Rational>& y = sol.row_duals;
  if (y.size() != lp.rows.size()) return false;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    if (lp.rows[k].rel == Relation::LessEq && sgn(y[k]) < 0) return false;
    if (lp.rows[k].rel == Relation::GreaterEq && sgn(y[k]) > 0) return false;
  }
  Rational bound = 0;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) bound += y[k] * lp.rows[k].rhs;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational rj = lp.objective[j];
    for (std::size_t k = 0; k < lp.rows.size(); ++k) {
      if (j < lp.rows[k].coeffs.size()) rj -= y[k] * lp.rows[k].coeffs[j];
    }
    VarBounds vb = lp.var_bounds(j);
    if (sgn(rj) > 0) {
      if (!vb.upper) return false;
      bound += rj * (*vb.upper);
    } else if (sgn(rj) < 0) {
      if (!vb.lower) return false;
      bound += rj * (*vb.lower);
    }
  }
  return bound == sol.value;
}

bool farkas_certificate_ok(const LinearProgram& lp,
                           const std::vector<Rational>& y) {
  if (y.size() != lp.rows.size()) return false;
  // Sign conditions make sum_k y_k (A_k x) >= sum_k y_k b_k a consequence of
  // the rows; the bounds must then cap the left side strictly below it.
  for (std::size_t k = 0; k < lp.rows.size(); ++k) {
    if (lp.rows[k].rel == Relation::LessEq && sgn(y[k]) > 0) return false;
    if (lp.rows[k].rel == Relation::GreaterEq && sgn(y[k]) < 0) return false;
  }
  Rational needed = 0;
  for (std::size_t k = 0; k < lp.rows.size(); ++k) needed += y[k] * lp.rows[k].rhs;
  Rational cap = 0;
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational gj = 0;
    for (std::size_t k = 0; k < lp.rows.size(); ++k) {
      if (j < lp.rows[k].coeffs.size()) gj += y[k] * lp.rows[k].coeffs[j];
    }
    VarBounds vb = lp.var_bounds(j);
    if (sgn(gj) > 0) {
      if (!vb.upper) return false;
      cap += gj * (*vb.upper);
    } else if (sgn(gj) < 0) {
      if (!vb.lower) return false;
      cap += gj * (*vb.lower);
    }
  }
  return cap < needed;
}

}  // namespace budgetlab::lp
