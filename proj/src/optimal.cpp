#include "budgetlab/optimal.hpp"

#include <cassert>

#include "budgetlab/errors.hpp"
#include "budgetlab/lp.hpp"

namespace budgetlab {

MenuChoice menu_best_response(const Mechanism& mech,
                              const std::vector<Rational>& type,
                              const Rational& budget) {
  MenuChoice best;
  best.allocation.assign(type.size(), Rational(0));
  bool have = false;
  for (std::size_t i = 0; i < mech.options.size(); ++i) {
    const MenuOption& opt = mech.options[i];
    if (opt.payment > budget) continue;
    Rational utility = -opt.payment;
    for (std::size_t j = 0; j < type.size(); ++j) {
      utility += opt.allocation[j] * type[j];
    }
    if (!have || utility > best.utility ||
        (utility == best.utility && opt.payment > best.payment)) {
      have = true;
      best.option = static_cast<int>(i);
      best.allocation = opt.allocation;
      best.payment = opt.payment;
      best.utility = utility;
    }
  }
  if (!have || sgn(best.utility) < 0) {
    MenuChoice outside;
    outside.allocation.assign(type.size(), Rational(0));
    return outside;
  }
  return best;
}

namespace {

OptimalRevenue solve_revenue_lp(const DiscreteJointDistribution& dist,
                                const Rational& budget,
                                std::size_t type_limit) {
  const std::size_t n = dist.num_types();
  const std::size_t m = dist.num_items();
  if (n > type_limit) {
    throw SupportTooLarge("type space exceeds the revenue LP limit");
  }
  // Variables: pi(i,j) in [0,1] for i < n, j < m; then payments p(i), free.
  const std::size_t num_vars = n * m + n;
  auto pi_var = [m](std::size_t i, std::size_t j) { return i * m + j; };
  auto p_var = [n, m](std::size_t i) { return n * m + i; };

  lp::LinearProgram prog;
  prog.objective.assign(num_vars, Rational(0));
  prog.bounds.assign(num_vars, lp::VarBounds{});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      prog.bounds[pi_var(i, j)] = lp::VarBounds{Rational(0), Rational(1)};
    }
    prog.bounds[p_var(i)] = lp::VarBounds{std::nullopt, std::nullopt};
    prog.objective[p_var(i)] = dist.mass(i);
  }

  auto ic_row = [&](std::size_t i, std::size_t k) {
    // u(t_i, t_k) <= u(t_i, t_i): pi(t_k).t_i - p(t_k) - pi(t_i).t_i + p(t_i) <= 0
    const auto& t = dist.type(i);
    std::vector<Rational> row(num_vars, Rational(0));
    for (std::size_t j = 0; j < m; ++j) {
      row[pi_var(k, j)] += t[j];
      row[pi_var(i, j)] -= t[j];
    }
    row[p_var(k)] -= 1;
    row[p_var(i)] += 1;
    return row;
  };

  // Always-on rows: IR against the outside option and the payment cap.
  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = dist.type(i);
    std::vector<Rational> row(num_vars, Rational(0));
    for (std::size_t j = 0; j < m; ++j) row[pi_var(i, j)] -= t[j];
    row[p_var(i)] += 1;
    prog.add_row(std::move(row), lp::Relation::LessEq, Rational(0));
    std::vector<Rational> brow(num_vars, Rational(0));
    brow[p_var(i)] = 1;
    prog.add_row(std::move(brow), lp::Relation::LessEq, budget);
  }

  // The full LP has n(n-1) IC rows; almost all are slack at the optimum, so
  // they are generated lazily: per round, each truth type contributes its
  // most violated report, until the relaxation is exactly IC.
  std::vector<std::vector<bool>> active(n, std::vector<bool>(n, false));
  lp::LpSolution sol;
  for (;;) {
    sol = lp::solve(prog);
    assert(sol.status == lp::LpStatus::Optimal);  // null mechanism is feasible
    bool added = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& t = dist.type(i);
      Rational truthful = -sol.assignment[p_var(i)];
      for (std::size_t j = 0; j < m; ++j) {
        truthful += sol.assignment[pi_var(i, j)] * t[j];
      }
      int worst = -1;
      Rational worst_gain;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || active[i][k]) continue;
        Rational deviate = -sol.assignment[p_var(k)];
        for (std::size_t j = 0; j < m; ++j) {
          deviate += sol.assignment[pi_var(k, j)] * t[j];
        }
        if (deviate > truthful && (worst < 0 || deviate > worst_gain)) {
          worst = static_cast<int>(k);
          worst_gain = deviate;
        }
      }
      if (worst >= 0) {
        active[i][worst] = true;
        prog.add_row(ic_row(i, worst), lp::Relation::LessEq, Rational(0));
        added = true;
      }
    }
    if (!added) break;
  }

  OptimalRevenue out;
  out.value = sol.value;
  out.mechanism.budget = budget;
  out.mechanism.options.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    MenuOption& opt = out.mechanism.options[i];
    opt.allocation.resize(m);
    for (std::size_t j = 0; j < m; ++j) opt.allocation[j] = sol.assignment[pi_var(i, j)];
    opt.payment = sol.assignment[p_var(i)];
  }
  return out;
}

}  // namespace

OptimalRevenue rev_budget(const DiscreteJointDistribution& dist,
                          const Rational& budget, std::size_t type_limit) {
  if (sgn(budget) <= 0) throw Error("budget must be positive");
  return solve_revenue_lp(dist, budget, type_limit);
}

OptimalRevenue rev_unbudgeted(const DiscreteJointDistribution& dist,
                              std::size_t type_limit) {
  Rational cap = dist.max_type_sum();
  if (sgn(cap) == 0) cap = 1;  // all-zero values: any budget is non-binding
  return solve_revenue_lp(dist, cap, type_limit);
}

}  // namespace budgetlab
