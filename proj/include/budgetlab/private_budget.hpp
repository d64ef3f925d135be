#pragma once

#include <vector>

#include "budgetlab/distribution.hpp"
#include "budgetlab/rational.hpp"
#include "budgetlab/report.hpp"

namespace budgetlab {

// Prior over the buyer's budget, independent of the valuations.
struct BudgetDistribution {
  std::vector<Rational> budgets;  // strictly increasing, positive
  std::vector<Rational> masses;   // positive, sum exactly 1

  BudgetDistribution(std::vector<Rational> budgets_in,
                     std::vector<Rational> masses_in);
  std::size_t size() const { return budgets.size(); }
  Rational survival(const Rational& a) const;  // Pr[b >= a]
};

// Discrete monotone hazard rate: g(b_i) / Pr[b >= b_i] nondecreasing.
bool is_mhr(const BudgetDistribution& dist);

Rational budget_mean(const BudgetDistribution& dist);

// Pr[b >= floor(E[b])] >= 1/e, certified against a rational enclosure of e.
CheckReport check_mhr_tail(const BudgetDistribution& dist);

// Expected revenue of the mechanism that is optimal for the public budget
// E[b], when the realized budget is drawn from the prior and the buyer picks
// his best affordable menu option.
Rational private_revenue_of_public_optimal(const DiscreteJointDistribution& vals,
                                           const BudgetDistribution& budgets);

// The 1/(2e) guarantee against the clairvoyant upper bound
// sum_b g(b) Rev^b(V), plus both monotonicity links of the chain.
CheckReport check_2e_guarantee(const DiscreteJointDistribution& vals,
                               const BudgetDistribution& budgets);

// Pretend-the-budget-is-E[b] proxies for the simple mechanisms: each earns
// at least a 1/e fraction of its public-budget optimum; the combined
// constant against the clairvoyant bound is recorded, not asserted.
CheckReport check_theorem2(const DiscreteJointDistribution& vals,
                           const BudgetDistribution& budgets);

}  // namespace budgetlab
