#pragma once

#include <map>
#include <optional>
#include <vector>

#include "budgetlab/distribution.hpp"
#include "budgetlab/rational.hpp"
#include "budgetlab/report.hpp"

namespace budgetlab {

// A dominance witness: weights[i] maps support indices of the dominated
// distribution to the mass moved there from point i of the dominating one.
struct Coupling {
  std::vector<std::map<std::size_t, Rational>> weights;
};

struct DominanceResult {
  bool dominates = false;
  std::optional<Coupling> coupling;
  // Farkas certificate over the transportation rows when not dominated
  // (rows: one per point of each distribution, upper block first).
  std::vector<Rational> farkas;
};

// Decides whether `upper` coordinate-wise stochastically dominates `lower`
// by solving the transportation feasibility LP restricted to pairs with
// lower_point <= upper_point coordinate-wise.
DominanceResult check_dominance(const DiscreteJointDistribution& upper,
                                const DiscreteJointDistribution& lower);

// Exact validity of a coupling: marginal residuals zero, weights positive,
// and every weighted pair ordered coordinate-wise.
bool verify_coupling(const DiscreteJointDistribution& upper,
                     const DiscreteJointDistribution& lower,
                     const Coupling& coupling);

// Sub-multiplicative tail of the capped sum: for an independent distribution
// with every coordinate at most `cap`,
//   Pr[||v||1 >= x+y+cap] <= Pr[||v||1 >= x] * Pr[||v||1 >= y]
// over the grid of achievable positive sums, plus the geometric corollary
//   Pr[||v||1 >= (2k+1) cap] <= q^k * Pr[||v||1 >= cap] with q = Pr[||v||1 >= cap].
CheckReport check_tail_bound(const std::vector<MarginalDistribution>& capped,
                             const Rational& cap);

// Verifies every link of the first proof on one instance: the cap-and-split
// bounds, the conditional tail lemma, monotonicity under capping, the
// black-box budget-free bound, and both final constants. Requires an
// instance small enough for every exact oracle.
CheckReport check_theorem1_chain(const std::vector<MarginalDistribution>& marginals,
                                 const Rational& budget);

// Dominance couplings for conditioned distributions: V|c1 <= V|c2 (c1 <= c2)
// and V|c <= V.
CheckReport check_dominance_lemmas(const std::vector<MarginalDistribution>& marginals,
                                   const Rational& c1, const Rational& c2);

}  // namespace budgetlab
