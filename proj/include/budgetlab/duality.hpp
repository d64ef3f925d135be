#pragma once

#include <map>
#include <utility>
#include <vector>

#include "budgetlab/distribution.hpp"
#include "budgetlab/mechanism.hpp"
#include "budgetlab/rational.hpp"
#include "budgetlab/report.hpp"

namespace budgetlab {

// Per type, the favorite item: the smallest index attaining the maximum
// coordinate, so the regions partition the support.
struct Regions {
  std::vector<std::size_t> favorite;
};
Regions compute_regions(const DiscreteJointDistribution& dist);

// Discrete Myerson virtual values with the top value mapped to itself,
// ironed nondecreasing by mass-weighted averaging over maximal violating
// runs (pool-adjacent-violators on the revenue curve).
struct IronedVirtualValue {
  std::vector<Rational> values;  // ascending support
  std::vector<Rational> masses;
  std::vector<Rational> raw;
  std::vector<Rational> ironed;

  Rational ironed_at(const Rational& value) const;
};
IronedVirtualValue ironed_virtuals(const MarginalDistribution& marginal);

// Lagrangian multipliers arranged as flow between types: within each region,
// flow runs down the favorite coordinate's chains, carrying the conditional
// upper-tail mass, with ironing cycles added along each chain. The excess at
// every node drains to the sink. Virtual-value vectors are re-derived from
// the multipliers so conservation and both canonical-flow properties can be
// re-checked from scratch.
struct CanonicalFlow {
  std::map<std::pair<std::size_t, std::size_t>, Rational> lambda;
  std::vector<Rational> sink;
  std::vector<std::vector<Rational>> virtuals;  // Phi(t) per type
};
CanonicalFlow build_canonical_flow(const DiscreteJointDistribution& dist);

// Structural invariants of a flow: exact conservation at every node,
// region-respecting support of the multipliers, Phi_j(t) = t_j outside the
// favorite coordinate, and Phi_j(t) bounded by the conditional ironed
// virtual value inside it.
CheckReport check_flow_properties(const DiscreteJointDistribution& dist,
                                  const CanonicalFlow& flow);

// The three-term upper bound on optimal revenue evaluated at a mechanism's
// allocation rule, split at twice the separate-pricing revenue.
struct Decomposition {
  Rational single;
  Rational core;
  Rational tail;
  Rational threshold_revenue;  // r = SRev of the distribution
};
Decomposition decompose(const DiscreteJointDistribution& dist,
                        const Mechanism& mech);

// The decomposition bounds for a weakly correlated distribution:
// Single <= 2 BRev + SRev, Tail <= SRev, Core <= 2 BRev + 3 SRev, the
// aggregate Rev <= 5 SRev + 4 BRev, and soundness of the upper bound.
CheckReport check_core_tail_lemmas(const DiscreteJointDistribution& dist);

// Concentration of the truncated sum s_j = min(v_j, 2r): pairwise negative
// correlation, per-item variance at most 4 r r_j, and total variance at most
// 4 r^2.
CheckReport check_variance_lemma(const DiscreteJointDistribution& dist);

}  // namespace budgetlab
