#pragma once

#include <cstdint>
#include <vector>

#include "budgetlab/distribution.hpp"
#include "budgetlab/rational.hpp"

namespace budgetlab {

inline constexpr std::size_t kKnapsackItemLimit = 20;

struct PriceVector {
  std::vector<Rational> prices;  // one nonnegative price per item
};

struct BundleChoice {
  std::vector<std::size_t> items;  // ascending item indices
  Rational payment = 0;
  Rational utility = 0;
};

// The budgeted buyer's purchase under posted item prices: an affordable
// subset maximizing total value minus total price. Ties prefer the higher
// payment, then the lexicographically smallest item sequence; an indifferent
// buyer buys. Exhaustive over 2^m subsets.
BundleChoice buyer_knapsack(const std::vector<Rational>& type,
                            const PriceVector& prices, const Rational& budget);

// Expected payment of posted item prices against a joint distribution.
Rational item_pricing_revenue(const DiscreteJointDistribution& dist,
                              const PriceVector& prices, const Rational& budget);

struct PostedPrice {
  Rational value;
  Rational price;
};

// Best grand-bundle price not exceeding the budget. The candidate prices are
// the distinct values of ||t||_1 within [0, b] plus b itself, which is exact
// because the survival function of the sum is a right-continuous step
// function of the price.
PostedPrice brev_budget(const DiscreteJointDistribution& dist, const Rational& budget);
PostedPrice brev_unbudgeted(const DiscreteJointDistribution& dist);

// Optimal single-item posted price over the marginal's support.
PostedPrice best_posted_price(const MarginalDistribution& marginal);

// Budget-free separate pricing: per-item optimal posted prices on the
// marginals. Valid for correlated joints as well, because an additive buyer
// without a budget decides item by item.
struct ItemPricing {
  Rational value;
  PriceVector prices;
};
ItemPricing srev_unbudgeted(const DiscreteJointDistribution& dist);

// Per-item optimal posted revenues r_j (summing to SRev without budget).
std::vector<PostedPrice> per_item_posted(const DiscreteJointDistribution& dist);

// Exact budgeted separate-pricing optimum by exhaustive cell enumeration:
// every downward-closed affordability pattern over bundles, and per type a
// chosen affordable bundle, yield linear constraints on prices; each
// consistent cell is optimized by an exact LP and the best cell wins. Weak
// inequalities realize the supremum under the seller-favoring tie-break, and
// the returned prices attain the value exactly.
struct SrevLimits {
  std::size_t max_items = 3;
  std::size_t node_budget = 2000000;  // LP solves before giving up
};
ItemPricing srev_budget_exact(const DiscreteJointDistribution& dist,
                              const Rational& budget, const SrevLimits& limits = {});

// Certified lower bound: the best expected payment over a finite price grid
// (item support values, b, b/2, and b minus sums of up to m-1 candidates,
// clipped to [0, b]).
struct GridOptions {
  // 0 means the per-item default (generous for one item, tighter for three).
  std::size_t max_candidates_per_item = 0;
};
ItemPricing srev_budget_grid(const DiscreteJointDistribution& dist,
                             const Rational& budget, const GridOptions& options = {});

}  // namespace budgetlab
