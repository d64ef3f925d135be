#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "budgetlab/rational.hpp"

namespace budgetlab {

inline constexpr std::size_t kDefaultSupportLimit = 1000000;

// One item's value distribution: strictly increasing nonnegative values with
// positive masses summing to exactly 1.
struct MarginalDistribution {
  std::vector<Rational> values;
  std::vector<Rational> masses;

  MarginalDistribution(std::vector<Rational> values_in,
                       std::vector<Rational> masses_in);

  std::size_t size() const { return values.size(); }
  Rational survival(const Rational& a) const;  // Pr[v >= a]
  Rational cdf(const Rational& a) const;       // Pr[v <= a]
  Rational max_value() const { return values.back(); }
};

// Finite joint valuation distribution with canonical (lexicographically
// sorted) support, positive masses summing to exactly 1.
class DiscreteJointDistribution {
 public:
  struct WeaklyCorrelatedTag {
    std::vector<MarginalDistribution> base;  // independent base distribution
    Rational cap;                            // l1 cap c
  };

  DiscreteJointDistribution(std::size_t num_items,
                            std::vector<std::vector<Rational>> support,
                            std::vector<Rational> masses);

  std::size_t num_items() const { return num_items_; }
  std::size_t num_types() const { return support_.size(); }
  const std::vector<std::vector<Rational>>& support() const { return support_; }
  const std::vector<Rational>& masses() const { return masses_; }
  const std::vector<Rational>& type(std::size_t i) const { return support_[i]; }
  const Rational& mass(std::size_t i) const { return masses_[i]; }

  const std::optional<std::vector<MarginalDistribution>>& marginals() const {
    return marginals_;
  }
  const std::optional<WeaklyCorrelatedTag>& weakly_correlated() const {
    return tag_;
  }

  Rational type_sum(std::size_t i) const;
  Rational max_type_sum() const;
  Rational min_type_sum() const;
  // Pr[ ||v||_1 >= x ]
  Rational sum_survival(const Rational& x) const;
  // distinct values of ||t||_1 in increasing order
  std::vector<Rational> distinct_sums() const;
  // distinct values of coordinate j in increasing order
  std::vector<Rational> distinct_values(std::size_t item) const;

  void attach_marginals(std::vector<MarginalDistribution> marginals);
  void attach_tag(WeaklyCorrelatedTag tag);

 private:
  std::size_t num_items_;
  std::vector<std::vector<Rational>> support_;
  std::vector<Rational> masses_;
  std::optional<std::vector<MarginalDistribution>> marginals_;
  std::optional<WeaklyCorrelatedTag> tag_;
};

// Cartesian product of marginals; mass of a type is the product of the
// per-item masses. Throws SupportTooLarge past the limit.
DiscreteJointDistribution product(const std::vector<MarginalDistribution>& marginals,
                                  std::size_t support_limit = kDefaultSupportLimit);

// min(v, bound) applied to one marginal, masses of collided values merged.
MarginalDistribution cap_values(const MarginalDistribution& marginal,
                                const Rational& bound);

// l-infinity capping of an independent distribution given by its marginals;
// the result is independent and carries its marginals.
DiscreteJointDistribution cap_linf(const std::vector<MarginalDistribution>& marginals,
                                   const Rational& bound,
                                   std::size_t support_limit = kDefaultSupportLimit);

// Conditions on ||v||_1 <= cap and renormalizes exactly. The result carries a
// weakly-correlated tag whenever the input is independent or already tagged.
DiscreteJointDistribution condition_l1(const DiscreteJointDistribution& joint,
                                       const Rational& cap);

// Marginal distribution of one coordinate.
MarginalDistribution marginal_of(const DiscreteJointDistribution& joint,
                                 std::size_t item);

// Distribution of v_item conditioned on v_{-item} = others (an (m-1)-vector
// in coordinate order with item skipped).
MarginalDistribution conditional_marginal(const DiscreteJointDistribution& joint,
                                          std::size_t item,
                                          const std::vector<Rational>& others);

}  // namespace budgetlab
