#pragma once

#include "budgetlab/distribution.hpp"
#include "budgetlab/mechanism.hpp"
#include "budgetlab/rational.hpp"

namespace budgetlab {

inline constexpr std::size_t kDefaultTypeLimit = 64;

struct OptimalRevenue {
  Rational value;
  Mechanism mechanism;
};

// Exact optimal truthful revenue for a buyer with a public budget: the
// exponential-size IC/IR LP over all reported types, solved on rationals.
OptimalRevenue rev_budget(const DiscreteJointDistribution& dist,
                          const Rational& budget,
                          std::size_t type_limit = kDefaultTypeLimit);

// Budget-free optimum; implemented with the never-binding budget
// max_t ||t||_1 (IR already caps any payment by the type's sum).
OptimalRevenue rev_unbudgeted(const DiscreteJointDistribution& dist,
                              std::size_t type_limit = kDefaultTypeLimit);

}  // namespace budgetlab
