#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "budgetlab/distribution.hpp"
#include "budgetlab/private_budget.hpp"
#include "budgetlab/rational.hpp"

namespace budgetlab {

// A parsed problem instance: an independent distribution given by marginals
// or an explicit joint support, plus the optional budget, l1 cap, and budget
// prior. All numbers are exact fraction strings on disk.
struct InstanceSpec {
  std::vector<MarginalDistribution> marginals;
  std::optional<DiscreteJointDistribution> joint;
  std::optional<Rational> budget;
  std::optional<Rational> cap;
  std::optional<BudgetDistribution> budget_dist;

  bool independent() const { return !marginals.empty(); }
  // The working joint: the explicit one, or the product of the marginals,
  // conditioned on the cap when one is present.
  DiscreteJointDistribution build_joint(
      std::size_t support_limit = kDefaultSupportLimit) const;
  // Same but without applying the cap.
  DiscreteJointDistribution base_joint(
      std::size_t support_limit = kDefaultSupportLimit) const;
};

InstanceSpec parse_instance_json(const std::string& text);
InstanceSpec parse_instance_file(const std::string& path);
std::string instance_to_json(const InstanceSpec& spec);  // canonical rendering
std::string instance_hash(const InstanceSpec& spec);     // fnv1a-64 over canonical json

struct GeneratorParams {
  int min_items = 2;
  int max_items = 3;
  int min_values = 2;
  int max_values = 3;
  long value_grid_max = 6;     // values drawn from {0..max} times a rational unit
  long denominator_bound = 8;  // mass numerators bounded before normalization
  bool with_budget = true;
  bool with_cap = false;
  bool with_budget_distribution = false;
  int budget_support_max = 3;
  std::size_t max_support = 27;  // resample until the product support fits
};

// Deterministic instance from a seed; identical across platforms.
InstanceSpec generate_instance(std::uint64_t seed, const GeneratorParams& params);

// Seed splitter for per-instance streams inside a fuzz batch.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace budgetlab
