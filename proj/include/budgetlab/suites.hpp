#pragma once

#include <cstdint>
#include <string>

#include "budgetlab/instance.hpp"
#include "budgetlab/optimal.hpp"
#include "budgetlab/report.hpp"
#include "json.hpp"

namespace budgetlab {

struct SuiteOptions {
  bool grid_only = false;  // never attempt the exact separate-pricing oracle
  std::size_t type_limit = kDefaultTypeLimit;
  bool always_embed_instance = false;
};

bool known_suite(const std::string& name);  // theorem1|structure|duality|private|all

struct SuiteRun {
  nlohmann::json entries = nlohmann::json::array();
  std::size_t violations = 0;
};

// Runs one suite's checks on a single instance. Missing inputs for a check
// (no cap, no budget prior, ...) mark it skipped rather than failing.
SuiteRun verify_instance(const std::string& suite, const InstanceSpec& spec,
                         const SuiteOptions& options = {});

// Seeded batch of generated instances; deterministic output independent of
// the worker count. workers = 0 reads BUDGETLAB_WORKERS, falling back to the
// hardware count.
SuiteRun fuzz_suite(const std::string& suite, std::size_t count,
                    std::uint64_t seed, const SuiteOptions& options = {},
                    std::size_t workers = 0);

// Rev^b, exact and grid SRev^b, BRev^b plus witnesses for one instance.
nlohmann::json solve_instance(const InstanceSpec& spec,
                              const SuiteOptions& options = {});

// The revenue non-monotonicity example: separate-pricing optimum exactly 2
// for the first matrix, strictly below 2 for the second, the narrated buyer
// behaviors at prices (2,1,1), and the dominance coupling between the two.
SuiteRun reproduce_appendix_b();

nlohmann::json report_to_json(const CheckReport& report);

}  // namespace budgetlab
