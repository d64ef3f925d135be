#include "budgetlab/suites.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

#include "budgetlab/duality.hpp"
#include "budgetlab/errors.hpp"
#include "budgetlab/optimal.hpp"
#include "budgetlab/private_budget.hpp"
#include "budgetlab/simple.hpp"
#include "budgetlab/structure.hpp"

namespace budgetlab {

using nlohmann::json;

nlohmann::json report_to_json(const CheckReport& report) {
  json rows = json::array();
  for (const CheckResult& r : report.checks) {
    json row;
    row["lemma"] = r.name;
    row["pass"] = r.pass;
    row["applicable"] = r.applicable;
    row["slack"] = fraction_string(r.slack);
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  return rows;
}

bool known_suite(const std::string& name) {
  return name == "theorem1" || name == "structure" || name == "duality" ||
         name == "private" || name == "all";
}

namespace {

json mechanism_to_json(const Mechanism& mech) {
  json options = json::array();
  for (const MenuOption& opt : mech.options) {
    json alloc = json::array();
    for (const Rational& a : opt.allocation) alloc.push_back(fraction_string(a));
    options.push_back(json{{"allocation", alloc},
                           {"payment", fraction_string(opt.payment)}});
  }
  json out{{"options", options}};
  if (mech.budget) out["budget"] = fraction_string(*mech.budget);
  return out;
}

json prices_to_json(const PriceVector& prices) {
  json out = json::array();
  for (const Rational& p : prices.prices) out.push_back(fraction_string(p));
  return out;
}

CheckReport run_theorem1(const InstanceSpec& spec) {
  CheckReport report;
  if (!spec.independent() || !spec.budget) {
    report.skip("theorem1_chain", "needs an independent distribution and a budget");
    return report;
  }
  return check_theorem1_chain(spec.marginals, *spec.budget);
}

CheckReport run_structure(const InstanceSpec& spec) {
  CheckReport report;
  if (!spec.independent()) {
    report.skip("structure", "needs an independent distribution");
    return report;
  }
  std::optional<Rational> cap = spec.cap;
  if (!cap) cap = spec.budget;
  if (!cap) {
    report.skip("structure", "needs a cap or a budget");
    return report;
  }
  auto capped = cap_linf(spec.marginals, *cap);
  report.merge(check_tail_bound(*capped.marginals(), *cap));

  auto base = product(spec.marginals);
  if (base.min_type_sum() > *cap) {
    report.skip("dominance_lemmas", "no mass under the tighter cap");
  } else {
    Rational hi = std::max(*cap, Rational((*cap + base.max_type_sum()) / 2));
    report.merge(check_dominance_lemmas(spec.marginals, *cap, hi));
  }
  return report;
}

CheckReport run_duality(const InstanceSpec& spec, json* lambda_dump) {
  CheckReport report;
  if (!spec.independent() || !spec.cap) {
    report.skip("duality", "needs an independent distribution and a cap");
    return report;
  }
  auto conditioned = spec.build_joint();
  CanonicalFlow flow = build_canonical_flow(conditioned);
  report.merge(check_flow_properties(conditioned, flow));
  report.merge(check_core_tail_lemmas(conditioned));
  report.merge(check_variance_lemma(conditioned));
  if (lambda_dump && conditioned.num_types() <= 16) {
    json rows = json::array();
    for (const auto& [edge, w] : flow.lambda) {
      rows.push_back(json{{"from", edge.first},
                          {"to", edge.second},
                          {"weight", fraction_string(w)}});
    }
    *lambda_dump = std::move(rows);
  }
  return report;
}

CheckReport run_private(const InstanceSpec& spec) {
  CheckReport report;
  if (!spec.budget_dist) {
    report.skip("private", "needs a budget distribution");
    return report;
  }
  auto joint = spec.base_joint();
  report.merge(check_mhr_tail(*spec.budget_dist));
  report.merge(check_2e_guarantee(joint, *spec.budget_dist));
  report.merge(check_theorem2(joint, *spec.budget_dist));
  return report;
}

}  // namespace

SuiteRun verify_instance(const std::string& suite, const InstanceSpec& spec,
                         const SuiteOptions& options) {
  if (!known_suite(suite)) throw Error("unknown suite: " + suite);
  CheckReport report;
  json lambda_dump;
  if (suite == "theorem1" || suite == "all") report.merge(run_theorem1(spec));
  if (suite == "structure" || suite == "all") report.merge(run_structure(spec));
  if (suite == "duality" || suite == "all") report.merge(run_duality(spec, &lambda_dump));
  if (suite == "private" || suite == "all") report.merge(run_private(spec));

  SuiteRun run;
  json entry;
  entry["suite"] = suite;
  entry["instance_hash"] = instance_hash(spec);
  entry["checks"] = report_to_json(report);
  entry["violations"] = report.violations();
  if (!lambda_dump.is_null()) entry["lambda"] = std::move(lambda_dump);
  if (report.violations() > 0 || options.always_embed_instance) {
    entry["instance"] = json::parse(instance_to_json(spec));
  }
  run.entries.push_back(std::move(entry));
  run.violations = report.violations();
  return run;
}

namespace {

GeneratorParams fuzz_params(const std::string& suite) {
  GeneratorParams p;
  if (suite == "theorem1") {
    p.max_support = 9;  // every oracle in the chain is exact
  } else if (suite == "structure") {
    p.with_cap = true;
    p.max_support = 27;
  } else if (suite == "duality") {
    p.with_cap = true;
    p.max_support = 27;
  } else if (suite == "private") {
    p.min_items = 1;
    p.max_items = 2;
    p.max_support = 9;
    p.with_budget_distribution = true;
  } else {  // all
    p.with_cap = true;
    p.with_budget_distribution = true;
    p.max_support = 9;
  }
  return p;
}

std::size_t resolve_workers(std::size_t requested, std::size_t count) {
  std::size_t workers = requested;
  if (workers == 0) {
    if (const char* env = std::getenv("BUDGETLAB_WORKERS")) {
      workers = static_cast<std::size_t>(std::atol(env));
    }
  }
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  return std::min(workers, std::max<std::size_t>(count, 1));
}

}  // namespace

SuiteRun fuzz_suite(const std::string& suite, std::size_t count,
                    std::uint64_t seed, const SuiteOptions& options,
                    std::size_t workers) {
  if (!known_suite(suite)) throw Error("unknown suite: " + suite);
  GeneratorParams params = fuzz_params(suite);

  std::vector<json> entries(count);
  std::vector<std::size_t> violations(count, 0);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      std::uint64_t child = split_seed(seed, i);
      json entry;
      try {
        InstanceSpec spec = generate_instance(child, params);
        SuiteRun one = verify_instance(suite, spec, options);
        entry = one.entries[0];
        violations[i] = one.violations;
      } catch (const std::exception& e) {
        entry["suite"] = suite;
        entry["error"] = e.what();
        violations[i] = 1;
      }
      entry["index"] = i;
      entry["seed"] = child;
      entries[i] = std::move(entry);
    }
  };
  std::size_t pool = resolve_workers(workers, count);
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w + 1 < pool; ++w) threads.emplace_back(work);
  work();
  for (auto& t : threads) t.join();

  SuiteRun run;
  for (std::size_t i = 0; i < count; ++i) {
    run.entries.push_back(std::move(entries[i]));
    run.violations += violations[i];
  }
  return run;
}

json solve_instance(const InstanceSpec& spec, const SuiteOptions& options) {
  if (!spec.budget) throw Error("solve needs a budget");
  auto joint = spec.build_joint();
  const Rational& budget = *spec.budget;

  json out;
  out["instance_hash"] = instance_hash(spec);
  out["items"] = joint.num_items();
  out["types"] = joint.num_types();
  out["budget"] = fraction_string(budget);

  auto best = rev_budget(joint, budget, options.type_limit);
  out["optimal"] = json{{"value", fraction_string(best.value)},
                        {"mechanism", mechanism_to_json(best.mechanism)}};

  auto bundle = brev_budget(joint, budget);
  out["bundle"] = json{{"value", fraction_string(bundle.value)},
                       {"price", fraction_string(bundle.price)}};

  auto grid = srev_budget_grid(joint, budget);
  out["separate_grid"] = json{{"value", fraction_string(grid.value)},
                              {"prices", prices_to_json(grid.prices)}};

  if (options.grid_only) {
    out["separate_exact"] = json{{"skipped", "grid-only requested"}};
  } else {
    try {
      auto exact = srev_budget_exact(joint, budget);
      out["separate_exact"] = json{{"value", fraction_string(exact.value)},
                                   {"prices", prices_to_json(exact.prices)}};
    } catch (const TooLarge& e) {
      out["separate_exact"] = json{{"skipped", e.what()}};
    }
  }

  out["decimal"] = json{{"optimal", to_double(best.value)},
                        {"bundle", to_double(bundle.value)},
                        {"separate_grid", to_double(grid.value)}};
  return out;
}

SuiteRun reproduce_appendix_b() {
  auto rows_joint = [](std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rational>> support;
    std::vector<Rational> masses;
    for (const auto& row : rows) {
      std::vector<Rational> t;
      for (long x : row) t.push_back(rat(x));
      support.push_back(std::move(t));
      masses.push_back(rat(1, 3));
    }
    return DiscreteJointDistribution(3, std::move(support), std::move(masses));
  };
  auto v1 = rows_joint({{2, 0, 0}, {0, 1, 1}, {2, 1, 0}});
  auto v2 = rows_joint({{2, 0, 0}, {0, 1, 1}, {2, 2, 0}});
  Rational budget = 2;
  PriceVector witness{{rat(2), rat(1), rat(1)}};

  CheckReport report;
  auto s1 = srev_budget_exact(v1, budget);
  report.require("srev_v1_equals_2", s1.value == 2,
                 "exact value " + fraction_string(s1.value));
  report.require("witness_prices_attain_2",
                 item_pricing_revenue(v1, witness, budget) == 2);

  auto b1 = buyer_knapsack({rat(2), rat(0), rat(0)}, witness, budget);
  report.require("type1_buys_first_item",
                 b1.items == std::vector<std::size_t>{0} && b1.payment == 2);
  auto b2 = buyer_knapsack({rat(0), rat(1), rat(1)}, witness, budget);
  report.require("type2_buys_last_two",
                 b2.items == std::vector<std::size_t>{1, 2} && b2.payment == 2);
  auto b3 = buyer_knapsack({rat(2), rat(1), rat(0)}, witness, budget);
  report.require("type3_buys_first_item",
                 b3.items == std::vector<std::size_t>{0} && b3.payment == 2);
  auto b4 = buyer_knapsack({rat(2), rat(2), rat(0)}, witness, budget);
  report.require("modified_type_buys_second_item_only",
                 b4.items == std::vector<std::size_t>{1} && b4.payment == 1);

  auto s2 = srev_budget_exact(v2, budget);
  report.require_lt("srev_v2_strictly_below_2", s2.value, rat(2));
  report.require("srev_v2_exact_value", s2.value == rat(5, 3),
                 "exact value " + fraction_string(s2.value));

  auto dom = check_dominance(v2, v1);
  report.require("dominance_coupling_found", dom.dominates);

  SuiteRun run;
  json entry;
  entry["suite"] = "appendix-b";
  entry["checks"] = report_to_json(report);
  entry["violations"] = report.violations();
  entry["srev_v1"] = fraction_string(s1.value);
  entry["srev_v2"] = fraction_string(s2.value);
  run.entries.push_back(std::move(entry));
  run.violations = report.violations();
  return run;
}

}  // namespace budgetlab
