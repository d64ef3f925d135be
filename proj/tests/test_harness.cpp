#include <random>

#include "budgetlab/errors.hpp"
#include "budgetlab/instance.hpp"
#include "budgetlab/suites.hpp"
#include "doctest.h"

using namespace budgetlab;

TEST_CASE("instance json round trip") {
  const char* text = R"({
    "items": 2,
    "marginals": [
      {"values": ["0", "2"], "masses": ["1/2", "1/2"]},
      {"values": ["1/3", "3"], "masses": ["2/5", "3/5"]}
    ],
    "budget": "5/2",
    "cap": "2"
  })";
  InstanceSpec spec = parse_instance_json(text);
  CHECK(spec.independent());
  CHECK(spec.marginals.size() == 2);
  CHECK(*spec.budget == rat(5, 2));
  CHECK(*spec.cap == 2);
  InstanceSpec again = parse_instance_json(instance_to_json(spec));
  CHECK(instance_to_json(again) == instance_to_json(spec));
  CHECK(instance_hash(again) == instance_hash(spec));
}

TEST_CASE("explicit joint block") {
  const char* text = R"({
    "joint": {
      "support": [["2","0","0"], ["0","1","1"], ["2","1","0"]],
      "masses": ["1/3", "1/3", "1/3"]
    },
    "budget": "2"
  })";
  InstanceSpec spec = parse_instance_json(text);
  CHECK_FALSE(spec.independent());
  auto joint = spec.build_joint();
  CHECK(joint.num_types() == 3);
  CHECK(joint.num_items() == 3);
}

TEST_CASE("strict parsing rejects decimals and malformed input") {
  CHECK_THROWS_AS(parse_instance_json("{\"marginals\": [], \"budget\": 2}"),
                  ParseError);
  CHECK_THROWS_AS(
      parse_instance_json(
          R"({"marginals": [{"values": ["0.5"], "masses": ["1"]}]})"),
      ParseError);
  CHECK_THROWS_AS(parse_instance_json("not json"), ParseError);
  CHECK_THROWS_AS(parse_instance_json("{}"), ParseError);
  CHECK_THROWS_AS(
      parse_instance_json(
          R"({"marginals": [{"values": ["1"], "masses": ["1"]}],
              "joint": {"support": [["1"]], "masses": ["1"]}})"),
      ParseError);
}

TEST_CASE("generator is deterministic and valid") {
  GeneratorParams params;
  params.with_cap = true;
  params.with_budget_distribution = true;
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    InstanceSpec a = generate_instance(seed, params);
    InstanceSpec b = generate_instance(seed, params);
    CHECK(instance_to_json(a) == instance_to_json(b));
  }
}

TEST_CASE("generated instances satisfy the distribution invariants") {
  GeneratorParams params;
  params.with_cap = true;
  for (int i = 0; i < 1000; ++i) {
    InstanceSpec spec = generate_instance(split_seed(31337, i), params);
    auto joint = spec.build_joint();
    Rational total = 0;
    for (std::size_t t = 0; t < joint.num_types(); ++t) total += joint.mass(t);
    CHECK(total == 1);
    CHECK(joint.num_types() <= params.max_support);
    REQUIRE(spec.budget.has_value());
    CHECK(sgn(*spec.budget) > 0);
  }
}

TEST_CASE("fuzz batches are deterministic and order-independent") {
  SuiteOptions options;
  auto a = fuzz_suite("duality", 6, 123, options, 1);
  auto b = fuzz_suite("duality", 6, 123, options, 3);
  CHECK(a.entries.dump() == b.entries.dump());
  CHECK(a.violations == b.violations);

  auto empty = fuzz_suite("duality", 0, 5);
  CHECK(empty.violations == 0);
  CHECK(empty.entries.empty());
}

TEST_CASE("appendix b reproduction is violation free") {
  auto run = reproduce_appendix_b();
  CHECK(run.violations == 0);
  CHECK(run.entries[0]["srev_v1"] == "2");
  CHECK(run.entries[0]["srev_v2"] == "5/3");
}

TEST_CASE("solve produces consistent fields") {
  InstanceSpec spec = parse_instance_json(R"({
    "marginals": [
      {"values": ["1", "2"], "masses": ["1/2", "1/2"]},
      {"values": ["0", "3"], "masses": ["1/3", "2/3"]}
    ],
    "budget": "2"
  })");
  auto report = solve_instance(spec);
  CHECK(report["optimal"]["value"].is_string());
  CHECK(report["separate_exact"].contains("value"));
  // the grid is a certified lower bound on the exact optimum
  Rational exact = parse_fraction(report["separate_exact"]["value"].get<std::string>());
  Rational grid = parse_fraction(report["separate_grid"]["value"].get<std::string>());
  Rational optimal = parse_fraction(report["optimal"]["value"].get<std::string>());
  Rational bundle = parse_fraction(report["bundle"]["value"].get<std::string>());
  CHECK(grid <= exact);
  CHECK(exact <= optimal);
  CHECK(bundle <= optimal);
  CHECK(optimal <= 2);

  SuiteOptions grid_only;
  grid_only.grid_only = true;
  auto report2 = solve_instance(spec, grid_only);
  CHECK(report2["separate_exact"].contains("skipped"));
}

TEST_CASE("unknown suites are rejected") {
  InstanceSpec spec = parse_instance_json(
      R"({"marginals": [{"values": ["1"], "masses": ["1"]}], "budget": "1"})");
  CHECK_THROWS_AS(verify_instance("bogus", spec), Error);
}
