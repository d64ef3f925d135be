#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "budgetlab/errors.hpp"
#include "budgetlab/suites.hpp"

namespace {

using budgetlab::SuiteRun;

void print_checks(const nlohmann::json& entries, std::ostream& out) {
  for (const auto& entry : entries) {
    if (entry.contains("error")) {
      out << "instance " << entry.value("index", 0) << ": error "
          << entry["error"].get<std::string>() << "\n";
      continue;
    }
    std::string hash = entry.value("instance_hash", std::string("-"));
    for (const auto& row : entry["checks"]) {
      std::string status = !row["applicable"].get<bool>() ? "skip"
                           : row["pass"].get<bool>()      ? "pass"
                                                          : "FAIL";
      out << status << "  " << row["lemma"].get<std::string>() << "  [" << hash
          << "]";
      if (row.contains("slack") && status != "skip") {
        out << "  slack=" << row["slack"].get<std::string>();
      }
      if (row.contains("note")) out << "  (" << row["note"].get<std::string>() << ")";
      out << "\n";
    }
  }
}

int finish(const SuiteRun& run, bool as_json) {
  if (as_json) {
    std::cout << run.entries.dump(2) << "\n";
  } else {
    print_checks(run.entries, std::cout);
    std::cout << (run.violations == 0 ? "all checks passed"
                                      : "violations: " + std::to_string(run.violations))
              << "\n";
  }
  return run.violations == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact laboratory for budget-constrained selling mechanisms"};
  app.require_subcommand(1);

  std::string file, suite = "all";
  bool as_json = false, grid_only = false;
  std::size_t limit_support = budgetlab::kDefaultTypeLimit;

  auto* solve = app.add_subcommand("solve", "optimal and simple revenues for an instance");
  solve->add_option("file", file, "instance json file")->required();
  solve->add_flag("--json", as_json, "print the full json report");
  solve->add_flag("--grid-only", grid_only, "skip the exact separate-pricing oracle");
  solve->add_option("--limit-support", limit_support, "type-space guard for the LP");

  auto* verify = app.add_subcommand("verify", "run a lemma suite on an instance");
  verify->add_option("--suite", suite, "theorem1|structure|duality|private|all")
      ->required();
  verify->add_option("file", file, "instance json file")->required();
  verify->add_flag("--json", as_json, "print the full json report");

  std::size_t count = 10;
  std::uint64_t seed = 1;
  auto* fuzz = app.add_subcommand("fuzz", "run a suite on generated instances");
  fuzz->add_option("--suite", suite, "theorem1|structure|duality|private|all")
      ->required();
  fuzz->add_option("--count", count, "number of instances");
  fuzz->add_option("--seed", seed, "batch seed");
  fuzz->add_flag("--json", as_json, "print the full json report");

  std::string target;
  auto* reproduce = app.add_subcommand("reproduce", "rebuild a worked example");
  reproduce->add_option("target", target, "appendix-b")->required();
  reproduce->add_flag("--json", as_json, "print the full json report");

  CLI11_PARSE(app, argc, argv);

  try {
    budgetlab::SuiteOptions options;
    options.grid_only = grid_only;
    options.type_limit = limit_support;
    if (solve->parsed()) {
      auto spec = budgetlab::parse_instance_file(file);
      auto report = budgetlab::solve_instance(spec, options);
      if (as_json) {
        std::cout << report.dump(2) << "\n";
      } else {
        std::cout << "optimal revenue: " << report["optimal"]["value"].get<std::string>()
                  << "\n";
        if (report["separate_exact"].contains("value")) {
          std::cout << "separate pricing (exact): "
                    << report["separate_exact"]["value"].get<std::string>() << "\n";
        } else {
          std::cout << "separate pricing (exact): skipped -- "
                    << report["separate_exact"]["skipped"].get<std::string>() << "\n";
        }
        std::cout << "separate pricing (grid lower bound): "
                  << report["separate_grid"]["value"].get<std::string>() << "\n";
        std::cout << "grand bundle: " << report["bundle"]["value"].get<std::string>()
                  << " at price " << report["bundle"]["price"].get<std::string>()
                  << "\n";
      }
      return 0;
    }
    if (verify->parsed()) {
      auto spec = budgetlab::parse_instance_file(file);
      budgetlab::SuiteOptions vopts = options;
      vopts.always_embed_instance = as_json;
      return finish(budgetlab::verify_instance(suite, spec, vopts), as_json);
    }
    if (fuzz->parsed()) {
      return finish(budgetlab::fuzz_suite(suite, count, seed, options), as_json);
    }
    if (reproduce->parsed()) {
      if (target != "appendix-b") {
        std::cerr << "unknown reproduction target: " << target << "\n";
        return 2;
      }
      return finish(budgetlab::reproduce_appendix_b(), as_json);
    }
  } catch (const budgetlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
