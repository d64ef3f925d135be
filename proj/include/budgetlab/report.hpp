#pragma once

#include <string>
#include <utility>
#include <vector>

#include "budgetlab/rational.hpp"

namespace budgetlab {

// One verified inequality: pass/fail with its exact slack (rhs - lhs).
struct CheckResult {
  std::string name;
  bool applicable = true;  // false: hypothesis not met, check skipped
  bool pass = true;
  Rational slack = 0;
  std::string note;
};

struct CheckReport {
  std::vector<CheckResult> checks;

  // records lhs <= rhs
  void require_le(const std::string& name, const Rational& lhs,
                  const Rational& rhs, const std::string& note = "") {
    CheckResult r;
    r.name = name;
    r.pass = lhs <= rhs;
    r.slack = rhs - lhs;
    r.note = note;
    checks.push_back(std::move(r));
  }

  // records lhs < rhs
  void require_lt(const std::string& name, const Rational& lhs,
                  const Rational& rhs, const std::string& note = "") {
    CheckResult r;
    r.name = name;
    r.pass = lhs < rhs;
    r.slack = rhs - lhs;
    r.note = note;
    checks.push_back(std::move(r));
  }

  void require(const std::string& name, bool pass, const std::string& note = "") {
    CheckResult r;
    r.name = name;
    r.pass = pass;
    r.note = note;
    checks.push_back(std::move(r));
  }

  void skip(const std::string& name, const std::string& why) {
    CheckResult r;
    r.name = name;
    r.applicable = false;
    r.pass = true;
    r.note = why;
    checks.push_back(std::move(r));
  }

  void merge(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }

  bool all_pass() const {
    for (const CheckResult& r : checks) {
      if (r.applicable && !r.pass) return false;
    }
    return true;
  }

  std::size_t violations() const {
    std::size_t count = 0;
    for (const CheckResult& r : checks) {
      if (r.applicable && !r.pass) ++count;
    }
    return count;
  }
};

}  // namespace budgetlab
