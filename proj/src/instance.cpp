#include "budgetlab/instance.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "budgetlab/errors.hpp"
#include "json.hpp"

namespace budgetlab {

using nlohmann::json;

DiscreteJointDistribution InstanceSpec::base_joint(std::size_t support_limit) const {
  if (joint) return *joint;
  if (marginals.empty()) throw Error("instance has no distribution");
  return product(marginals, support_limit);
}

DiscreteJointDistribution InstanceSpec::build_joint(std::size_t support_limit) const {
  DiscreteJointDistribution base = base_joint(support_limit);
  if (cap) return condition_l1(base, *cap);
  return base;
}

namespace {

Rational parse_field(const json& j, const std::string& where) {
  if (!j.is_string()) {
    throw ParseError(where + " must be an exact fraction string");
  }
  return parse_fraction(j.get<std::string>());
}

std::vector<Rational> parse_fractions(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  std::vector<Rational> out;
  for (const auto& item : j) out.push_back(parse_field(item, where));
  return out;
}

}  // namespace

InstanceSpec parse_instance_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("instance must be a json object");
  InstanceSpec spec;
  std::size_t items = 0;
  if (root.contains("items")) {
    if (!root["items"].is_number_unsigned()) {
      throw ParseError("items must be a nonnegative integer");
    }
    items = root["items"].get<std::size_t>();
  }

  const bool has_marginals = root.contains("marginals");
  const bool has_joint = root.contains("joint");
  if (has_marginals == has_joint) {
    throw ParseError("exactly one of marginals/joint is required");
  }
  try {
    if (has_marginals) {
      for (const auto& m : root["marginals"]) {
        spec.marginals.emplace_back(parse_fractions(m.at("values"), "values"),
                                    parse_fractions(m.at("masses"), "masses"));
      }
      if (items != 0 && items != spec.marginals.size()) {
        throw ParseError("items does not match the marginal count");
      }
    } else {
      const auto& jj = root["joint"];
      if (!jj.contains("support") || !jj.contains("masses")) {
        throw ParseError("joint needs support and masses");
      }
      std::vector<std::vector<Rational>> support;
      for (const auto& row : jj["support"]) {
        support.push_back(parse_fractions(row, "support"));
      }
      std::vector<Rational> masses = parse_fractions(jj["masses"], "masses");
      if (support.empty()) throw ParseError("joint support is empty");
      std::size_t width = support[0].size();
      if (items != 0 && items != width) {
        throw ParseError("items does not match the joint arity");
      }
      spec.joint = DiscreteJointDistribution(width, std::move(support),
                                             std::move(masses));
    }
    if (root.contains("budget")) spec.budget = parse_field(root["budget"], "budget");
    if (root.contains("cap")) spec.cap = parse_field(root["cap"], "cap");
    if (root.contains("budget_distribution")) {
      const auto& bd = root["budget_distribution"];
      spec.budget_dist = BudgetDistribution(
          parse_fractions(bd.at("budgets"), "budgets"),
          parse_fractions(bd.at("masses"), "budget masses"));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  } catch (const Error&) {
    throw;
  }
  return spec;
}

InstanceSpec parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_instance_json(buf.str());
}

std::string instance_to_json(const InstanceSpec& spec) {
  json root;
  if (!spec.marginals.empty()) {
    root["items"] = spec.marginals.size();
    json list = json::array();
    for (const auto& m : spec.marginals) {
      json values = json::array(), masses = json::array();
      for (const auto& v : m.values) values.push_back(fraction_string(v));
      for (const auto& w : m.masses) masses.push_back(fraction_string(w));
      list.push_back(json{{"values", values}, {"masses", masses}});
    }
    root["marginals"] = list;
  } else if (spec.joint) {
    root["items"] = spec.joint->num_items();
    json support = json::array(), masses = json::array();
    for (std::size_t i = 0; i < spec.joint->num_types(); ++i) {
      json row = json::array();
      for (const auto& v : spec.joint->type(i)) row.push_back(fraction_string(v));
      support.push_back(row);
      masses.push_back(fraction_string(spec.joint->mass(i)));
    }
    root["joint"] = json{{"support", support}, {"masses", masses}};
  }
  if (spec.budget) root["budget"] = fraction_string(*spec.budget);
  if (spec.cap) root["cap"] = fraction_string(*spec.cap);
  if (spec.budget_dist) {
    json budgets = json::array(), masses = json::array();
    for (const auto& b : spec.budget_dist->budgets) budgets.push_back(fraction_string(b));
    for (const auto& g : spec.budget_dist->masses) masses.push_back(fraction_string(g));
    root["budget_distribution"] = json{{"budgets", budgets}, {"masses", masses}};
  }
  return root.dump();
}

std::string instance_hash(const InstanceSpec& spec) {
  std::string text = instance_to_json(spec);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// portable uniform draw in [0, n)
std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

MarginalDistribution random_marginal(std::mt19937_64& rng,
                                     const GeneratorParams& p,
                                     const Rational& unit, std::size_t k) {
  std::vector<long> grid;
  while (grid.size() < k) {
    long v = static_cast<long>(below(rng, p.value_grid_max + 1));
    if (std::find(grid.begin(), grid.end(), v) == grid.end()) grid.push_back(v);
  }
  std::sort(grid.begin(), grid.end());
  std::vector<Rational> values, masses;
  long total = 0;
  std::vector<long> nums;
  for (long g : grid) {
    values.push_back(unit * g);
    long numerator = 1 + static_cast<long>(below(rng, p.denominator_bound));
    nums.push_back(numerator);
    total += numerator;
  }
  for (long numerator : nums) masses.push_back(rat(numerator, total));
  return MarginalDistribution(std::move(values), std::move(masses));
}

}  // namespace

InstanceSpec generate_instance(std::uint64_t seed, const GeneratorParams& params) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    InstanceSpec spec;
    const std::size_t m =
        params.min_items + below(rng, params.max_items - params.min_items + 1);
    Rational unit = rat(1 + static_cast<long>(below(rng, 3)),
                        1 + static_cast<long>(below(rng, 4)));
    std::size_t support = 1;
    bool ok = true;
    for (std::size_t j = 0; j < m; ++j) {
      std::size_t k =
          params.min_values + below(rng, params.max_values - params.min_values + 1);
      spec.marginals.push_back(random_marginal(rng, params, unit, k));
      support *= k;
    }
    if (support > params.max_support) continue;
    auto joint = product(spec.marginals);
    Rational top = joint.max_type_sum();
    if (sgn(top) == 0) continue;  // all values zero: nothing to price
    if (params.with_budget) {
      spec.budget = top * rat(1 + static_cast<long>(below(rng, 12)), 8);
    }
    if (params.with_cap) {
      std::vector<Rational> sums;
      for (const Rational& s : joint.distinct_sums()) {
        if (sgn(s) > 0) sums.push_back(s);
      }
      if (sums.empty()) continue;
      spec.cap = sums[below(rng, sums.size())];
    }
    if (params.with_budget_distribution) {
      const std::size_t kb = 1 + below(rng, params.budget_support_max);
      // nondecreasing hazards ending at one give MHR by construction
      std::vector<Rational> hazards;
      for (std::size_t i = 0; i + 1 < kb; ++i) {
        hazards.push_back(rat(1 + static_cast<long>(below(rng, 8)), 9));
      }
      std::sort(hazards.begin(), hazards.end());
      hazards.push_back(rat(1));
      std::vector<Rational> budgets, masses;
      Rational level = unit * (1 + static_cast<long>(below(rng, 4)));
      Rational tail = 1;
      for (std::size_t i = 0; i < kb; ++i) {
        budgets.push_back(level);
        level += unit * (1 + static_cast<long>(below(rng, 3)));
        Rational g = hazards[i] * tail;
        masses.push_back(g);
        tail -= g;
      }
      spec.budget_dist = BudgetDistribution(std::move(budgets), std::move(masses));
    }
    if (!ok) continue;
    return spec;
  }
  throw Error("instance generation failed to satisfy the constraints");
}

}  // namespace budgetlab
