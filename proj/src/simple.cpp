#include "budgetlab/simple.hpp"

#include <algorithm>
#include <cassert>

#include "budgetlab/errors.hpp"
#include "budgetlab/lp.hpp"

namespace budgetlab {

namespace {

std::vector<std::size_t> mask_items(std::uint32_t mask) {
  std::vector<std::size_t> items;
  for (std::size_t j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) items.push_back(j);
  }
  return items;
}

// lexicographic order on ascending item sequences
bool items_lex_less(std::uint32_t a, std::uint32_t b) {
  return mask_items(a) < mask_items(b);
}

}  // namespace

BundleChoice buyer_knapsack(const std::vector<Rational>& type,
                            const PriceVector& prices, const Rational& budget) {
  const std::size_t m = type.size();
  if (m > kKnapsackItemLimit) {
    throw TooManyItems("knapsack enumeration capped at 20 items");
  }
  std::uint32_t best_mask = 0;
  Rational best_utility = 0, best_payment = 0;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Rational cost = 0, value = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) {
        cost += prices.prices[j];
        value += type[j];
      }
    }
    if (cost > budget) continue;
    Rational utility = value - cost;
    if (utility > best_utility ||
        (utility == best_utility &&
         (cost > best_payment ||
          (cost == best_payment && items_lex_less(mask, best_mask))))) {
      best_mask = mask;
      best_utility = utility;
      best_payment = cost;
    }
  }
  BundleChoice out;
  out.items = mask_items(best_mask);
  out.payment = best_payment;
  out.utility = best_utility;
  return out;
}

Rational item_pricing_revenue(const DiscreteJointDistribution& dist,
                              const PriceVector& prices, const Rational& budget) {
  Rational total = 0;
  for (std::size_t i = 0; i < dist.num_types(); ++i) {
    total += dist.mass(i) * buyer_knapsack(dist.type(i), prices, budget).payment;
  }
  return total;
}

PostedPrice brev_budget(const DiscreteJointDistribution& dist,
                        const Rational& budget) {
  if (sgn(budget) <= 0) throw Error("budget must be positive");
  std::vector<Rational> candidates;
  for (const Rational& s : dist.distinct_sums()) {
    if (s <= budget) candidates.push_back(s);
  }
  candidates.push_back(budget);
  PostedPrice best{Rational(0), Rational(0)};
  for (const Rational& p : candidates) {
    Rational revenue = p * dist.sum_survival(p);
    if (revenue > best.value) best = PostedPrice{revenue, p};
  }
  return best;
}

PostedPrice brev_unbudgeted(const DiscreteJointDistribution& dist) {
  Rational cap = dist.max_type_sum();
  if (sgn(cap) == 0) return PostedPrice{Rational(0), Rational(0)};
  return brev_budget(dist, cap);
}

PostedPrice best_posted_price(const MarginalDistribution& marginal) {
  PostedPrice best{Rational(0), Rational(0)};
  for (const Rational& v : marginal.values) {
    Rational revenue = v * marginal.survival(v);
    if (revenue > best.value) best = PostedPrice{revenue, v};
  }
  return best;
}

std::vector<PostedPrice> per_item_posted(const DiscreteJointDistribution& dist) {
  std::vector<PostedPrice> out;
  for (std::size_t j = 0; j < dist.num_items(); ++j) {
    out.push_back(best_posted_price(marginal_of(dist, j)));
  }
  return out;
}

ItemPricing srev_unbudgeted(const DiscreteJointDistribution& dist) {
  ItemPricing out;
  out.value = 0;
  for (const PostedPrice& pp : per_item_posted(dist)) {
    out.value += pp.value;
    out.prices.prices.push_back(pp.price);
  }
  return out;
}

namespace {

// All downward-closed bundle families containing the empty bundle, as sorted
// lists of member masks; deterministic order.
std::vector<std::vector<std::uint32_t>> affordable_families(std::size_t m) {
  const std::uint32_t top = 1u << m;  // number of bundles
  std::vector<std::vector<std::uint32_t>> families;
  const std::uint64_t families_upper = 1ull << (top - 1);
  for (std::uint64_t pick = 0; pick < families_upper; ++pick) {
    std::vector<std::uint32_t> fam{0};
    for (std::uint32_t s = 1; s < top; ++s) {
      if (pick & (1ull << (s - 1))) fam.push_back(s);
    }
    bool closed = true;
    for (std::uint32_t s : fam) {
      for (std::size_t j = 0; j < m && closed; ++j) {
        if (s & (1u << j)) {
          std::uint32_t sub = s & ~(1u << j);
          if (!std::binary_search(fam.begin(), fam.end(), sub)) closed = false;
        }
      }
      if (!closed) break;
    }
    if (closed) families.push_back(std::move(fam));
  }
  return families;
}

struct CellSearch {
  const DiscreteJointDistribution& dist;
  Rational budget;
  std::size_t m;
  std::size_t n;
  std::vector<std::vector<Rational>> bundle_value;  // [type][mask]
  std::vector<std::size_t> order;                   // types by descending mass
  std::vector<Rational> residual_cap;               // suffix revenue caps
  std::size_t nodes = 0;
  std::size_t node_budget = 0;
  bool have_best = false;
  Rational best_value = 0;
  std::vector<Rational> best_prices;

  // current family and accumulated rows
  const std::vector<std::uint32_t>* family = nullptr;
  lp::LinearProgram prog;  // rows: family pattern + per assigned type
  std::vector<Rational> objective;

  explicit CellSearch(const DiscreteJointDistribution& d, Rational b,
                      std::size_t nodes_allowed)
      : dist(d), budget(std::move(b)), m(d.num_items()), n(d.num_types()),
        node_budget(nodes_allowed) {
    bundle_value.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      bundle_value[i].resize(1u << m);
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::uint32_t low = mask & (mask - 1);
        std::uint32_t bit_index = 0;
        std::uint32_t bit = mask ^ low;
        while ((1u << bit_index) != bit) ++bit_index;
        bundle_value[i][mask] = bundle_value[i][low] + dist.type(i)[bit_index];
      }
    }
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b2) {
      return dist.mass(a) > dist.mass(b2);
    });
    // residual_cap[d] = max extra revenue obtainable from types order[d..]
    residual_cap.assign(n + 1, Rational(0));
    for (std::size_t d2 = n; d2-- > 0;) {
      Rational cap = std::min(budget, dist.type_sum(order[d2]));
      residual_cap[d2] = residual_cap[d2 + 1] + dist.mass(order[d2]) * cap;
    }
  }

  void price_sum_coeffs(std::uint32_t mask, std::vector<Rational>& row,
                        const Rational& factor) {
    for (std::size_t j = 0; j < m; ++j) {
      if (mask & (1u << j)) row[j] += factor;
    }
  }

  void set_family(const std::vector<std::uint32_t>& fam) {
    family = &fam;
    prog = lp::LinearProgram{};
    prog.objective.assign(m, Rational(0));
    prog.bounds.assign(m, lp::VarBounds{});  // prices >= 0
    const std::uint32_t top = 1u << m;
    std::vector<bool> member(top, false);
    for (std::uint32_t s : fam) member[s] = true;
    for (std::uint32_t s = 1; s < top; ++s) {
      std::vector<Rational> row(m, Rational(0));
      price_sum_coeffs(s, row, Rational(1));
      prog.add_row(std::move(row), member[s] ? lp::Relation::LessEq : lp::Relation::GreaterEq,
                   budget);
    }
  }

  // rows forcing `chosen` to be utility-maximal for type i within the family
  void push_choice_rows(std::size_t i, std::uint32_t chosen) {
    for (std::uint32_t s : *family) {
      if (s == chosen) continue;
      // value(chosen) - p(chosen) >= value(s) - p(s)
      std::vector<Rational> row(m, Rational(0));
      price_sum_coeffs(chosen, row, Rational(1));
      price_sum_coeffs(s, row, Rational(-1));
      prog.add_row(std::move(row), lp::Relation::LessEq,
                   bundle_value[i][chosen] - bundle_value[i][s]);
    }
  }

  void pop_choice_rows(std::size_t rows) {
    prog.rows.resize(prog.rows.size() - rows);
  }

  // Solves the node LP once per child and recurses best-first, so strong
  // incumbents are found early and the bound prunes siblings.
  bool search(std::size_t depth, const lp::LpSolution& here) {
    if (have_best && here.value + residual_cap[depth] <= best_value) return true;
    if (depth == n) {
      if (!have_best || here.value > best_value) {
        have_best = true;
        best_value = here.value;
        best_prices = here.assignment;
      }
      return true;
    }
    const std::size_t i = order[depth];
    struct Child {
      std::uint32_t chosen;
      lp::LpSolution sol;
    };
    std::vector<Child> children;
    for (std::uint32_t chosen : *family) {
      if (nodes++ > node_budget) return false;
      std::size_t before = prog.rows.size();
      push_choice_rows(i, chosen);
      for (std::size_t j = 0; j < m; ++j) {
        if (chosen & (1u << j)) prog.objective[j] += dist.mass(i);
      }
      lp::LpSolution sol = lp::solve(prog);
      for (std::size_t j = 0; j < m; ++j) {
        if (chosen & (1u << j)) prog.objective[j] -= dist.mass(i);
      }
      pop_choice_rows(prog.rows.size() - before);
      if (sol.status == lp::LpStatus::Optimal) {
        children.push_back(Child{chosen, std::move(sol)});
      }
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const Child& a, const Child& b) { return a.sol.value > b.sol.value; });
    for (const Child& child : children) {
      if (have_best && child.sol.value + residual_cap[depth + 1] <= best_value) {
        continue;
      }
      std::size_t before = prog.rows.size();
      push_choice_rows(i, child.chosen);
      for (std::size_t j = 0; j < m; ++j) {
        if (child.chosen & (1u << j)) prog.objective[j] += dist.mass(i);
      }
      bool ok = search(depth + 1, child.sol);
      for (std::size_t j = 0; j < m; ++j) {
        if (child.chosen & (1u << j)) prog.objective[j] -= dist.mass(i);
      }
      pop_choice_rows(prog.rows.size() - before);
      if (!ok) return false;
    }
    return true;
  }

  // When every bundle is affordable the buyer decides item by item, so the
  // cells factor into per-item buying thresholds with one coupling row.
  void solve_separable_family() {
    std::vector<std::vector<Rational>> values(m);
    std::vector<std::vector<Rational>> tail_mass(m);
    for (std::size_t j = 0; j < m; ++j) {
      values[j] = dist.distinct_values(j);
      auto marg = marginal_of(dist, j);
      tail_mass[j].resize(values[j].size());
      for (std::size_t k = 0; k < values[j].size(); ++k) {
        tail_mass[j][k] = marg.survival(values[j][k]);
      }
    }
    std::vector<std::size_t> cut(m, 0);  // values[j][cut..] buy; size = nobody
    for (;;) {
      ++nodes;
      lp::LinearProgram cell;
      cell.objective.assign(m, Rational(0));
      cell.bounds.assign(m, lp::VarBounds{});
      std::vector<Rational> all(m, Rational(1));
      cell.add_row(std::move(all), lp::Relation::LessEq, budget);
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Rational> hi(m, Rational(0)), lo(m, Rational(0));
        if (cut[j] < values[j].size()) {
          cell.objective[j] = tail_mass[j][cut[j]];
          hi[j] = 1;
          cell.add_row(std::move(hi), lp::Relation::LessEq, values[j][cut[j]]);
        }
        if (cut[j] > 0) {
          lo[j] = 1;
          cell.add_row(std::move(lo), lp::Relation::GreaterEq, values[j][cut[j] - 1]);
        }
      }
      lp::LpSolution sol = lp::solve(cell);
      if (sol.status == lp::LpStatus::Optimal &&
          (!have_best || sol.value > best_value)) {
        have_best = true;
        best_value = sol.value;
        best_prices = sol.assignment;
      }
      std::size_t j = m;
      for (;;) {
        if (j == 0) return;
        --j;
        if (++cut[j] <= values[j].size()) break;
        cut[j] = 0;
      }
    }
  }
};

}  // namespace

ItemPricing srev_budget_exact(const DiscreteJointDistribution& dist,
                              const Rational& budget, const SrevLimits& limits) {
  if (sgn(budget) <= 0) throw Error("budget must be positive");
  if (dist.num_items() > limits.max_items) {
    throw TooLarge("srev_budget_exact: too many items for cell enumeration");
  }
  CellSearch search(dist, budget, limits.node_budget);
  auto families = affordable_families(dist.num_items());
  // biggest family first: the separable all-affordable case seeds a strong
  // incumbent that prunes the constrained families
  std::stable_sort(families.begin(), families.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  const std::size_t all_bundles = 1u << dist.num_items();
  for (const auto& fam : families) {
    if (fam.size() == all_bundles) {
      search.solve_separable_family();
      continue;
    }
    search.set_family(fam);
    search.prog.objective.assign(dist.num_items(), Rational(0));
    lp::LpSolution root = lp::solve(search.prog);
    if (root.status != lp::LpStatus::Optimal) continue;  // empty pattern
    if (!search.search(0, root)) {
      throw TooLarge("srev_budget_exact: node budget exhausted");
    }
  }
  assert(search.have_best);  // the all-affordable family is never empty
  ItemPricing out;
  out.value = search.best_value;
  out.prices.prices = search.best_prices;
  return out;
}

namespace {

std::size_t default_grid_cap(std::size_t m) {
  if (m <= 1) return 512;
  if (m == 2) return 48;
  return 16;
}

}  // namespace

ItemPricing srev_budget_grid(const DiscreteJointDistribution& dist,
                             const Rational& budget, const GridOptions& options) {
  if (sgn(budget) <= 0) throw Error("budget must be positive");
  const std::size_t m = dist.num_items();
  const std::size_t cap =
      options.max_candidates_per_item ? options.max_candidates_per_item
                                      : default_grid_cap(m);

  // shared candidate pool: all item values in (0, b], plus b and b/2
  std::vector<Rational> pool;
  for (std::size_t j = 0; j < m; ++j) {
    for (const Rational& v : dist.distinct_values(j)) {
      if (sgn(v) > 0 && v <= budget) pool.push_back(v);
    }
  }
  pool.push_back(budget);
  pool.push_back(budget / 2);
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  // b - s for s a sum of at most m-1 pool entries (with repetition)
  std::vector<Rational> offsets;
  if (m >= 2) {
    for (const Rational& s : pool) offsets.push_back(budget - s);
    if (m >= 3) {
      for (std::size_t a = 0; a < pool.size(); ++a) {
        for (std::size_t b2 = a; b2 < pool.size(); ++b2) {
          offsets.push_back(budget - pool[a] - pool[b2]);
        }
      }
    }
  }

  std::vector<std::vector<Rational>> grid(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> cand;
    auto push = [&](const Rational& p) {
      if (sgn(p) < 0 || p > budget) return;
      if (std::find(cand.begin(), cand.end(), p) == cand.end()) cand.push_back(p);
    };
    for (const Rational& v : dist.distinct_values(j)) push(v);
    push(budget);
    push(budget / 2);
    for (const Rational& o : offsets) push(o);
    if (cand.size() > cap) cand.resize(cap);
    std::sort(cand.begin(), cand.end());
    grid[j] = std::move(cand);
  }

  // precompute per-type bundle values once
  const std::size_t n = dist.num_types();
  std::vector<std::vector<Rational>> bundle_value(n);
  for (std::size_t i = 0; i < n; ++i) {
    bundle_value[i].resize(1u << m);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::uint32_t low = mask & (mask - 1);
      std::uint32_t bit = mask ^ low;
      std::size_t j = 0;
      while ((1u << j) != bit) ++j;
      bundle_value[i][mask] = bundle_value[i][low] + dist.type(i)[j];
    }
  }

  ItemPricing best;
  best.value = -1;
  std::vector<std::size_t> idx(m, 0);
  std::vector<Rational> bundle_cost(1u << m);
  for (;;) {
    PriceVector prices;
    for (std::size_t j = 0; j < m; ++j) prices.prices.push_back(grid[j][idx[j]]);
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      std::uint32_t low = mask & (mask - 1);
      std::uint32_t bit = mask ^ low;
      std::size_t j = 0;
      while ((1u << j) != bit) ++j;
      bundle_cost[mask] = bundle_cost[low] + prices.prices[j];
    }
    Rational revenue = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Rational pay = 0, util = 0;
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        if (bundle_cost[mask] > budget) continue;
        Rational u = bundle_value[i][mask] - bundle_cost[mask];
        if (u > util || (u == util && bundle_cost[mask] > pay)) {
          util = u;
          pay = bundle_cost[mask];
        }
      }
      revenue += dist.mass(i) * pay;
    }
    if (revenue > best.value) {
      best.value = revenue;
      best.prices = prices;
    }
    std::size_t j = m;
    for (;;) {
      if (j == 0) return best;
      --j;
      if (++idx[j] < grid[j].size()) break;
      idx[j] = 0;
    }
  }
}

}  // namespace budgetlab
