#include "budgetlab/simple.hpp"

#include <random>

#include "budgetlab/errors.hpp"
#include "doctest.h"

using namespace budgetlab;

namespace {

MarginalDistribution marg(std::vector<long> vals, std::vector<Rational> mass) {
  std::vector<Rational> v;
  for (long x : vals) v.push_back(rat(x));
  return MarginalDistribution(std::move(v), std::move(mass));
}

DiscreteJointDistribution rows_joint(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Rational>> support;
  std::vector<Rational> masses;
  for (const auto& row : rows) {
    std::vector<Rational> t;
    for (long x : row) t.push_back(rat(x));
    support.push_back(std::move(t));
    masses.push_back(rat(1, static_cast<long>(rows.size())));
  }
  return DiscreteJointDistribution(rows[0].size(), std::move(support),
                                   std::move(masses));
}

// The non-monotonicity example: three items, budget 2, three equiprobable
// rows.
DiscreteJointDistribution example_v1() {
  return rows_joint({{2, 0, 0}, {0, 1, 1}, {2, 1, 0}});
}
DiscreteJointDistribution example_v2() {
  return rows_joint({{2, 0, 0}, {0, 1, 1}, {2, 2, 0}});
}

PriceVector pv(std::vector<Rational> p) { return PriceVector{std::move(p)}; }

// Independent oracle for two-item exact SRev: the expected payment is
// piecewise linear in prices, so its supremum is attained (under the
// seller-favoring tie-break) at a vertex of the arrangement of all bundle
// indifference lines and affordability lines, clipped to a box beyond which
// nothing changes. Evaluates the true buyer behavior at every candidate
// vertex.
Rational srev_two_item_vertex_oracle(const DiscreteJointDistribution& dist,
                                     const Rational& budget) {
  REQUIRE(dist.num_items() == 2);
  struct Line {
    Rational a, b, c;  // a*p1 + b*p2 = c
  };
  std::vector<Line> lines;
  Rational big = budget + 1;
  // bundle masks: 1={1}, 2={2}, 3={1,2}; chi(mask) = (mask&1, mask>>1)
  for (std::size_t i = 0; i < dist.num_types(); ++i) {
    std::vector<Rational> value = {0, dist.type(i)[0], dist.type(i)[1],
                                   dist.type(i)[0] + dist.type(i)[1]};
    for (int s = 0; s < 4; ++s) {
      for (int s2 = s + 1; s2 < 4; ++s2) {
        Rational a = rat((s & 1) - (s2 & 1));
        Rational b = rat(((s >> 1) & 1) - ((s2 >> 1) & 1));
        if (sgn(a) == 0 && sgn(b) == 0) continue;
        lines.push_back({a, b, value[s] - value[s2]});
      }
    }
  }
  for (int s = 1; s < 4; ++s) {
    lines.push_back({rat(s & 1), rat((s >> 1) & 1), budget});
  }
  lines.push_back({rat(1), rat(0), rat(0)});
  lines.push_back({rat(0), rat(1), rat(0)});
  lines.push_back({rat(1), rat(0), big});
  lines.push_back({rat(0), rat(1), big});

  std::vector<std::pair<Rational, Rational>> points;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      Rational det = lines[i].a * lines[j].b - lines[j].a * lines[i].b;
      if (sgn(det) == 0) continue;
      Rational p1 = (lines[i].c * lines[j].b - lines[j].c * lines[i].b) / det;
      Rational p2 = (lines[i].a * lines[j].c - lines[j].a * lines[i].c) / det;
      if (sgn(p1) < 0 || sgn(p2) < 0 || p1 > big || p2 > big) continue;
      points.emplace_back(p1, p2);
    }
  }
  Rational best = 0;
  for (const auto& [p1, p2] : points) {
    Rational revenue = item_pricing_revenue(dist, pv({p1, p2}), budget);
    best = std::max(best, revenue);
  }
  return best;
}

}  // namespace

TEST_CASE("knapsack buyer matches the worked three-item example") {
  PriceVector prices = pv({rat(2), rat(1), rat(1)});
  Rational b = rat(2);

  auto c1 = buyer_knapsack({rat(2), rat(0), rat(0)}, prices, b);
  CHECK(c1.items == std::vector<std::size_t>{0});
  CHECK(c1.payment == 2);

  auto c2 = buyer_knapsack({rat(0), rat(1), rat(1)}, prices, b);
  CHECK(c2.items == std::vector<std::size_t>{1, 2});
  CHECK(c2.payment == 2);

  auto c3 = buyer_knapsack({rat(2), rat(2), rat(0)}, prices, b);
  CHECK(c3.items == std::vector<std::size_t>{1});
  CHECK(c3.payment == 1);

  // the third row of the first matrix ties at zero utility and buys item 1
  auto c4 = buyer_knapsack({rat(2), rat(1), rat(0)}, prices, b);
  CHECK(c4.items == std::vector<std::size_t>{0});
  CHECK(c4.payment == 2);
}

TEST_CASE("knapsack payment is nondecreasing in the budget at fixed prices") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    std::size_t m = 1 + rng() % 3;
    std::vector<Rational> type;
    PriceVector prices;
    for (std::size_t j = 0; j < m; ++j) {
      type.push_back(rat(static_cast<long>(rng() % 5)));
      prices.prices.push_back(rat(static_cast<long>(rng() % 5), 1 + rng() % 2));
    }
    Rational b1 = rat(static_cast<long>(rng() % 6), 1 + rng() % 2);
    Rational b2 = b1 + rat(static_cast<long>(rng() % 4), 1 + rng() % 3);
    auto lo = buyer_knapsack(type, prices, b1);
    auto hi = buyer_knapsack(type, prices, b2);
    CHECK(hi.payment >= lo.payment);
    CHECK(hi.utility >= lo.utility);
  }
}

TEST_CASE("grand bundle pricing") {
  auto point = rows_joint({{5}});
  auto r = brev_budget(point, rat(3));
  CHECK(r.value == 3);
  CHECK(r.price == 3);

  auto v1 = example_v1();
  auto r1 = brev_budget(v1, rat(2));
  CHECK(r1.value == 2);  // all three row sums are at least 2
  CHECK(r1.price == 2);

  // uniform sums {1,2}: max(1*1, 2*(1/2)) = 1
  auto u = rows_joint({{1}, {2}});
  auto ru = brev_unbudgeted(u);
  CHECK(ru.value == 1);

  CHECK(brev_budget(u, rat(1, 2)).value == rat(1, 2));
  CHECK(brev_unbudgeted(point).value == 5);
}

TEST_CASE("single item pricing") {
  auto m = marg({1, 2}, {rat(1, 2), rat(1, 2)});
  auto best = best_posted_price(m);
  CHECK(best.value == 1);  // price 1 and price 2 both give 1; lowest kept
  CHECK(best.price == 1);

  auto joint = product({m, m});
  auto s = srev_unbudgeted(joint);
  CHECK(s.value == 2);

  auto pm = rows_joint({{3, 4}});
  CHECK(srev_unbudgeted(pm).value == 7);
}

TEST_CASE("exact separate pricing reproduces the non-monotone pair") {
  auto v1 = example_v1();
  auto v2 = example_v2();
  Rational b = rat(2);

  auto s1 = srev_budget_exact(v1, b);
  CHECK(s1.value == 2);
  CHECK(item_pricing_revenue(v1, s1.prices, b) == s1.value);
  // the paper's witness prices also attain it
  CHECK(item_pricing_revenue(v1, pv({rat(2), rat(1), rat(1)}), b) == 2);

  auto s2 = srev_budget_exact(v2, b);
  CHECK(s2.value < 2);
  CHECK(s2.value == rat(5, 3));  // exact optimum from the cell oracle
  CHECK(item_pricing_revenue(v2, s2.prices, b) == s2.value);
}

TEST_CASE("exact separate pricing degenerates to posted pricing for one item") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 30; ++iter) {
    std::size_t k = 1 + rng() % 4;
    std::vector<Rational> vals, mass;
    long v = 0;
    std::vector<long> nums;
    long total = 0;
    for (std::size_t i = 0; i < k; ++i) {
      v += 1 + static_cast<long>(rng() % 3);
      vals.push_back(rat(v));
      long nmass = 1 + static_cast<long>(rng() % 8);
      nums.push_back(nmass);
      total += nmass;
    }
    for (long nmass : nums) mass.push_back(rat(nmass, total));
    MarginalDistribution m(vals, mass);
    auto joint = product({m});
    Rational budget = rat(1 + static_cast<long>(rng() % 6), 1 + rng() % 2);
    auto exact = srev_budget_exact(joint, budget);
    // direct budgeted posted pricing
    Rational best = 0;
    std::vector<Rational> candidates = m.values;
    candidates.push_back(budget);
    for (const Rational& p : candidates) {
      if (p > budget) continue;
      best = std::max(best, Rational(p * m.survival(p)));
    }
    CHECK(exact.value == best);
  }
}

TEST_CASE("exact separate pricing agrees with the vertex oracle on two items") {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 25; ++iter) {
    std::vector<MarginalDistribution> margs;
    for (int j = 0; j < 2; ++j) {
      std::size_t k = 2 + rng() % 2;
      std::vector<Rational> vals, mass;
      long v = static_cast<long>(rng() % 2);
      std::vector<long> nums;
      long total = 0;
      for (std::size_t i = 0; i < k; ++i) {
        vals.push_back(rat(v));
        v += 1 + static_cast<long>(rng() % 3);
        long nmass = 1 + static_cast<long>(rng() % 4);
        nums.push_back(nmass);
        total += nmass;
      }
      for (long nmass : nums) mass.push_back(rat(nmass, total));
      margs.emplace_back(std::move(vals), std::move(mass));
    }
    auto joint = product(margs);
    Rational budget = rat(1 + static_cast<long>(rng() % 5), 1 + rng() % 2);
    auto exact = srev_budget_exact(joint, budget);
    Rational oracle = srev_two_item_vertex_oracle(joint, budget);
    CHECK(exact.value == oracle);
    CHECK(item_pricing_revenue(joint, exact.prices, budget) == exact.value);
  }
}

TEST_CASE("grid never exceeds the exact optimum and sees the witness") {
  auto v1 = example_v1();
  auto g = srev_budget_grid(v1, rat(2));
  CHECK(g.value == 2);  // the grid contains (2,1,1)

  std::mt19937_64 rng(51);
  for (int iter = 0; iter < 20; ++iter) {
    std::vector<MarginalDistribution> margs;
    for (int j = 0; j < 2; ++j) {
      std::vector<Rational> vals = {rat(static_cast<long>(rng() % 2)),
                                    rat(2 + static_cast<long>(rng() % 3))};
      std::vector<Rational> mass = {rat(1 + static_cast<long>(rng() % 3), 4),
                                    Rational()};
      mass[1] = 1 - mass[0];
      if (sgn(mass[1]) <= 0) continue;
      margs.emplace_back(std::move(vals), std::move(mass));
    }
    if (margs.size() != 2) continue;
    auto joint = product(margs);
    Rational budget = rat(1 + static_cast<long>(rng() % 4));
    auto exact = srev_budget_exact(joint, budget);
    auto grid = srev_budget_grid(joint, budget);
    CHECK(grid.value <= exact.value);
  }
}

TEST_CASE("size guards") {
  auto big = rows_joint({{1, 1, 1, 1}});
  CHECK_THROWS_AS(srev_budget_exact(big, rat(1)), TooLarge);
  std::vector<Rational> long_type(25, rat(1));
  PriceVector long_prices{std::vector<Rational>(25, rat(1))};
  CHECK_THROWS_AS(buyer_knapsack(long_type, long_prices, rat(1)), TooManyItems);
}
