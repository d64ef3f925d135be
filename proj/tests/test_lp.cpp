#include "budgetlab/lp.hpp"

#include <random>

#include "doctest.h"

using namespace budgetlab;
using namespace budgetlab::lp;

namespace {

// Independent oracle: enumerate candidate basic points from all subsets of
// tight constraints (rows as equalities plus tight bounds) and take the best
// feasible one. Only valid for LPs whose feasible region is bounded, which
// the generator below guarantees with finite boxes.
struct OracleResult {
  bool feasible = false;
  Rational value = 0;
};

std::vector<Rational> solve_square(std::vector<std::vector<Rational>> m,
                                   std::vector<Rational> rhs, bool& ok) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(m[piv][col]) == 0) ++piv;
    if (piv == n) {
      ok = false;
      return {};
    }
    std::swap(m[piv], m[col]);
    std::swap(rhs[piv], rhs[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  ok = true;
  return x;
}

OracleResult brute_force_max(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  // candidate hyperplanes: every row as equality, every finite bound
  struct Plane {
    std::vector<Rational> coeffs;
    Rational rhs;
  };
  std::vector<Plane> planes;
  for (const Row& row : lp.rows) {
    Plane p{row.coeffs, row.rhs};
    p.coeffs.resize(n, Rational(0));
    planes.push_back(std::move(p));
  }
  for (std::size_t j = 0; j < n; ++j) {
    VarBounds vb = lp.var_bounds(j);
    if (vb.lower) {
      Plane p{std::vector<Rational>(n, Rational(0)), *vb.lower};
      p.coeffs[j] = 1;
      planes.push_back(std::move(p));
    }
    if (vb.upper) {
      Plane p{std::vector<Rational>(n, Rational(0)), *vb.upper};
      p.coeffs[j] = 1;
      planes.push_back(std::move(p));
    }
  }
  OracleResult best;
  std::vector<std::size_t> pick(n, 0);
  // enumerate all n-subsets of planes
  std::vector<std::size_t> comb(n);
  for (std::size_t i = 0; i < n; ++i) comb[i] = i;
  if (planes.size() < n) return best;
  for (;;) {
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    std::vector<Rational> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = planes[comb[i]].coeffs;
      rhs[i] = planes[comb[i]].rhs;
    }
    bool ok = false;
    std::vector<Rational> x = solve_square(m, rhs, ok);
    if (ok && satisfies(lp, x)) {
      Rational val = 0;
      for (std::size_t j = 0; j < n; ++j) val += lp.objective[j] * x[j];
      if (!best.feasible || val > best.value) {
        best.feasible = true;
        best.value = val;
      }
    }
    // next combination
    std::size_t i = n;
    for (;;) {
      if (i == 0) return best;
      --i;
      if (comb[i] + (n - i) < planes.size()) break;
    }
    ++comb[i];
    for (std::size_t k = i + 1; k < n; ++k) comb[k] = comb[k - 1] + 1;
  }
}

}  // namespace

TEST_CASE("one-variable basics") {
  LinearProgram lp;
  lp.objective = {rat(1)};
  lp.add_row({rat(1)}, Relation::LessEq, rat(3));
  LpSolution sol = solve(lp);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.value == 3);
  CHECK(sol.assignment[0] == 3);
  CHECK(dual_certificate_ok(lp, sol));

  lp.add_row({rat(1)}, Relation::GreaterEq, rat(2));
  sol = solve(lp);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.value == 3);

  LinearProgram bad;
  bad.objective = {rat(1)};
  bad.add_row({rat(1)}, Relation::LessEq, rat(1));
  bad.add_row({rat(1)}, Relation::GreaterEq, rat(2));
  sol = solve(bad);
  CHECK(sol.status == LpStatus::Infeasible);
  CHECK(farkas_certificate_ok(bad, sol.row_duals));
}

TEST_CASE("unbounded detection") {
  LinearProgram lp;
  lp.objective = {rat(1), rat(1)};
  lp.add_row({rat(1), rat(-1)}, Relation::LessEq, rat(1));
  LpSolution sol = solve(lp);
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("free variables and equality rows") {
  // maximize x - y  s.t.  x + y = 4, x - y <= 2, x, y free
  LinearProgram lp;
  lp.objective = {rat(1), rat(-1)};
  lp.bounds = {VarBounds{std::nullopt, std::nullopt},
               VarBounds{std::nullopt, std::nullopt}};
  lp.add_row({rat(1), rat(1)}, Relation::Equal, rat(4));
  lp.add_row({rat(1), rat(-1)}, Relation::LessEq, rat(2));
  LpSolution sol = solve(lp);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.value == 2);
  CHECK(sol.assignment[0] == 3);
  CHECK(sol.assignment[1] == 1);
  CHECK(dual_certificate_ok(lp, sol));
}

TEST_CASE("Beale's degenerate instance terminates at the exact optimum") {
  // max (3/4)x1 - 150 x2 + (1/50)x3 - 6 x4, the classic cycling example.
  LinearProgram lp;
  lp.objective = {rat(3, 4), rat(-150), rat(1, 50), rat(-6)};
  lp.add_row({rat(1, 4), rat(-60), rat(-1, 25), rat(9)}, Relation::LessEq, rat(0));
  lp.add_row({rat(1, 2), rat(-90), rat(-1, 50), rat(3)}, Relation::LessEq, rat(0));
  lp.add_row({rat(0), rat(0), rat(1), rat(0)}, Relation::LessEq, rat(1));
  LpSolution sol = solve(lp);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.value == rat(1, 20));
  CHECK(dual_certificate_ok(lp, sol));
}

TEST_CASE("upper bounds as variable bounds") {
  LinearProgram lp;
  lp.objective = {rat(2), rat(1)};
  lp.bounds = {VarBounds{rat(0), rat(1)}, VarBounds{rat(1, 2), rat(3)}};
  lp.add_row({rat(1), rat(1)}, Relation::LessEq, rat(3));
  LpSolution sol = solve(lp);
  CHECK(sol.status == LpStatus::Optimal);
  CHECK(sol.value == rat(4));  // x=1, y=2
  CHECK(sol.assignment[0] == 1);
  CHECK(sol.assignment[1] == 2);
  CHECK(dual_certificate_ok(lp, sol));
}

TEST_CASE("determinism") {
  LinearProgram lp;
  lp.objective = {rat(1), rat(1), rat(1)};
  lp.add_row({rat(1), rat(1), rat(0)}, Relation::LessEq, rat(2));
  lp.add_row({rat(0), rat(1), rat(1)}, Relation::LessEq, rat(2));
  lp.add_row({rat(1), rat(0), rat(1)}, Relation::LessEq, rat(2));
  LpSolution a = solve(lp);
  LpSolution b = solve(lp);
  CHECK(a.status == LpStatus::Optimal);
  CHECK(a.value == b.value);
  CHECK(a.assignment == b.assignment);
  CHECK(a.row_duals == b.row_duals);
}

TEST_CASE("random instances agree with the brute-force oracle") {
  std::mt19937_64 rng(20240817);
  auto randint = [&](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  int optimal_seen = 0, infeasible_seen = 0;
  for (int iter = 0; iter < 300; ++iter) {
    const std::size_t n = 1 + rng() % 3;
    const std::size_t m = 1 + rng() % 4;
    LinearProgram lp;
    for (std::size_t j = 0; j < n; ++j) {
      lp.objective.push_back(rat(randint(-4, 4), randint(1, 3)));
      lp.bounds.push_back(VarBounds{rat(0), rat(randint(1, 5))});
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> coeffs;
      for (std::size_t j = 0; j < n; ++j) coeffs.push_back(rat(randint(-3, 3)));
      Relation rel = (rng() % 4 == 0)   ? Relation::Equal
                     : (rng() % 2 == 0) ? Relation::LessEq
                                        : Relation::GreaterEq;
      lp.add_row(std::move(coeffs), rel, rat(randint(-4, 6)));
    }
    LpSolution sol = solve(lp);
    OracleResult oracle = brute_force_max(lp);
    if (oracle.feasible) {
      REQUIRE(sol.status == LpStatus::Optimal);
      CHECK(sol.value == oracle.value);
      CHECK(satisfies(lp, sol.assignment));
      Rational objective = 0;
      for (std::size_t j = 0; j < n; ++j) objective += lp.objective[j] * sol.assignment[j];
      CHECK(objective == sol.value);
      CHECK(dual_certificate_ok(lp, sol));
      ++optimal_seen;
    } else {
      REQUIRE(sol.status == LpStatus::Infeasible);
      CHECK(farkas_certificate_ok(lp, sol.row_duals));
      ++infeasible_seen;
    }
  }
  CHECK(optimal_seen > 50);
  CHECK(infeasible_seen > 20);
}
