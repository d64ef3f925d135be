#include "budgetlab/structure.hpp"

#include <algorithm>

#include "budgetlab/errors.hpp"
#include "budgetlab/lp.hpp"
#include "budgetlab/optimal.hpp"
#include "budgetlab/simple.hpp"

namespace budgetlab {

namespace {

bool leq_coordinatewise(const std::vector<Rational>& lo,
                        const std::vector<Rational>& hi) {
  for (std::size_t j = 0; j < lo.size(); ++j) {
    if (lo[j] > hi[j]) return false;
  }
  return true;
}

}  // namespace

DominanceResult check_dominance(const DiscreteJointDistribution& upper,
                                const DiscreteJointDistribution& lower) {
  if (upper.num_items() != lower.num_items()) {
    throw Error("dominance needs equal dimensions");
  }
  const std::size_t nu = upper.num_types();
  const std::size_t nl = lower.num_types();

  // admissible pairs: lower point <= upper point coordinate-wise
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < nu; ++i) {
    for (std::size_t k = 0; k < nl; ++k) {
      if (leq_coordinatewise(lower.type(k), upper.type(i))) pairs.emplace_back(i, k);
    }
  }

  lp::LinearProgram prog;
  prog.objective.assign(pairs.size(), Rational(0));
  prog.bounds.assign(pairs.size(), lp::VarBounds{});
  for (std::size_t i = 0; i < nu; ++i) {
    std::vector<Rational> row(pairs.size(), Rational(0));
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      if (pairs[v].first == i) row[v] = 1;
    }
    prog.add_row(std::move(row), lp::Relation::Equal, upper.mass(i));
  }
  for (std::size_t k = 0; k < nl; ++k) {
    std::vector<Rational> row(pairs.size(), Rational(0));
    for (std::size_t v = 0; v < pairs.size(); ++v) {
      if (pairs[v].second == k) row[v] = 1;
    }
    prog.add_row(std::move(row), lp::Relation::Equal, lower.mass(k));
  }

  lp::LpSolution sol = lp::solve(prog);
  DominanceResult out;
  if (sol.status != lp::LpStatus::Optimal) {
    out.dominates = false;
    out.farkas = sol.row_duals;
    return out;
  }
  out.dominates = true;
  Coupling coupling;
  coupling.weights.resize(nu);
  for (std::size_t v = 0; v < pairs.size(); ++v) {
    if (sgn(sol.assignment[v]) > 0) {
      coupling.weights[pairs[v].first][pairs[v].second] = sol.assignment[v];
    }
  }
  if (!verify_coupling(upper, lower, coupling)) {
    throw Error("internal error: coupling failed exact verification");
  }
  out.coupling = std::move(coupling);
  return out;
}

bool verify_coupling(const DiscreteJointDistribution& upper,
                     const DiscreteJointDistribution& lower,
                     const Coupling& coupling) {
  if (coupling.weights.size() != upper.num_types()) return false;
  std::vector<Rational> col_sum(lower.num_types(), Rational(0));
  for (std::size_t i = 0; i < upper.num_types(); ++i) {
    Rational row_sum = 0;
    for (const auto& [k, w] : coupling.weights[i]) {
      if (sgn(w) <= 0) return false;
      if (!leq_coordinatewise(lower.type(k), upper.type(i))) return false;
      row_sum += w;
      col_sum[k] += w;
    }
    if (row_sum != upper.mass(i)) return false;
  }
  for (std::size_t k = 0; k < lower.num_types(); ++k) {
    if (col_sum[k] != lower.mass(k)) return false;
  }
  return true;
}

CheckReport check_tail_bound(const std::vector<MarginalDistribution>& capped,
                             const Rational& cap) {
  if (sgn(cap) <= 0) throw Error("tail bound needs a positive cap");
  for (const auto& m : capped) {
    if (m.max_value() > cap) {
      throw Error("tail bound requires every coordinate capped");
    }
  }
  auto joint = product(capped);
  CheckReport report;

  std::vector<Rational> sums = joint.distinct_sums();
  std::vector<Rational> positive;
  for (const Rational& s : sums) {
    if (sgn(s) > 0) positive.push_back(s);
  }
  bool pair_ok = true;
  Rational worst_slack = 1;
  std::string witness;
  for (const Rational& x : positive) {
    for (const Rational& y : positive) {
      Rational lhs = joint.sum_survival(x + y + cap);
      Rational rhs = joint.sum_survival(x) * joint.sum_survival(y);
      if (rhs - lhs < worst_slack) {
        worst_slack = rhs - lhs;
        witness = fraction_string(x) + "," + fraction_string(y);
      }
      if (lhs > rhs) pair_ok = false;
    }
  }
  CheckResult pairres;
  pairres.name = "tail_submultiplicative";
  pairres.pass = pair_ok;
  pairres.slack = positive.empty() ? Rational(0) : worst_slack;
  pairres.note = positive.empty() ? "no positive sums" : "tightest at (x,y)=" + witness;
  report.checks.push_back(std::move(pairres));

  Rational q = joint.sum_survival(cap);
  Rational max_sum = joint.max_type_sum();
  Rational qpow = 1;
  bool geo_ok = true;
  for (long k = 0; cap * (2 * k + 1) <= max_sum; ++k) {
    Rational lhs = joint.sum_survival(cap * (2 * k + 1));
    if (lhs > qpow * q) geo_ok = false;
    qpow *= q;
  }
  report.require("tail_geometric", geo_ok);
  return report;
}

CheckReport check_theorem1_chain(const std::vector<MarginalDistribution>& marginals,
                                 const Rational& budget) {
  if (sgn(budget) <= 0) throw Error("budget must be positive");
  CheckReport report;
  auto joint = product(marginals);
  auto capped = cap_linf(marginals, budget);

  Rational rev_b = rev_budget(joint, budget).value;
  Rational rev_vp = rev_unbudgeted(capped).value;
  Rational brev_b = brev_budget(joint, budget).value;
  Rational brev_b_vp = brev_budget(capped, budget).value;
  Rational brev_vp = brev_unbudgeted(capped).value;
  Rational srev_vp = srev_unbudgeted(capped).value;
  Rational srev_b = srev_budget_exact(joint, budget).value;
  Rational srev_b_vp = srev_budget_exact(capped, budget).value;

  report.require_le("cap_split", rev_b, rev_vp + brev_b);

  if (brev_b_vp < budget / 10) {
    report.require_le("tail_brev", brev_vp, 3 * brev_b_vp);
    report.require_le("tail_srev", srev_vp, srev_b_vp + 4 * brev_b_vp);
  } else {
    report.skip("tail_brev", "bundle revenue of the capped distribution is large");
    report.skip("tail_srev", "bundle revenue of the capped distribution is large");
  }

  report.require_le("cap_brev_monotone", brev_b_vp, brev_b);
  report.require_le("cap_srev_factor2", srev_b_vp, 2 * srev_b);

  // l1 split at c = b/2 and the conditioned distribution's simple bounds
  Rational half = budget / 2;
  if (joint.min_type_sum() > half) {
    // every type sum exceeds b/2: selling the bundle at b/2 is a sure sale
    report.require_le("l1_split_degenerate", rev_b, 2 * brev_b);
    report.skip("l1_split", "no mass with sum at most b/2");
    report.skip("conditioned_brev", "no mass with sum at most b/2");
    report.skip("conditioned_srev", "no mass with sum at most b/2");
  } else {
    auto vhat = condition_l1(joint, half);
    Rational rev_vhat = rev_unbudgeted(vhat).value;
    report.require_le("l1_split", rev_b, 2 * brev_b + rev_vhat);
    report.require_le("conditioned_brev", brev_budget(vhat, half).value, brev_b);
    // max(1, 2c/b) = 1 at c = b/2
    report.require_le("conditioned_srev", srev_budget_exact(vhat, half).value, srev_b);
  }

  // budget-free simple-vs-optimal bound for the capped independent distribution
  report.require_le("budget_free_simple", rev_vp, 4 * srev_vp + 2 * brev_vp);

  report.require_le("theorem1_8_24", rev_b, 8 * srev_b + 24 * brev_b);
  report.require_le("theorem1_5_6", rev_b, 5 * srev_b + 6 * brev_b);
  return report;
}

CheckReport check_dominance_lemmas(const std::vector<MarginalDistribution>& marginals,
                                   const Rational& c1, const Rational& c2) {
  if (c1 > c2) throw Error("dominance lemmas need c1 <= c2");
  CheckReport report;
  auto joint = product(marginals);
  auto tight = condition_l1(joint, c1);
  auto loose = condition_l1(joint, c2);

  auto a = check_dominance(loose, tight);
  report.require("conditioned_nested_dominance", a.dominates);
  auto b = check_dominance(joint, tight);
  report.require("conditioned_below_base", b.dominates);
  auto c = check_dominance(joint, loose);
  report.require("conditioned_below_base_loose", c.dominates);
  return report;
}

}  // namespace budgetlab
