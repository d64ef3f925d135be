#include "budgetlab/duality.hpp"

#include <algorithm>
#include <map>

#include "budgetlab/errors.hpp"
#include "budgetlab/optimal.hpp"
#include "budgetlab/simple.hpp"

namespace budgetlab {

Regions compute_regions(const DiscreteJointDistribution& dist) {
  Regions out;
  out.favorite.resize(dist.num_types());
  for (std::size_t i = 0; i < dist.num_types(); ++i) {
    const auto& t = dist.type(i);
    std::size_t best = 0;
    for (std::size_t j = 1; j < t.size(); ++j) {
      if (t[j] > t[best]) best = j;
    }
    out.favorite[i] = best;
  }
  return out;
}

Rational IronedVirtualValue::ironed_at(const Rational& value) const {
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == value) return ironed[k];
  }
  throw Error("value not in the marginal's support");
}

IronedVirtualValue ironed_virtuals(const MarginalDistribution& marginal) {
  IronedVirtualValue out;
  out.values = marginal.values;
  out.masses = marginal.masses;
  const std::size_t k = out.values.size();
  out.raw.resize(k);
  Rational upper_tail = 0;  // 1 - F(a_k) accumulated from the top
  for (std::size_t i = k; i-- > 0;) {
    if (i + 1 == k) {
      out.raw[i] = out.values[i];
    } else {
      out.raw[i] = out.values[i] -
                   upper_tail * (out.values[i + 1] - out.values[i]) / out.masses[i];
    }
    upper_tail += out.masses[i];
  }
  // pool adjacent violators, mass weighted
  struct Block {
    Rational weight, weighted_sum;
    std::size_t count;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < k; ++i) {
    blocks.push_back({out.masses[i], out.masses[i] * out.raw[i], 1});
    while (blocks.size() >= 2) {
      const Block& prev = blocks[blocks.size() - 2];
      const Block& last = blocks.back();
      if (prev.weighted_sum * last.weight <= last.weighted_sum * prev.weight) break;
      Block merged{prev.weight + last.weight,
                   prev.weighted_sum + last.weighted_sum, prev.count + last.count};
      blocks.pop_back();
      blocks.back() = merged;
    }
  }
  out.ironed.reserve(k);
  for (const Block& b : blocks) {
    Rational avg = b.weighted_sum / b.weight;
    for (std::size_t c = 0; c < b.count; ++c) out.ironed.push_back(avg);
  }
  return out;
}

namespace {

// chains: types grouped by (favorite item, context outside that item),
// ordered by the favorite coordinate ascending
struct Chain {
  std::size_t item;
  std::vector<std::size_t> members;  // type indices, coordinate ascending
};

std::vector<Chain> region_chains(const DiscreteJointDistribution& dist,
                                 const Regions& regions) {
  std::map<std::pair<std::size_t, std::vector<Rational>>, std::vector<std::size_t>>
      groups;
  for (std::size_t i = 0; i < dist.num_types(); ++i) {
    std::size_t j = regions.favorite[i];
    std::vector<Rational> context;
    for (std::size_t c = 0; c < dist.num_items(); ++c) {
      if (c != j) context.push_back(dist.type(i)[c]);
    }
    groups[{j, std::move(context)}].push_back(i);
  }
  std::vector<Chain> chains;
  for (auto& [key, members] : groups) {
    std::size_t j = key.first;
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return dist.type(a)[j] < dist.type(b)[j];
    });
    chains.push_back(Chain{j, std::move(members)});
  }
  return chains;
}

}  // namespace

CanonicalFlow build_canonical_flow(const DiscreteJointDistribution& dist) {
  const std::size_t n = dist.num_types();
  const std::size_t m = dist.num_items();
  Regions regions = compute_regions(dist);
  CanonicalFlow flow;

  for (const Chain& chain : region_chains(dist, regions)) {
    const std::size_t len = chain.members.size();
    const std::size_t j = chain.item;
    // downward flow: each node receives the mass of everything above it
    std::vector<Rational> upper(len, Rational(0));
    for (std::size_t k = len - 1; k-- > 0;) {
      upper[k] = upper[k + 1] + dist.mass(chain.members[k + 1]);
    }
    for (std::size_t k = 0; k + 1 < len; ++k) {
      flow.lambda[{chain.members[k + 1], chain.members[k]}] = upper[k];
    }
    // virtual values along the chain before ironing
    std::vector<Rational> phi(len);
    for (std::size_t k = 0; k < len; ++k) {
      std::size_t i = chain.members[k];
      if (k + 1 == len) {
        phi[k] = dist.type(i)[j];
      } else {
        Rational gap = dist.type(chain.members[k + 1])[j] - dist.type(i)[j];
        phi[k] = dist.type(i)[j] - upper[k] * gap / dist.mass(i);
      }
    }
    // mass-weighted PAVA target
    struct Block {
      Rational weight, weighted_sum;
      std::size_t count;
    };
    std::vector<Block> blocks;
    for (std::size_t k = 0; k < len; ++k) {
      Rational w = dist.mass(chain.members[k]);
      blocks.push_back({w, w * phi[k], 1});
      while (blocks.size() >= 2) {
        const Block& prev = blocks[blocks.size() - 2];
        const Block& last = blocks.back();
        if (prev.weighted_sum * last.weight <= last.weighted_sum * prev.weight) break;
        Block merged{prev.weight + last.weight,
                     prev.weighted_sum + last.weighted_sum, prev.count + last.count};
        blocks.pop_back();
        blocks.back() = merged;
      }
    }
    std::vector<Rational> target;
    target.reserve(len);
    for (const Block& b : blocks) {
      Rational avg = b.weighted_sum / b.weight;
      for (std::size_t c = 0; c < b.count; ++c) target.push_back(avg);
    }
    // realize the ironing with cycles between adjacent chain nodes:
    // prefix deficits determine each cycle's weight
    Rational prefix = 0;
    for (std::size_t k = 0; k + 1 < len; ++k) {
      prefix += dist.mass(chain.members[k]) * (target[k] - phi[k]);
      Rational gap = dist.type(chain.members[k + 1])[j] - dist.type(chain.members[k])[j];
      Rational w = -prefix / gap;
      if (sgn(w) < 0) throw Error("internal error: negative ironing cycle");
      if (sgn(w) > 0) {
        flow.lambda[{chain.members[k], chain.members[k + 1]}] += w;
        flow.lambda[{chain.members[k + 1], chain.members[k]}] += w;
      }
    }
  }

  // derive Phi and the sink from the multipliers
  flow.virtuals.assign(n, {});
  std::vector<Rational> inflow(n, Rational(0)), outflow(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> phi(dist.type(i));
    flow.virtuals[i] = std::move(phi);
  }
  for (const auto& [edge, w] : flow.lambda) {
    auto [from, to] = edge;
    inflow[to] += w;
    outflow[from] += w;
    for (std::size_t j = 0; j < m; ++j) {
      flow.virtuals[to][j] -=
          w * (dist.type(from)[j] - dist.type(to)[j]) / dist.mass(to);
    }
  }
  flow.sink.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    flow.sink[i] = dist.mass(i) + inflow[i] - outflow[i];
    if (sgn(flow.sink[i]) < 0) throw Error("internal error: negative sink flow");
  }
  return flow;
}

CheckReport check_flow_properties(const DiscreteJointDistribution& dist,
                                  const CanonicalFlow& flow) {
  CheckReport report;
  const std::size_t n = dist.num_types();
  Regions regions = compute_regions(dist);

  // conservation recomputed from scratch: f(t) + in(t) = out(t) + sink(t)
  std::vector<Rational> inflow(n, Rational(0)), outflow(n, Rational(0));
  bool nonneg = true, region_ok = true;
  for (const auto& [edge, w] : flow.lambda) {
    auto [from, to] = edge;
    if (sgn(w) < 0) nonneg = false;
    inflow[to] += w;
    outflow[from] += w;
    if (regions.favorite[from] != regions.favorite[to]) region_ok = false;
    std::size_t j = regions.favorite[from];
    for (std::size_t c = 0; c < dist.num_items(); ++c) {
      if (c != j && dist.type(from)[c] != dist.type(to)[c]) region_ok = false;
    }
  }
  bool conserved = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(flow.sink[i]) < 0) nonneg = false;
    if (dist.mass(i) + inflow[i] - outflow[i] - flow.sink[i] != 0) conserved = false;
  }
  report.require("flow_conservation", conserved);
  report.require("flow_nonnegative", nonneg);
  report.require("flow_within_regions", region_ok);

  // property (1): off the favorite coordinate the virtual value is the value
  bool prop1 = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dist.num_items(); ++j) {
      if (j == regions.favorite[i]) continue;
      if (flow.virtuals[i][j] != dist.type(i)[j]) prop1 = false;
    }
  }
  report.require("virtual_equals_value_off_region", prop1);

  // property (2): on the favorite coordinate, bounded by the conditional
  // ironed virtual value
  bool prop2 = true;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = regions.favorite[i];
    std::vector<Rational> context;
    for (std::size_t c = 0; c < dist.num_items(); ++c) {
      if (c != j) context.push_back(dist.type(i)[c]);
    }
    auto conditional = conditional_marginal(dist, j, context);
    auto ivv = ironed_virtuals(conditional);
    if (flow.virtuals[i][j] > ivv.ironed_at(dist.type(i)[j])) prop2 = false;
  }
  report.require("virtual_below_conditional_ironed", prop2);
  return report;
}

Decomposition decompose(const DiscreteJointDistribution& dist,
                        const Mechanism& mech) {
  if (mech.options.size() != dist.num_types()) {
    throw Error("mechanism and distribution sizes differ");
  }
  Decomposition out;
  out.threshold_revenue = srev_unbudgeted(dist).value;
  out.single = out.core = out.tail = 0;
  Regions regions = compute_regions(dist);
  Rational twice = 2 * out.threshold_revenue;

  std::map<std::pair<std::size_t, std::vector<Rational>>, IronedVirtualValue> cache;
  for (std::size_t i = 0; i < dist.num_types(); ++i) {
    const auto& t = dist.type(i);
    for (std::size_t j = 0; j < dist.num_items(); ++j) {
      const Rational& pij = mech.options[i].allocation[j];
      if (regions.favorite[i] == j) {
        std::vector<Rational> context;
        for (std::size_t c = 0; c < dist.num_items(); ++c) {
          if (c != j) context.push_back(t[c]);
        }
        auto key = std::make_pair(j, context);
        auto it = cache.find(key);
        if (it == cache.end()) {
          it = cache.emplace(key, ironed_virtuals(conditional_marginal(dist, j, context)))
                   .first;
        }
        out.single += dist.mass(i) * pij * it->second.ironed_at(t[j]);
      } else if (t[j] <= twice) {
        out.core += dist.mass(i) * pij * t[j];
      } else {
        out.tail += dist.mass(i) * pij * t[j];
      }
    }
  }
  return out;
}

CheckReport check_core_tail_lemmas(const DiscreteJointDistribution& dist) {
  if (!dist.weakly_correlated()) {
    throw RequiresWeaklyCorrelated("core-tail lemmas need a weakly correlated tag");
  }
  CheckReport report;
  auto best = rev_unbudgeted(dist);
  Decomposition dec = decompose(dist, best.mechanism);
  Rational srev = dec.threshold_revenue;
  Rational brev = brev_unbudgeted(dist).value;

  report.require_le("single_bound", dec.single, 2 * brev + srev);
  report.require_le("tail_bound", dec.tail, srev);
  report.require_le("core_bound", dec.core, 2 * brev + 3 * srev);
  report.require_le("aggregate_5_4", best.value, 5 * srev + 4 * brev);
  report.require_le("decomposition_sound", best.value, dec.single + dec.core + dec.tail);
  return report;
}

CheckReport check_variance_lemma(const DiscreteJointDistribution& dist) {
  if (!dist.weakly_correlated()) {
    throw RequiresWeaklyCorrelated("variance lemma needs a weakly correlated tag");
  }
  CheckReport report;
  const std::size_t n = dist.num_types();
  const std::size_t m = dist.num_items();
  auto posted = per_item_posted(dist);
  Rational r = 0;
  for (const auto& pp : posted) r += pp.value;
  Rational twice = 2 * r;

  // truncated values s_j = min(v_j, 2r)
  std::vector<std::vector<Rational>> s(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) s[i][j] = std::min(dist.type(i)[j], twice);
  }
  std::vector<Rational> mean(m, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) mean[j] += dist.mass(i) * s[i][j];
  }
  bool cov_ok = true;
  bool have_cov = false;
  Rational worst_cov = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      Rational cross = 0;
      for (std::size_t i = 0; i < n; ++i) cross += dist.mass(i) * s[i][a] * s[i][b];
      Rational cov = cross - mean[a] * mean[b];
      if (sgn(cov) > 0) cov_ok = false;
      if (!have_cov || cov > worst_cov) {
        worst_cov = cov;
        have_cov = true;
      }
    }
  }
  CheckResult covres;
  covres.name = "pairwise_negative_correlation";
  covres.pass = cov_ok;
  covres.slack = -worst_cov;
  covres.applicable = m >= 2;
  if (m < 2) covres.note = "single item";
  report.checks.push_back(std::move(covres));

  bool var_ok = true;
  for (std::size_t j = 0; j < m; ++j) {
    Rational second = 0;
    for (std::size_t i = 0; i < n; ++i) second += dist.mass(i) * s[i][j] * s[i][j];
    Rational var = second - mean[j] * mean[j];
    if (var > 4 * r * posted[j].value) var_ok = false;
  }
  report.require("per_item_variance", var_ok);

  Rational sum_mean = 0, sum_second = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational total = 0;
    for (std::size_t j = 0; j < m; ++j) total += s[i][j];
    sum_mean += dist.mass(i) * total;
    sum_second += dist.mass(i) * total * total;
  }
  report.require_le("total_variance", sum_second - sum_mean * sum_mean, 4 * r * r);
  return report;
}

}  // namespace budgetlab
