#include "budgetlab/distribution.hpp"

#include <algorithm>
#include <map>

#include "budgetlab/errors.hpp"

namespace budgetlab {

MarginalDistribution::MarginalDistribution(std::vector<Rational> values_in,
                                           std::vector<Rational> masses_in)
    : values(std::move(values_in)), masses(std::move(masses_in)) {
  if (values.empty() || values.size() != masses.size()) {
    throw Error("marginal needs matching nonempty values and masses");
  }
  Rational total = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (sgn(values[k]) < 0) throw Error("marginal values must be nonnegative");
    if (k > 0 && values[k] <= values[k - 1]) {
      throw Error("marginal values must be strictly increasing");
    }
    if (sgn(masses[k]) <= 0) throw Error("marginal masses must be positive");
    total += masses[k];
  }
  if (total != 1) throw Error("marginal masses must sum to exactly 1");
}

Rational MarginalDistribution::survival(const Rational& a) const {
  Rational p = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] >= a) p += masses[k];
  }
  return p;
}

Rational MarginalDistribution::cdf(const Rational& a) const {
  Rational p = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] <= a) p += masses[k];
  }
  return p;
}

namespace {

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
    int c = cmp(a[j], b[j]);
    if (c != 0) return c < 0;
  }
  return a.size() < b.size();
}

}  // namespace

DiscreteJointDistribution::DiscreteJointDistribution(
    std::size_t num_items, std::vector<std::vector<Rational>> support,
    std::vector<Rational> masses)
    : num_items_(num_items) {
  if (num_items_ == 0) throw Error("joint needs at least one item");
  if (support.size() != masses.size() || support.empty()) {
    throw Error("joint needs matching nonempty support and masses");
  }
  // Canonical order, duplicates merged, zero-mass points deleted.
  std::vector<std::size_t> order(support.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_less(support[a], support[b]);
  });
  Rational total = 0;
  for (std::size_t i : order) {
    const auto& t = support[i];
    if (t.size() != num_items_) throw Error("support vector has wrong arity");
    for (const Rational& v : t) {
      if (sgn(v) < 0) throw Error("support values must be nonnegative");
    }
    if (sgn(masses[i]) < 0) throw Error("masses must be nonnegative");
    if (sgn(masses[i]) == 0) continue;
    total += masses[i];
    if (!support_.empty() && support_.back() == t) {
      masses_.back() += masses[i];
    } else {
      support_.push_back(t);
      masses_.push_back(masses[i]);
    }
  }
  if (support_.empty()) throw Error("joint has empty support");
  if (total != 1) throw Error("joint masses must sum to exactly 1");
}

Rational DiscreteJointDistribution::type_sum(std::size_t i) const {
  Rational s = 0;
  for (const Rational& v : support_[i]) s += v;
  return s;
}

Rational DiscreteJointDistribution::max_type_sum() const {
  Rational best = type_sum(0);
  for (std::size_t i = 1; i < num_types(); ++i) best = std::max(best, type_sum(i));
  return best;
}

Rational DiscreteJointDistribution::min_type_sum() const {
  Rational best = type_sum(0);
  for (std::size_t i = 1; i < num_types(); ++i) best = std::min(best, type_sum(i));
  return best;
}

Rational DiscreteJointDistribution::sum_survival(const Rational& x) const {
  Rational p = 0;
  for (std::size_t i = 0; i < num_types(); ++i) {
    if (type_sum(i) >= x) p += masses_[i];
  }
  return p;
}

std::vector<Rational> DiscreteJointDistribution::distinct_sums() const {
  std::vector<Rational> sums;
  for (std::size_t i = 0; i < num_types(); ++i) sums.push_back(type_sum(i));
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  return sums;
}

std::vector<Rational> DiscreteJointDistribution::distinct_values(
    std::size_t item) const {
  std::vector<Rational> vals;
  for (std::size_t i = 0; i < num_types(); ++i) vals.push_back(support_[i][item]);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

void DiscreteJointDistribution::attach_marginals(
    std::vector<MarginalDistribution> marginals) {
  marginals_ = std::move(marginals);
}

void DiscreteJointDistribution::attach_tag(WeaklyCorrelatedTag tag) {
  tag_ = std::move(tag);
}

DiscreteJointDistribution product(const std::vector<MarginalDistribution>& marginals,
                                  std::size_t support_limit) {
  if (marginals.empty()) throw Error("product needs at least one marginal");
  std::size_t count = 1;
  for (const auto& m : marginals) {
    if (m.size() > support_limit / count) {
      throw SupportTooLarge("product support exceeds limit");
    }
    count *= m.size();
  }
  std::vector<std::vector<Rational>> support;
  std::vector<Rational> masses;
  support.reserve(count);
  masses.reserve(count);
  std::vector<std::size_t> idx(marginals.size(), 0);
  for (;;) {
    std::vector<Rational> t;
    Rational mass = 1;
    for (std::size_t j = 0; j < marginals.size(); ++j) {
      t.push_back(marginals[j].values[idx[j]]);
      mass *= marginals[j].masses[idx[j]];
    }
    support.push_back(std::move(t));
    masses.push_back(std::move(mass));
    std::size_t j = marginals.size();
    while (j > 0) {
      --j;
      if (++idx[j] < marginals[j].size()) break;
      idx[j] = 0;
      if (j == 0) {
        DiscreteJointDistribution joint(marginals.size(), std::move(support),
                                        std::move(masses));
        joint.attach_marginals(marginals);
        return joint;
      }
    }
  }
}

MarginalDistribution cap_values(const MarginalDistribution& marginal,
                                const Rational& bound) {
  if (sgn(bound) <= 0) throw Error("cap bound must be positive");
  std::vector<Rational> values;
  std::vector<Rational> masses;
  for (std::size_t k = 0; k < marginal.size(); ++k) {
    Rational v = std::min(marginal.values[k], bound);
    if (!values.empty() && values.back() == v) {
      masses.back() += marginal.masses[k];
    } else {
      values.push_back(v);
      masses.push_back(marginal.masses[k]);
    }
  }
  return MarginalDistribution(std::move(values), std::move(masses));
}

DiscreteJointDistribution cap_linf(const std::vector<MarginalDistribution>& marginals,
                                   const Rational& bound,
                                   std::size_t support_limit) {
  std::vector<MarginalDistribution> capped;
  capped.reserve(marginals.size());
  for (const auto& m : marginals) capped.push_back(cap_values(m, bound));
  return product(capped, support_limit);
}

DiscreteJointDistribution condition_l1(const DiscreteJointDistribution& joint,
                                       const Rational& cap) {
  if (sgn(cap) <= 0) throw Error("l1 cap must be positive");
  std::vector<std::vector<Rational>> support;
  std::vector<Rational> masses;
  Rational kept = 0;
  for (std::size_t i = 0; i < joint.num_types(); ++i) {
    if (joint.type_sum(i) <= cap) {
      support.push_back(joint.type(i));
      masses.push_back(joint.mass(i));
      kept += joint.mass(i);
    }
  }
  if (support.empty()) {
    throw EmptyConditioning("no support point satisfies the l1 cap");
  }
  for (Rational& m : masses) m /= kept;
  DiscreteJointDistribution out(joint.num_items(), std::move(support),
                                std::move(masses));
  if (joint.marginals()) {
    out.attach_tag({*joint.marginals(), cap});
  } else if (joint.weakly_correlated()) {
    const auto& tag = *joint.weakly_correlated();
    out.attach_tag({tag.base, std::min(cap, tag.cap)});
  }
  if (joint.num_items() == 1) {
    out.attach_marginals({marginal_of(out, 0)});
  }
  return out;
}

MarginalDistribution marginal_of(const DiscreteJointDistribution& joint,
                                 std::size_t item) {
  std::map<Rational, Rational> acc;
  for (std::size_t i = 0; i < joint.num_types(); ++i) {
    acc[joint.type(i)[item]] += joint.mass(i);
  }
  std::vector<Rational> values, masses;
  for (auto& [v, m] : acc) {
    values.push_back(v);
    masses.push_back(m);
  }
  return MarginalDistribution(std::move(values), std::move(masses));
}

MarginalDistribution conditional_marginal(const DiscreteJointDistribution& joint,
                                          std::size_t item,
                                          const std::vector<Rational>& others) {
  if (others.size() + 1 != joint.num_items()) {
    throw Error("conditional context has wrong arity");
  }
  std::map<Rational, Rational> acc;
  Rational total = 0;
  for (std::size_t i = 0; i < joint.num_types(); ++i) {
    const auto& t = joint.type(i);
    bool match = true;
    for (std::size_t j = 0, k = 0; j < joint.num_items(); ++j) {
      if (j == item) continue;
      if (t[j] != others[k++]) {
        match = false;
        break;
      }
    }
    if (!match) continue;
    acc[t[item]] += joint.mass(i);
    total += joint.mass(i);
  }
  if (acc.empty()) throw EmptyConditioning("conditioning context unobserved");
  std::vector<Rational> values, masses;
  for (auto& [v, m] : acc) {
    values.push_back(v);
    masses.push_back(m / total);
  }
  return MarginalDistribution(std::move(values), std::move(masses));
}

}  // namespace budgetlab
