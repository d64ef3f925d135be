#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "budgetlab/duality.hpp"
#include "budgetlab/errors.hpp"
#include "budgetlab/instance.hpp"
#include "budgetlab/optimal.hpp"
#include "budgetlab/private_budget.hpp"
#include "budgetlab/simple.hpp"
#include "budgetlab/structure.hpp"
#include "budgetlab/suites.hpp"

namespace py = pybind11;
using namespace budgetlab;

namespace {

std::vector<Rational> parse_all(const std::vector<std::string>& texts) {
  std::vector<Rational> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(parse_fraction(t));
  return out;
}

std::vector<std::string> print_all(const std::vector<Rational>& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(fraction_string(v));
  return out;
}

std::string report_json(const CheckReport& report) {
  return report_to_json(report).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact laboratory for budget-constrained selling mechanisms";

  py::register_exception<Error>(m, "BudgetlabError");

  py::class_<MarginalDistribution>(m, "Marginal")
      .def(py::init([](const std::vector<std::string>& values,
                       const std::vector<std::string>& masses) {
             return MarginalDistribution(parse_all(values), parse_all(masses));
           }),
           py::arg("values"), py::arg("masses"))
      .def_property_readonly("values",
                             [](const MarginalDistribution& d) { return print_all(d.values); })
      .def_property_readonly("masses",
                             [](const MarginalDistribution& d) { return print_all(d.masses); });

  py::class_<DiscreteJointDistribution>(m, "Joint")
      .def_static("product",
                  [](const std::vector<MarginalDistribution>& margs) {
                    return product(margs);
                  })
      .def_static("from_support",
                  [](const std::vector<std::vector<std::string>>& support,
                     const std::vector<std::string>& masses) {
                    std::vector<std::vector<Rational>> sup;
                    for (const auto& row : support) sup.push_back(parse_all(row));
                    const std::size_t width = sup.empty() ? 0 : sup[0].size();
                    return DiscreteJointDistribution(width, std::move(sup),
                                                     parse_all(masses));
                  })
      .def("condition_l1",
           [](const DiscreteJointDistribution& d, const std::string& cap) {
             return condition_l1(d, parse_fraction(cap));
           })
      .def_property_readonly("num_items", &DiscreteJointDistribution::num_items)
      .def_property_readonly("num_types", &DiscreteJointDistribution::num_types)
      .def_property_readonly("support",
                             [](const DiscreteJointDistribution& d) {
                               std::vector<std::vector<std::string>> out;
                               for (std::size_t i = 0; i < d.num_types(); ++i) {
                                 out.push_back(print_all(d.type(i)));
                               }
                               return out;
                             })
      .def_property_readonly("masses",
                             [](const DiscreteJointDistribution& d) {
                               return print_all(d.masses());
                             });

  m.def("cap_linf",
        [](const std::vector<MarginalDistribution>& margs, const std::string& bound) {
          return cap_linf(margs, parse_fraction(bound));
        });

  m.def("rev_budget",
        [](const DiscreteJointDistribution& dist, const std::string& budget) {
          auto r = rev_budget(dist, parse_fraction(budget));
          py::dict mech;
          py::list options;
          for (const auto& opt : r.mechanism.options) {
            py::dict o;
            o["allocation"] = print_all(opt.allocation);
            o["payment"] = fraction_string(opt.payment);
            options.append(o);
          }
          mech["options"] = options;
          py::dict out;
          out["value"] = fraction_string(r.value);
          out["mechanism"] = mech;
          return out;
        });

  m.def("rev_unbudgeted", [](const DiscreteJointDistribution& dist) {
    return fraction_string(rev_unbudgeted(dist).value);
  });

  m.def("brev_budget",
        [](const DiscreteJointDistribution& dist, const std::string& budget) {
          auto r = brev_budget(dist, parse_fraction(budget));
          return py::make_tuple(fraction_string(r.value), fraction_string(r.price));
        });

  m.def("srev_budget_exact",
        [](const DiscreteJointDistribution& dist, const std::string& budget) {
          auto r = srev_budget_exact(dist, parse_fraction(budget));
          return py::make_tuple(fraction_string(r.value), print_all(r.prices.prices));
        });

  m.def("srev_budget_grid",
        [](const DiscreteJointDistribution& dist, const std::string& budget) {
          auto r = srev_budget_grid(dist, parse_fraction(budget));
          return py::make_tuple(fraction_string(r.value), print_all(r.prices.prices));
        });

  m.def("srev_unbudgeted", [](const DiscreteJointDistribution& dist) {
    return fraction_string(srev_unbudgeted(dist).value);
  });

  m.def("buyer_knapsack",
        [](const std::vector<std::string>& type, const std::vector<std::string>& prices,
           const std::string& budget) {
          auto choice = buyer_knapsack(parse_all(type), PriceVector{parse_all(prices)},
                                       parse_fraction(budget));
          py::dict out;
          out["items"] = choice.items;
          out["payment"] = fraction_string(choice.payment);
          out["utility"] = fraction_string(choice.utility);
          return out;
        });

  m.def("check_dominance",
        [](const DiscreteJointDistribution& upper, const DiscreteJointDistribution& lower) {
          return check_dominance(upper, lower).dominates;
        });

  m.def("check_core_tail_lemmas", [](const DiscreteJointDistribution& dist) {
    return report_json(check_core_tail_lemmas(dist));
  });

  m.def("check_variance_lemma", [](const DiscreteJointDistribution& dist) {
    return report_json(check_variance_lemma(dist));
  });

  m.def("solve_instance_json", [](const std::string& instance, bool grid_only) {
    SuiteOptions options;
    options.grid_only = grid_only;
    return solve_instance(parse_instance_json(instance), options).dump();
  });

  m.def("verify_instance_json",
        [](const std::string& suite, const std::string& instance) {
          auto run = verify_instance(suite, parse_instance_json(instance));
          return py::make_tuple(run.entries.dump(), run.violations);
        });

  m.def("fuzz_suite",
        [](const std::string& suite, std::size_t count, std::uint64_t seed) {
          auto run = fuzz_suite(suite, count, seed);
          return py::make_tuple(run.entries.dump(), run.violations);
        });

  m.def("reproduce_appendix_b", []() {
    auto run = reproduce_appendix_b();
    return py::make_tuple(run.entries.dump(), run.violations);
  });
}
