#pragma once

#include <optional>
#include <vector>

#include "budgetlab/rational.hpp"

namespace budgetlab {

// One menu entry: a (possibly fractional) allocation and a payment.
struct MenuOption {
  std::vector<Rational> allocation;
  Rational payment = 0;
};

// A direct-revelation menu, one option per support point of the distribution
// it was built for, in the distribution's canonical type order. The outside
// option (allocate nothing, pay nothing) is implicit.
struct Mechanism {
  std::vector<MenuOption> options;
  std::optional<Rational> budget;  // payment cap the menu was solved under
};

// The buyer's selection from a menu under a hard budget.
struct MenuChoice {
  int option = -1;  // index into options, or -1 for the outside option
  std::vector<Rational> allocation;
  Rational payment = 0;
  Rational utility = 0;
};

// Among affordable options (payment <= budget, outside option always
// included) returns one maximizing allocation.type - payment; ties prefer the
// higher payment, then the earlier type in canonical order, then a concrete
// option over the outside option.
MenuChoice menu_best_response(const Mechanism& mech,
                              const std::vector<Rational>& type,
                              const Rational& budget);

}  // namespace budgetlab
