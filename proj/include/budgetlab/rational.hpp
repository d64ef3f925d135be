#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace budgetlab {

// Exact arbitrary-precision fraction. All probabilities, values, prices and
// LP arithmetic in this library use Rational; nothing is ever rounded.
using Rational = mpq_class;

// Parses "n", "-n" or "n/d" with d > 0 after sign normalization.
// Decimals, exponents and whitespace are rejected.
Rational parse_fraction(const std::string& text);

// Renders as "n" or "n/d" in lowest terms.
std::string fraction_string(const Rational& q);

// Convenience decimal rendering; never used in any exact comparison.
double to_double(const Rational& q);

// Largest integer <= q, as a Rational.
Rational floor_rational(const Rational& q);

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Rational enclosure of Euler's number from partial sums of sum 1/k!,
// tight to far more than 50 decimal digits.
struct EulerBounds {
  Rational lower;  // lower < e
  Rational upper;  // e < upper
};
const EulerBounds& euler_bounds();

// Decides x >= scale / e exactly where possible. Throws InexactComparison if
// the truth falls inside the enclosure of e (never observed for rational
// operands at this precision).
bool at_least_scale_over_e(const Rational& x, const Rational& scale);

}  // namespace budgetlab
