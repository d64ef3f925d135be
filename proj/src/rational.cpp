#include "budgetlab/rational.hpp"

#include <cctype>

#include "budgetlab/errors.hpp"

namespace budgetlab {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_fraction(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = (s[0] == '-');
    s = s.substr(1);
  }
  std::string num = s, den = "1";
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("not an exact fraction: \"" + text + "\"");
  }
  Rational q{mpz_class(num), mpz_class(den)};
  if (q.get_den() == 0) {
    throw ParseError("zero denominator: \"" + text + "\"");
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string fraction_string(const Rational& q) {
  return q.get_str();
}

double to_double(const Rational& q) {
  return q.get_d();
}

Rational floor_rational(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return Rational(f);
}

const EulerBounds& euler_bounds() {
  // S_n < e < S_n + 1/(n * n!) with S_n the n-th partial sum of sum 1/k!.
  static const EulerBounds bounds = [] {
    const unsigned n = 60;
    Rational sum = 0;
    mpz_class fact = 1;
    for (unsigned k = 0; k <= n; ++k) {
      if (k > 0) fact *= k;
      sum += Rational(mpz_class(1), fact);
    }
    EulerBounds b;
    b.lower = sum;
    b.upper = sum + Rational(mpz_class(1), fact * n);
    return b;
  }();
  return bounds;
}

bool at_least_scale_over_e(const Rational& x, const Rational& scale) {
  // x >= scale/e  <=>  x*e >= scale (scale > 0).
  const EulerBounds& e = euler_bounds();
  if (x * e.lower >= scale) return true;
  if (x * e.upper < scale) return false;
  throw InexactComparison("comparison fell inside the enclosure of e");
}

}  // namespace budgetlab
