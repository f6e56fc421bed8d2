#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace modanom {

/// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
/// positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// p/q in lowest terms. mpq_class(p, q) alone does not reduce.
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

/// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

Rational factorial(unsigned n);

/// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Rational> bernoulli_numbers(unsigned n);

}  // namespace modanom
